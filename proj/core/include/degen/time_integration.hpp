#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "degen/problem.hpp"
#include "degen/scheme.hpp"

namespace degen {

struct TimeStepper {
  double cfl_safety = 0.5;
  /// Bounds on |f'| and A' over the data range. When unset, integrate()
  /// samples them once on the range of the initial cell averages, which
  /// the maximum principle keeps valid for the whole run.
  std::optional<double> max_fprime;
  std::optional<double> max_aprime;
  std::optional<double> fixed_dt;
  /// Negative controls only: accept a fixed_dt above the stability bound.
  bool enforce_cfl = true;
};

/// Stability bound safety * min(dx / max|f'|, dx^2 / (2 max A')), dropping
/// a term whose bound is zero. Returns fixed_dt when set.
double cfl_dt(double dx, const TimeStepper& stepper);
double cfl_dt(const SchemeState& state, const TimeStepper& stepper);

/// Per-step diagnostics of the state at time t. dt is the step that led
/// to it (zero for the initial entry).
struct LedgerEntry {
  double t = 0.0;
  double dt = 0.0;
  double umin = 0.0;
  double umax = 0.0;
  double tv = 0.0;
  double mass = 0.0;
  /// Total variation and sup norm of the interface fluxes F - D^+A.
  /// NaN when not recorded.
  double flux_tv = 0.0;
  double flux_linf = 0.0;
};

struct Trajectory {
  BoundaryCondition bc = BoundaryCondition::Extrapolate;
  std::vector<GridFunction> snapshots;
  std::vector<LedgerEntry> ledger;
  double dt_nominal = 0.0;
};

/// u + dt * rhs(u). Throws NonFiniteError with the failing time when the
/// update leaves the finite range.
SchemeState step_euler(const SchemeState& state, double dt, const SpatialOperator& op);

/// Ledger statistics for a ghost-filled state; flux_tv and flux_linf come
/// from the interface fluxes `w` (n + 1 entries).
LedgerEntry ledger_entry(const SchemeState& state, std::span<const double> w, double dt);

/// Integrates from the cell-averaged initial data to the last snapshot time
/// (at most t_final), landing exactly on every requested snapshot time.
Trajectory integrate(const Problem& problem, const TimeStepper& stepper,
                     std::span<const double> snapshot_times, EOFluxOptions flux_options = {});

/// Same, starting from given initial data.
Trajectory integrate_from(const Problem& problem, const GridFunction& initial,
                          const TimeStepper& stepper, std::span<const double> snapshot_times,
                          EOFluxOptions flux_options = {});

/// Stepper with f' and A' bounds filled from the initial data range.
TimeStepper resolve_bounds(const Problem& problem, const GridFunction& initial, TimeStepper stepper);

}  // namespace degen
