#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "degen/grid.hpp"
#include "degen/problem.hpp"
#include "degen/time_integration.hpp"

namespace degen {

/// dx * sum |v_j|.
double l1_norm(const GridFunction& v);
double linf_norm(const GridFunction& v);
/// sum |v_{j+1} - v_j|, plus the wrap-around jump for periodic grids.
double total_variation(const GridFunction& v, BoundaryCondition bc);

/// Conservative restriction: each coarse cell gets the mean of the fine
/// cells it covers. Grids must nest.
GridFunction restrict_to_coarse(const GridFunction& fine, const Grid1D& coarse_grid);

/// Dependence cone [c - (L - M t), c + (L - M t)] centered at c, the domain
/// midpoint unless set.
struct ConeSpec {
  double L = 1.0;
  double M = 0.0;
  std::optional<double> center;

  double half_width(double t) const { return L - M * t; }
  /// Throws unless M > max_fprime and L > M * t_max.
  void validate(double max_fprime, double t_max) const;
};

/// Integral of |u - v| over the cone at time t, measured on the coarser of
/// the two grids with partial cells weighted by overlap.
double cone_l1_error(const GridFunction& u, const GridFunction& v, double t, const ConeSpec& cone);

/// 100 * ||approx - reference||_1 / ||approx||_1 between the piecewise-constant
/// functions, integrated on the reference grid. The reference grid must refine
/// approx's grid.
double percent_relative_l1_error(const GridFunction& approx, const GridFunction& reference);

enum class NormKind { RelativePercentL1, ConeL1 };
std::string to_string(NormKind kind);

struct ErrorReport {
  std::vector<std::size_t> grid_sizes;
  std::vector<double> errors;
  std::vector<double> rates;  // log2(e_k / e_{k+1})
  NormKind norm_kind = NormKind::RelativePercentL1;
  /// Least-squares slope of log(error) against log(dx).
  double fitted_rate = 0.0;
};

/// Pairwise rates for strictly doubling grid sizes.
ErrorReport convergence_table(std::span<const std::pair<std::size_t, double>> runs,
                              NormKind kind = NormKind::RelativePercentL1);

/// Least-squares slope of log(y) against log(x).
double fit_log_slope(std::span<const double> x, std::span<const double> y);

/// Worst discrete Kruzkov entropy production over cells and consecutive
/// snapshot pairs,
///   (|u^{n+1} - c| - |u^n - c|)/dt + D^-Q_{j+1/2} - D^-D^+R_j,
/// with Q = F(u v c, .) - F(u ^ c, .) and R = |A(u) - A(c)|. A monotone
/// scheme gives a value <= 0 up to rounding when snapshots are one step apart.
double entropy_residual(const Trajectory& traj, const Problem& problem, double c);

struct EntropyCertificate {
  std::vector<double> c_values;
  std::vector<double> residuals;
  double worst = 0.0;
  double worst_c = 0.0;
};

/// Equispaced lattice of `count` Kruzkov constants on [lo - margin, hi + margin].
std::vector<double> kruzkov_lattice(DataRange range, std::size_t count = 17, double margin = 0.1);
EntropyCertificate entropy_certificate(const Trajectory& traj, const Problem& problem,
                                       std::span<const double> c_values);

struct InvariantCheck {
  std::string name;
  bool checked = true;  // false when not applicable (e.g. mass without periodic BC)
  bool passed = true;
  double margin = 0.0;  // worst value minus allowed baseline (<= tolerance passes)
  double tolerance = 0.0;
};

struct InvariantReport {
  std::vector<InvariantCheck> checks;
  bool all_passed() const;
  const InvariantCheck* find(const std::string& name) const;
};

/// Stability invariants against the earliest ledger entry:
///   linf      max|u| non-increasing          tol 1e-12 * max(1, |u|_inf(0))
///   tv        TV(u) non-increasing           tol 1e-10
///   mass      periodic mass drift            tol 1e-10 * (1 + |mass(0)|)
///   flux_tv   TV(F - D^+A) non-increasing    tol 1e-8 * TV(0) + 1e-12
///   flux_linf |F - D^+A|_inf non-increasing  tol 1e-8 * sup(0) + 1e-12
/// Ledger fields that are NaN are skipped.
InvariantReport invariant_report(const Trajectory& traj);

}  // namespace degen
