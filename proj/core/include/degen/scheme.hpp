#pragma once

#include <span>
#include <vector>

#include "degen/eo_flux.hpp"
#include "degen/grid.hpp"
#include "degen/problem.hpp"

namespace degen {

/// Ghost-padded solution state. Ghost width is one cell on each side:
/// both the flux and the diffusion stencils are three-point.
class SchemeState {
 public:
  SchemeState(const GridFunction& u, BoundaryCondition bc);

  const Grid1D& grid() const { return grid_; }
  BoundaryCondition bc() const { return bc_; }
  double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  const PaddedValues& values() const { return values_; }
  PaddedValues& values() { return values_; }

  GridFunction to_grid_function() const;

 private:
  Grid1D grid_;
  BoundaryCondition bc_;
  PaddedValues values_;
  double time_;
};

/// Fills the ghost cells for the state's boundary condition. Idempotent.
SchemeState apply_bc(SchemeState state);

/// Reusable buffers for the operator's hot loop.
struct SchemeWorkspace {
  std::vector<double> f_plus;    // padded, n + 2
  std::vector<double> f_minus;   // padded, n + 2
  std::vector<double> a_values;  // padded, n + 2
  std::vector<double> w;         // interfaces -1/2 .. n-1/2, n + 1

  void resize(std::size_t n_cells);
};

/// The spatial operator du_j/dt = -D^-(F_{j+1/2} - D^+A_j).
///
/// The total interface flux w_{j+1/2} = F(u_j, u_{j+1}) - (A_{j+1} - A_j)/dx
/// is formed first and the right-hand side is its negative backward
/// difference, so conservation holds by telescoping.
class SpatialOperator {
 public:
  SpatialOperator(FluxSpec flux, DiffusionSpec diffusion, DataRange range,
                  EOFluxOptions flux_options = {});
  SpatialOperator(const Problem& problem, DataRange range, EOFluxOptions flux_options = {});

  const EOFlux& flux() const { return flux_; }
  const DiffusionSpec& diffusion() const { return diffusion_; }

  /// Interface fluxes w_{j+1/2} for j = -1 .. n-1 into `w` (length n + 1).
  /// Ghosts must be filled.
  void interface_fluxes(const PaddedValues& u, double dx, SchemeWorkspace& ws) const;

  /// du/dt into `rhs` (length n). Throws NonFiniteError on a non-finite
  /// result. Leaves the interface fluxes in ws.w.
  void evaluate(const PaddedValues& u, double dx, SchemeWorkspace& ws, std::span<double> rhs) const;

 private:
  EOFlux flux_;
  DiffusionSpec diffusion_;
};

/// Pure form of SpatialOperator::evaluate.
std::vector<double> spatial_rhs(const SchemeState& state, const SpatialOperator& op);

/// Total interface fluxes F_{j+1/2} - D^+A_j for j = -1 .. n-1.
std::vector<double> total_interface_fluxes(const SchemeState& state, const SpatialOperator& op);

}  // namespace degen
