#include "degen/scheme.hpp"

#include <cmath>
#include <sstream>

#include "degen/errors.hpp"

namespace degen {

SchemeState::SchemeState(const GridFunction& u, BoundaryCondition bc)
    : grid_(u.grid()), bc_(bc), values_(u.values(), bc), time_(u.time()) {}

GridFunction SchemeState::to_grid_function() const {
  auto in = values_.interior();
  return {grid_, std::vector<double>(in.begin(), in.end()), time_};
}

SchemeState apply_bc(SchemeState state) {
  state.values().fill_ghosts(state.bc());
  return state;
}

void SchemeWorkspace::resize(std::size_t n_cells) {
  f_plus.resize(n_cells + 2);
  f_minus.resize(n_cells + 2);
  a_values.resize(n_cells + 2);
  w.resize(n_cells + 1);
}

SpatialOperator::SpatialOperator(FluxSpec flux, DiffusionSpec diffusion, DataRange range,
                                 EOFluxOptions flux_options)
    : flux_(std::move(flux), range, flux_options), diffusion_(std::move(diffusion)) {}

SpatialOperator::SpatialOperator(const Problem& problem, DataRange range, EOFluxOptions flux_options)
    : SpatialOperator(problem.flux, problem.diffusion, range, flux_options) {}

void SpatialOperator::interface_fluxes(const PaddedValues& u, double dx, SchemeWorkspace& ws) const {
  const std::size_t n = u.n();
  if (ws.w.size() != n + 1) ws.resize(n);
  const auto padded = u.padded();
  const bool convect = !flux_.identically_zero();
  const bool diffuse = !diffusion_.identically_zero;

  for (std::size_t k = 0; k < n + 2; ++k) {
    if (convect) {
      ws.f_plus[k] = flux_.f_plus(padded[k]);
      ws.f_minus[k] = flux_.f_minus(padded[k]);
    }
    if (diffuse) ws.a_values[k] = diffusion_.a(padded[k]);
  }

  // Interface i sits between padded cells i and i + 1.
  const double inv_dx = 1.0 / dx;
  for (std::size_t i = 0; i < n + 1; ++i) {
    double w = 0.0;
    if (convect) w += ws.f_plus[i] + ws.f_minus[i + 1];
    if (diffuse) w -= (ws.a_values[i + 1] - ws.a_values[i]) * inv_dx;
    ws.w[i] = w;
  }
}

void SpatialOperator::evaluate(const PaddedValues& u, double dx, SchemeWorkspace& ws,
                               std::span<double> rhs) const {
  interface_fluxes(u, dx, ws);
  const std::size_t n = u.n();
  const double inv_dx = 1.0 / dx;
  for (std::size_t j = 0; j < n; ++j) rhs[j] = -(ws.w[j + 1] - ws.w[j]) * inv_dx;
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(rhs[j])) {
      std::ostringstream msg;
      msg << "spatial_rhs: non-finite value in cell " << j << " (u=" << u[static_cast<std::ptrdiff_t>(j)]
          << ")";
      throw NonFiniteError(msg.str(), j);
    }
  }
}

std::vector<double> spatial_rhs(const SchemeState& state, const SpatialOperator& op) {
  SchemeWorkspace ws;
  ws.resize(state.grid().n_cells());
  std::vector<double> rhs(state.grid().n_cells());
  op.evaluate(state.values(), state.grid().dx(), ws, rhs);
  return rhs;
}

std::vector<double> total_interface_fluxes(const SchemeState& state, const SpatialOperator& op) {
  SchemeWorkspace ws;
  ws.resize(state.grid().n_cells());
  op.interface_fluxes(state.values(), state.grid().dx(), ws);
  return ws.w;
}

}  // namespace degen
