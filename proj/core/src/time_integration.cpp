#include "degen/time_integration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "degen/errors.hpp"

namespace degen {

double cfl_dt(double dx, const TimeStepper& stepper) {
  if (!(stepper.cfl_safety > 0.0 && stepper.cfl_safety <= 1.0)) {
    throw std::invalid_argument("cfl_dt: cfl_safety must lie in (0, 1]");
  }
  const double fp = stepper.max_fprime.value_or(0.0);
  const double ap = stepper.max_aprime.value_or(0.0);
  if (fp < 0.0 || ap < 0.0) throw std::invalid_argument("cfl_dt: negative speed bound");

  double bound = std::numeric_limits<double>::infinity();
  if (fp > 0.0) bound = std::min(bound, dx / fp);
  if (ap > 0.0) bound = std::min(bound, dx * dx / (2.0 * ap));
  bound *= stepper.cfl_safety;

  if (stepper.fixed_dt) {
    const double dt = *stepper.fixed_dt;
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("cfl_dt: fixed_dt must be positive");
    if (stepper.enforce_cfl && dt > bound) {
      std::ostringstream msg;
      msg << "cfl_dt: fixed_dt " << dt << " exceeds the stability bound " << bound;
      throw std::invalid_argument(msg.str());
    }
    return dt;
  }
  if (!std::isfinite(bound)) {
    throw std::invalid_argument("cfl_dt: both speed bounds are zero and no fixed_dt is set");
  }
  return bound;
}

double cfl_dt(const SchemeState& state, const TimeStepper& stepper) {
  return cfl_dt(state.grid().dx(), stepper);
}

SchemeState step_euler(const SchemeState& state, double dt, const SpatialOperator& op) {
  const std::size_t n = state.grid().n_cells();
  SchemeWorkspace ws;
  ws.resize(n);
  std::vector<double> rhs(n);
  op.evaluate(state.values(), state.grid().dx(), ws, rhs);

  SchemeState next = state;
  auto u = next.values().interior();
  for (std::size_t j = 0; j < n; ++j) {
    u[j] += dt * rhs[j];
    if (!std::isfinite(u[j])) {
      std::ostringstream msg;
      msg << "step_euler: non-finite value in cell " << j << " at t=" << state.time() + dt;
      throw NonFiniteError(msg.str(), j, state.time() + dt);
    }
  }
  next.values().fill_ghosts(next.bc());
  next.set_time(state.time() + dt);
  return next;
}

LedgerEntry ledger_entry(const SchemeState& state, std::span<const double> w, double dt) {
  const auto u = state.values().interior();
  const std::size_t n = u.size();
  LedgerEntry e;
  e.t = state.time();
  e.dt = dt;
  e.umin = u[0];
  e.umax = u[0];
  double tv = 0.0;
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    e.umin = std::min(e.umin, u[j]);
    e.umax = std::max(e.umax, u[j]);
    sum += u[j];
    if (j + 1 < n) tv += std::abs(u[j + 1] - u[j]);
  }
  if (state.bc() == BoundaryCondition::Periodic) tv += std::abs(u[0] - u[n - 1]);
  e.tv = tv;
  e.mass = state.grid().dx() * sum;

  double ftv = 0.0;
  double flinf = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    flinf = std::max(flinf, std::abs(w[i]));
    if (i + 1 < w.size()) ftv += std::abs(w[i + 1] - w[i]);
  }
  e.flux_tv = ftv;
  e.flux_linf = flinf;
  return e;
}

TimeStepper resolve_bounds(const Problem& problem, const GridFunction& initial, TimeStepper stepper) {
  const DataRange range = data_range(initial);
  if (!stepper.max_fprime) stepper.max_fprime = max_abs_flux_derivative(problem.flux, range);
  if (!stepper.max_aprime) stepper.max_aprime = max_diffusion_derivative(problem.diffusion, range);
  return stepper;
}

Trajectory integrate(const Problem& problem, const TimeStepper& stepper,
                     std::span<const double> snapshot_times, EOFluxOptions flux_options) {
  problem.validate();
  const GridFunction initial = cell_average_init(problem.u0, problem.grid);
  return integrate_from(problem, initial, stepper, snapshot_times, flux_options);
}

Trajectory integrate_from(const Problem& problem, const GridFunction& initial,
                          const TimeStepper& stepper_in, std::span<const double> snapshot_times,
                          EOFluxOptions flux_options) {
  if (snapshot_times.empty()) throw std::invalid_argument("integrate: no snapshot times requested");
  for (std::size_t k = 0; k < snapshot_times.size(); ++k) {
    const double ts = snapshot_times[k];
    if (!(ts >= 0.0) || ts > problem.t_final) {
      throw std::invalid_argument("integrate: snapshot time " + std::to_string(ts) +
                                  " outside [0, t_final]");
    }
    if (k > 0 && !(ts > snapshot_times[k - 1])) {
      throw std::invalid_argument("integrate: snapshot times must be strictly increasing");
    }
  }

  const DataRange range = data_range(initial);
  const double scale = std::max({1.0, std::abs(range.lo), std::abs(range.hi)});
  const SpatialOperator op(problem, range.widened(1e-9 * scale), flux_options);
  const TimeStepper stepper = resolve_bounds(problem, initial, stepper_in);
  const double dx = initial.grid().dx();
  const std::size_t n = initial.grid().n_cells();

  Trajectory traj;
  traj.bc = problem.bc;

  SchemeState state(initial, problem.bc);
  SchemeWorkspace ws;
  ws.resize(n);
  std::vector<double> rhs(n);
  op.evaluate(state.values(), dx, ws, rhs);
  traj.ledger.push_back(ledger_entry(state, ws.w, 0.0));

  const bool needs_steps = snapshot_times.back() > 0.0;
  const double dt = needs_steps ? cfl_dt(dx, stepper) : 0.0;
  traj.dt_nominal = dt;

  double t = 0.0;
  for (const double ts : snapshot_times) {
    while (t < ts) {
      double h = dt;
      bool landing = false;
      // Truncate (or stretch by rounding only) the step that reaches ts.
      if (ts - t <= dt * (1.0 + 1e-9)) {
        h = ts - t;
        landing = true;
      }
      auto u = state.values().interior();
      for (std::size_t j = 0; j < n; ++j) u[j] += h * rhs[j];
      for (std::size_t j = 0; j < n; ++j) {
        if (!std::isfinite(u[j])) {
          std::ostringstream msg;
          msg << "integrate: non-finite value in cell " << j << " at t=" << t + h;
          throw NonFiniteError(msg.str(), j, t + h);
        }
      }
      state.values().fill_ghosts(problem.bc);
      t = landing ? ts : t + h;
      state.set_time(t);
      try {
        op.evaluate(state.values(), dx, ws, rhs);
      } catch (const NonFiniteError& e) {
        std::ostringstream msg;
        msg << e.what() << " at t=" << t;
        throw NonFiniteError(msg.str(), e.cell(), t);
      }
      traj.ledger.push_back(ledger_entry(state, ws.w, h));
    }
    traj.snapshots.push_back(state.to_grid_function());
  }
  return traj;
}

}  // namespace degen
