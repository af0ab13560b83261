#include "degen/regularization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "degen/parallel.hpp"
#include "degen/time_integration.hpp"

namespace degen {

DiffusionSpec regularize_diffusion(const DiffusionSpec& a, double eta) {
  if (!(eta >= 0.0)) throw std::invalid_argument("regularize_diffusion: eta must be >= 0");
  if (eta == 0.0) return a;
  // Rebuild from the unregularized A so repeated calls sum the etas exactly.
  const bool nested = a.eta > 0.0 && a.a_base && a.a_prime_base;
  DiffusionSpec out;
  out.a_base = nested ? a.a_base : a.a;
  out.a_prime_base = nested ? a.a_prime_base : a.a_prime;
  out.eta = nested ? a.eta + eta : eta;
  out.a = [base = out.a_base, total = out.eta](double u) { return base(u) + total * u; };
  out.a_prime = [base = out.a_prime_base, total = out.eta](double u) { return base(u) + total; };
  out.identically_zero = false;
  out.name = (nested ? a.name.substr(0, a.name.rfind("+eta")) : a.name) + "+eta";
  return out;
}

namespace {

struct FinalState {
  GridFunction u;
  InvariantReport invariants;
};

FinalState final_state(const Problem& problem, double cfl_safety) {
  TimeStepper stepper;
  stepper.cfl_safety = cfl_safety;
  const double times[] = {problem.t_final};
  const Trajectory traj = integrate(problem, stepper, times);
  return {traj.snapshots.back(), invariant_report(traj)};
}

}  // namespace

EtaSweep viscous_rate_experiment(const Problem& base, const std::vector<double>& etas,
                                 const std::vector<std::size_t>& resolutions,
                                 const ViscousRateOptions& options) {
  if (!base.diffusion.identically_zero) {
    throw std::invalid_argument("viscous_rate_experiment: base problem must have A == 0");
  }
  if (etas.empty() || resolutions.size() < 2) {
    throw std::invalid_argument("viscous_rate_experiment: need etas and at least two resolutions");
  }
  for (std::size_t k = 0; k < etas.size(); ++k) {
    if (!(etas[k] > 0.0)) throw std::invalid_argument("viscous_rate_experiment: etas must be positive");
    if (k > 0 && !(etas[k] < etas[k - 1])) {
      throw std::invalid_argument("viscous_rate_experiment: etas must be strictly decreasing");
    }
  }
  for (std::size_t k = 0; k < resolutions.size(); ++k) {
    if (k > 0 && resolutions[k] != 2 * resolutions[k - 1]) {
      throw std::invalid_argument("viscous_rate_experiment: resolutions must double");
    }
    if (options.reference_n_cells % resolutions[k] != 0 || options.reference_n_cells <= resolutions[k]) {
      throw std::invalid_argument("viscous_rate_experiment: reference grid must refine every resolution");
    }
  }
  base.validate();

  const GridFunction init = cell_average_init(base.u0, base.grid);
  options.cone.validate(max_abs_flux_derivative(base.flux, data_range(init)), base.t_final);

  // Job layout: for each eta, resolutions.size() runs followed by the reference.
  const std::size_t per_eta = resolutions.size() + 1;
  auto finals = parallel_map(etas.size() * per_eta, [&](std::size_t job) {
    const double eta = etas[job / per_eta];
    const std::size_t r = job % per_eta;
    const std::size_t n = r < resolutions.size() ? resolutions[r] : options.reference_n_cells;
    const Grid1D grid(base.grid.x_left(), base.grid.x_right(), n);
    const Problem p = base.with_grid(grid).with_diffusion(regularize_diffusion(base.diffusion, eta));
    return final_state(p, options.cfl_safety);
  });

  EtaSweep sweep;
  sweep.etas = etas;
  sweep.resolutions = resolutions;
  double c_min = std::numeric_limits<double>::infinity();
  double c_max = 0.0;
  sweep.rates_ok = true;
  for (std::size_t e = 0; e < etas.size(); ++e) {
    for (std::size_t r = 0; r < per_eta; ++r) {
      const std::size_t n = r < resolutions.size() ? resolutions[r] : options.reference_n_cells;
      sweep.invariants[{etas[e], n}] = finals[e * per_eta + r].invariants;
    }
    const GridFunction& ref = finals[e * per_eta + resolutions.size()].u;
    std::vector<double> dxs;
    std::vector<double> errs;
    double constant = 0.0;
    for (std::size_t r = 0; r < resolutions.size(); ++r) {
      const GridFunction& u = finals[e * per_eta + r].u;
      const double err = cone_l1_error(u, ref, base.t_final, options.cone);
      sweep.results[{etas[e], resolutions[r]}] = err;
      dxs.push_back(u.grid().dx());
      errs.push_back(err);
      constant = std::max(constant, err / std::sqrt(u.grid().dx()));
    }
    const double rate = fit_log_slope(dxs, errs);
    sweep.fitted_rates[etas[e]] = rate;
    sweep.error_constants[etas[e]] = constant;
    sweep.rates_ok = sweep.rates_ok && rate >= options.rate_floor;
    c_min = std::min(c_min, constant);
    c_max = std::max(c_max, constant);
  }
  sweep.constant_ratio = c_min > 0.0 ? c_max / c_min : std::numeric_limits<double>::infinity();
  sweep.constants_stable = sweep.constant_ratio <= options.constant_ratio_limit;
  return sweep;
}

EtaGapResult eta_gap_experiment(const Problem& problem, const std::vector<double>& etas,
                                std::size_t n_ref, double cfl_safety) {
  if (etas.empty()) throw std::invalid_argument("eta_gap_experiment: no etas");
  for (double eta : etas) {
    if (!(eta >= 0.0)) throw std::invalid_argument("eta_gap_experiment: etas must be >= 0");
  }
  const Grid1D grid(problem.grid.x_left(), problem.grid.x_right(), n_ref);
  const Problem base = problem.with_grid(grid);
  base.validate();

  // Job 0 is the unregularized run.
  auto finals = parallel_map(etas.size() + 1, [&](std::size_t job) {
    if (job == 0) return final_state(base, cfl_safety);
    const double eta = etas[job - 1];
    return final_state(base.with_diffusion(regularize_diffusion(base.diffusion, eta)), cfl_safety);
  });

  EtaGapResult result;
  result.etas = etas;
  result.n_ref = n_ref;
  for (const auto& f : finals) result.invariants.push_back(f.invariants);
  const GridFunction& u = finals[0].u;
  for (std::size_t k = 0; k < etas.size(); ++k) {
    const GridFunction& ue = finals[k + 1].u;
    double s = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) s += std::abs(u[j] - ue[j]);
    result.gaps.push_back(grid.dx() * s);
  }

  std::vector<std::pair<double, double>> by_eta;
  for (std::size_t k = 0; k < etas.size(); ++k) by_eta.emplace_back(etas[k], result.gaps[k]);
  std::sort(by_eta.begin(), by_eta.end());
  for (std::size_t k = 1; k < by_eta.size(); ++k) {
    if (by_eta[k].second < by_eta[k - 1].second) result.monotone = false;
  }

  std::vector<double> xs, ys;
  for (const auto& [eta, gap] : by_eta) {
    if (eta > 0.0 && gap > 0.0) {
      xs.push_back(eta);
      ys.push_back(gap);
    }
  }
  result.fitted_exponent = xs.size() >= 2 ? fit_log_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
  return result;
}

}  // namespace degen
