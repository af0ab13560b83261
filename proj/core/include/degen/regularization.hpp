#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "degen/analysis.hpp"
#include "degen/problem.hpp"

namespace degen {

/// A^eta(u) = A(u) + eta u. Throws on negative eta.
DiffusionSpec regularize_diffusion(const DiffusionSpec& a, double eta);

struct ViscousRateOptions {
  ConeSpec cone;
  std::size_t reference_n_cells = 3200;
  double cfl_safety = 0.5;
  /// Minimum acceptable fitted rate; the corollary's rate is 1/2.
  double rate_floor = 0.4;
  /// Largest acceptable ratio between per-eta error constants.
  double constant_ratio_limit = 3.0;
};

struct EtaSweep {
  std::vector<double> etas;
  std::vector<std::size_t> resolutions;
  std::map<std::pair<double, std::size_t>, double> results;  // (eta, N) -> cone L1 error
  std::map<double, double> fitted_rates;                     // eta -> LSQ slope vs dx
  /// eta -> max_N error / sqrt(dx): the smallest C with e <= C dx^(1/2).
  std::map<double, double> error_constants;
  /// (eta, N) -> invariant report of that run; N = reference_n_cells for the reference.
  std::map<std::pair<double, std::size_t>, InvariantReport> invariants;
  double constant_ratio = 0.0;
  bool rates_ok = false;
  bool constants_stable = false;
};

/// For each eta, solves `base` (which must carry A == 0) with A(u) = eta u
/// on every resolution and on a reference grid, and measures the
/// cone-restricted L1 error at base.t_final. Runs are independent and
/// executed concurrently.
EtaSweep viscous_rate_experiment(const Problem& base, const std::vector<double>& etas,
                                 const std::vector<std::size_t>& resolutions,
                                 const ViscousRateOptions& options);

struct EtaGapResult {
  std::vector<double> etas;
  std::vector<double> gaps;  // ||u - u^eta||_1 at t_final
  std::size_t n_ref = 0;
  double fitted_exponent = 0.0;  // LSQ slope of log gap vs log eta (positive etas)
  bool monotone = true;          // gaps nondecreasing in eta
  /// Unregularized run first, then one per eta.
  std::vector<InvariantReport> invariants;
};

/// Solves `problem` with A and with A^eta on the grid of n_ref cells and
/// reports the L1 gap per eta. eta = 0 gives an exact zero.
EtaGapResult eta_gap_experiment(const Problem& problem, const std::vector<double>& etas,
                                std::size_t n_ref, double cfl_safety = 0.5);

}  // namespace degen
