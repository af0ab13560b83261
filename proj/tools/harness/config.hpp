#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degen/analysis.hpp"
#include "degen/problem.hpp"

namespace degen::harness {

/// Everything needed to reproduce a run or an experiment. Serializes to
/// JSON losslessly; parse(serialize(c)) == c.
struct RunConfig {
  std::string preset = "custom";

  std::string flux = "zero";  // zero | linear | burgers | sine
  double flux_speed = 1.0;    // linear only

  std::string diffusion = "zero";  // zero | linear | positive-part-quadratic
  double diffusion_coef = 1.0;     // linear only
  double eta = 0.0;

  std::string bc = "extrapolate";
  double x_left = 0.0;
  double x_right = 1.0;

  std::string u0 = "constant";  // constant | sine | riemann
  std::vector<double> u0_params{1.0};

  std::size_t n_cells = 100;
  double t_final = 1.0;
  std::vector<double> snapshot_times;  // empty means {t_final}
  double cfl_safety = 0.5;

  double cone_L = 1.0;
  double cone_M = 0.0;

  std::string output_dir;
  std::size_t reference_n_cells = 0;
  std::vector<std::size_t> resolutions;
  std::vector<double> etas;

  bool operator==(const RunConfig&) const = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

std::string serialize(const RunConfig& c);
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Names accepted by preset(): constant, heat, table1, table1-n<N>,
/// burgers-riemann, corollary, eta-gap.
std::vector<std::string> preset_names();
RunConfig preset(const std::string& name);

FluxSpec make_flux(const RunConfig& c);
DiffusionSpec make_diffusion(const RunConfig& c);  // eta already folded in
ScalarFn make_initial_datum(const RunConfig& c);
Problem make_problem(const RunConfig& c);
ConeSpec make_cone(const RunConfig& c);
std::vector<double> snapshot_times(const RunConfig& c);

/// Throws std::invalid_argument naming the first unknown kind or bad value.
void validate(const RunConfig& c);

}  // namespace degen::harness
