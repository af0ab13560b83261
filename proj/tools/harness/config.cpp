#include "harness/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "degen/regularization.hpp"

namespace degen::harness {

using nlohmann::json;

void to_json(json& j, const RunConfig& c) {
  j = json{
      {"preset", c.preset},
      {"flux", {{"kind", c.flux}, {"speed", c.flux_speed}}},
      {"diffusion", {{"kind", c.diffusion}, {"coef", c.diffusion_coef}}},
      {"eta", c.eta},
      {"bc", c.bc},
      {"domain", {c.x_left, c.x_right}},
      {"u0", {{"kind", c.u0}, {"params", c.u0_params}}},
      {"n_cells", c.n_cells},
      {"t_final", c.t_final},
      {"snapshot_times", c.snapshot_times},
      {"cfl_safety", c.cfl_safety},
      {"cone", {{"L", c.cone_L}, {"M", c.cone_M}}},
      {"output_dir", c.output_dir},
      {"reference_n_cells", c.reference_n_cells},
      {"resolutions", c.resolutions},
      {"etas", c.etas},
  };
}

void from_json(const json& j, RunConfig& c) {
  RunConfig d;  // defaults for absent keys
  c.preset = j.value("preset", d.preset);
  if (j.contains("flux")) {
    c.flux = j["flux"].value("kind", d.flux);
    c.flux_speed = j["flux"].value("speed", d.flux_speed);
  }
  if (j.contains("diffusion")) {
    c.diffusion = j["diffusion"].value("kind", d.diffusion);
    c.diffusion_coef = j["diffusion"].value("coef", d.diffusion_coef);
  }
  c.eta = j.value("eta", d.eta);
  c.bc = j.value("bc", d.bc);
  if (j.contains("domain")) {
    const auto& dom = j.at("domain");
    if (!dom.is_array() || dom.size() != 2) throw std::invalid_argument("config: domain must be [x_left, x_right]");
    c.x_left = dom[0].get<double>();
    c.x_right = dom[1].get<double>();
  }
  if (j.contains("u0")) {
    c.u0 = j["u0"].value("kind", d.u0);
    c.u0_params = j["u0"].value("params", d.u0_params);
  }
  c.n_cells = j.value("n_cells", d.n_cells);
  c.t_final = j.value("t_final", d.t_final);
  c.snapshot_times = j.value("snapshot_times", d.snapshot_times);
  c.cfl_safety = j.value("cfl_safety", d.cfl_safety);
  if (j.contains("cone")) {
    c.cone_L = j["cone"].value("L", d.cone_L);
    c.cone_M = j["cone"].value("M", d.cone_M);
  }
  c.output_dir = j.value("output_dir", d.output_dir);
  c.reference_n_cells = j.value("reference_n_cells", d.reference_n_cells);
  c.resolutions = j.value("resolutions", d.resolutions);
  c.etas = j.value("etas", d.etas);
}

std::string serialize(const RunConfig& c) { return json(c).dump(2) + "\n"; }

RunConfig parse_config(const std::string& text) {
  RunConfig c = json::parse(text).get<RunConfig>();
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

namespace {

constexpr double kPi = std::numbers::pi;

RunConfig table1_base(std::size_t n) {
  RunConfig c;
  c.preset = "table1-n" + std::to_string(n);
  c.flux = "zero";
  c.diffusion = "positive-part-quadratic";
  c.bc = "zero-diffusive-flux";
  c.x_left = -kPi / 2.0;
  c.x_right = kPi;
  c.u0 = "sine";
  c.u0_params = {1.0, 1.0};
  c.n_cells = n;
  c.t_final = 1.0;
  c.snapshot_times = {0.0, 1.0};
  // No convection: the cone is the whole domain.
  c.cone_L = 0.75 * kPi;
  c.cone_M = 0.0;
  return c;
}

RunConfig burgers_riemann() {
  RunConfig c;
  c.preset = "burgers-riemann";
  c.flux = "burgers";
  c.diffusion = "zero";
  c.bc = "extrapolate";
  c.x_left = -2.0;
  c.x_right = 2.0;
  c.u0 = "riemann";
  c.u0_params = {1.0, 0.0, 0.0};
  c.n_cells = 400;
  c.t_final = 0.5;
  c.snapshot_times = {0.0, 0.5};
  c.cone_L = 1.5;
  c.cone_M = 1.1;  // Lip(f) on [0, 1] plus 0.1
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"constant", "heat", "table1", "table1-n<N>", "burgers-riemann", "corollary", "eta-gap"};
}

RunConfig preset(const std::string& name) {
  if (name == "constant") {
    RunConfig c;
    c.preset = name;
    c.flux = "burgers";
    c.diffusion = "linear";
    c.diffusion_coef = 0.1;
    c.bc = "periodic";
    c.x_left = 0.0;
    c.x_right = 1.0;
    c.u0 = "constant";
    c.u0_params = {1.0};
    c.n_cells = 50;
    c.t_final = 0.5;
    c.snapshot_times = {0.0, 0.25, 0.5};
    c.cone_L = 0.5;
    c.cone_M = 0.0;
    return c;
  }
  if (name == "heat") {
    RunConfig c;
    c.preset = name;
    c.flux = "zero";
    c.diffusion = "linear";
    c.diffusion_coef = 1.0;
    c.bc = "periodic";
    c.x_left = 0.0;
    c.x_right = 2.0 * kPi;
    c.u0 = "sine";
    c.u0_params = {1.0, 1.0};
    c.n_cells = 100;
    c.t_final = 0.5;
    c.snapshot_times = {0.0, 0.5};
    c.cone_L = kPi;
    c.cone_M = 0.0;
    return c;
  }
  if (name == "table1") {
    RunConfig c = table1_base(400);
    c.preset = name;
    c.resolutions = {25, 50, 100, 200, 400, 800};
    c.reference_n_cells = 4000;
    return c;
  }
  if (name.rfind("table1-n", 0) == 0) {
    const std::string digits = name.substr(8);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("preset '" + name + "': expected table1-n<N>");
    }
    const auto n = static_cast<std::size_t>(std::stoul(digits));
    if (n == 0) throw std::invalid_argument("preset '" + name + "': N must be positive");
    return table1_base(n);
  }
  if (name == "burgers-riemann") return burgers_riemann();
  if (name == "corollary") {
    RunConfig c = burgers_riemann();
    c.preset = name;
    c.etas = {1e-2, 1e-3};
    c.resolutions = {100, 200, 400, 800, 1600};
    c.reference_n_cells = 3200;
    return c;
  }
  if (name == "eta-gap") {
    RunConfig c = table1_base(2000);
    c.preset = name;
    c.etas = {1e-2, 5e-3, 2.5e-3, 1.25e-3};
    c.reference_n_cells = 2000;
    return c;
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

FluxSpec make_flux(const RunConfig& c) {
  if (c.flux == "zero") return FluxSpec::zero();
  if (c.flux == "linear") return FluxSpec::linear(c.flux_speed);
  if (c.flux == "burgers") return FluxSpec::burgers();
  if (c.flux == "sine") return FluxSpec::sine();
  throw std::invalid_argument("unknown flux kind '" + c.flux + "'");
}

DiffusionSpec make_diffusion(const RunConfig& c) {
  DiffusionSpec d;
  if (c.diffusion == "zero") {
    d = DiffusionSpec::zero();
  } else if (c.diffusion == "linear") {
    d = DiffusionSpec::linear(c.diffusion_coef);
  } else if (c.diffusion == "positive-part-quadratic") {
    d = DiffusionSpec::positive_part_quadratic();
  } else {
    throw std::invalid_argument("unknown diffusion kind '" + c.diffusion + "'");
  }
  return regularize_diffusion(d, c.eta);
}

ScalarFn make_initial_datum(const RunConfig& c) {
  const auto& p = c.u0_params;
  auto param = [&](std::size_t i, double fallback) { return i < p.size() ? p[i] : fallback; };
  if (c.u0 == "constant") {
    const double v = param(0, 1.0);
    return [v](double) { return v; };
  }
  if (c.u0 == "sine") {
    const double amp = param(0, 1.0);
    const double k = param(1, 1.0);
    return [amp, k](double x) { return amp * std::sin(k * x); };
  }
  if (c.u0 == "riemann") {
    const double left = param(0, 1.0);
    const double right = param(1, 0.0);
    const double x0 = param(2, 0.0);
    return [left, right, x0](double x) { return x < x0 ? left : right; };
  }
  throw std::invalid_argument("unknown u0 kind '" + c.u0 + "'");
}

void validate(const RunConfig& c) {
  make_flux(c);
  make_diffusion(c);
  make_initial_datum(c);
  parse_boundary_condition(c.bc);
  if (!(c.x_left < c.x_right)) throw std::invalid_argument("config: need x_left < x_right");
  if (c.n_cells == 0) throw std::invalid_argument("config: n_cells must be positive");
  if (!(c.t_final > 0.0)) throw std::invalid_argument("config: t_final must be positive");
  if (!(c.cfl_safety > 0.0 && c.cfl_safety <= 1.0)) throw std::invalid_argument("config: cfl_safety must lie in (0, 1]");
  for (double t : c.snapshot_times) {
    if (t < 0.0 || t > c.t_final) throw std::invalid_argument("config: snapshot time outside [0, t_final]");
  }
}

Problem make_problem(const RunConfig& c) {
  validate(c);
  return Problem{make_flux(c),
                 make_diffusion(c),
                 parse_boundary_condition(c.bc),
                 make_initial_datum(c),
                 Grid1D(c.x_left, c.x_right, c.n_cells),
                 c.t_final};
}

ConeSpec make_cone(const RunConfig& c) { return ConeSpec{c.cone_L, c.cone_M, std::nullopt}; }

std::vector<double> snapshot_times(const RunConfig& c) {
  if (c.snapshot_times.empty()) return {c.t_final};
  return c.snapshot_times;
}

}  // namespace degen::harness
