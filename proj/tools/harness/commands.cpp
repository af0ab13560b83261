#include "harness/commands.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "degen/parallel.hpp"
#include "degen/scheme.hpp"
#include "harness/io.hpp"

namespace degen::harness {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

TimeStepper stepper_for(const RunConfig& c) {
  TimeStepper s;
  s.cfl_safety = c.cfl_safety;
  return s;
}

GridFunction final_state(const RunConfig& c, std::size_t n_cells, InvariantReport* report) {
  RunConfig rc = c;
  rc.n_cells = n_cells;
  const Problem p = make_problem(rc);
  const double times[] = {c.t_final};
  const Trajectory traj = integrate(p, stepper_for(c), times);
  if (report) *report = invariant_report(traj);
  return traj.snapshots.back();
}

json check_json(const InvariantCheck& c) {
  return json{{"name", c.name},
              {"checked", c.checked},
              {"passed", c.passed},
              {"margin", c.margin},
              {"tolerance", c.tolerance}};
}

}  // namespace

std::string invariant_report_json(const InvariantReport& report) {
  json j;
  j["all_passed"] = report.all_passed();
  j["checks"] = json::array();
  for (const auto& c : report.checks) j["checks"].push_back(check_json(c));
  return j.dump(2) + "\n";
}

std::string format_invariant_report(const InvariantReport& report) {
  std::ostringstream out;
  for (const auto& c : report.checks) {
    out << std::left << std::setw(10) << c.name << ' ';
    if (!c.checked) {
      out << "n/a\n";
      continue;
    }
    out << (c.passed ? "PASS" : "FAIL") << "  margin=" << std::scientific << std::setprecision(3) << c.margin
        << "  tol=" << c.tolerance << std::defaultfloat << '\n';
  }
  return out.str();
}

SingleRunResult run_single(const RunConfig& config, const fs::path& out) {
  const Problem problem = make_problem(config);
  const auto times = snapshot_times(config);
  Trajectory traj = integrate(problem, stepper_for(config), times);
  InvariantReport report = invariant_report(traj);

  fs::create_directories(out);
  RunConfig stored = config;
  stored.output_dir = out.string();
  write_text(out / "config.json", serialize(stored));
  write_ledger_csv(out / "ledger.csv", traj.ledger);
  write_snapshots(out, traj.snapshots);
  write_text(out / "invariants.json", invariant_report_json(report));
  return {std::move(traj), std::move(report), out};
}

Table1Result table1_study(const RunConfig& config) {
  if (config.resolutions.empty() || config.reference_n_cells == 0) {
    throw std::invalid_argument("table1: config needs resolutions and reference_n_cells");
  }
  const std::size_t runs = config.resolutions.size();
  std::vector<InvariantReport> reports(runs + 1);
  auto finals = parallel_map(runs + 1, [&](std::size_t k) {
    const std::size_t n = k < runs ? config.resolutions[k] : config.reference_n_cells;
    return final_state(config, n, &reports[k]);
  });

  const GridFunction& ref = finals.back();
  std::vector<std::pair<std::size_t, double>> errors;
  std::vector<double> dx;
  for (std::size_t k = 0; k < runs; ++k) {
    errors.emplace_back(config.resolutions[k], percent_relative_l1_error(finals[k], ref));
    dx.push_back(finals[k].grid().dx());
  }
  Table1Result result{convergence_table(errors, NormKind::RelativePercentL1),
                      dx,
                      std::vector<InvariantReport>(reports.begin(), reports.begin() + static_cast<std::ptrdiff_t>(runs)),
                      reports.back(),
                      ref};
  return result;
}

Table1Result run_table1(const RunConfig& config, const fs::path& out) {
  Table1Result result = table1_study(config);
  fs::create_directories(out);
  write_text(out / "config.json", serialize(config));
  write_error_report_csv(out / "table1.csv", result.report, result.dx);

  json summary;
  summary["norm"] = to_string(result.report.norm_kind);
  summary["reference_n_cells"] = config.reference_n_cells;
  summary["fitted_rate"] = result.report.fitted_rate;
  summary["invariants_passed"] = json::array();
  for (const auto& r : result.invariants) summary["invariants_passed"].push_back(r.all_passed());
  summary["reference_invariants_passed"] = result.reference_invariants.all_passed();
  write_text(out / "table1_summary.json", summary.dump(2) + "\n");
  return result;
}

EtaSweep corollary_study(const RunConfig& config) {
  RunConfig base_cfg = config;
  base_cfg.eta = 0.0;
  const Problem base = make_problem(base_cfg);
  ViscousRateOptions options;
  options.cone = make_cone(config);
  options.reference_n_cells = config.reference_n_cells;
  options.cfl_safety = config.cfl_safety;
  return viscous_rate_experiment(base, config.etas, config.resolutions, options);
}

EtaSweep run_corollary(const RunConfig& config, const fs::path& out) {
  EtaSweep sweep = corollary_study(config);
  fs::create_directories(out);
  write_text(out / "config.json", serialize(config));
  std::ostringstream csv;
  csv << "eta,n_cells,dx,cone_l1_error,fitted_rate,error_constant\n";
  for (double eta : sweep.etas) {
    for (std::size_t n : sweep.resolutions) {
      const double dx = (config.x_right - config.x_left) / static_cast<double>(n);
      csv << format_double(eta) << ',' << n << ',' << format_double(dx) << ','
          << format_double(sweep.results.at({eta, n})) << ',' << format_double(sweep.fitted_rates.at(eta)) << ','
          << format_double(sweep.error_constants.at(eta)) << '\n';
    }
  }
  write_text(out / "corollary.csv", csv.str());
  json summary{{"constant_ratio", sweep.constant_ratio},
               {"rates_ok", sweep.rates_ok},
               {"constants_stable", sweep.constants_stable}};
  write_text(out / "corollary_summary.json", summary.dump(2) + "\n");
  return sweep;
}

EtaGapResult eta_gap_study(const RunConfig& config) {
  RunConfig base_cfg = config;
  base_cfg.eta = 0.0;
  const Problem base = make_problem(base_cfg);
  const std::size_t n_ref = config.reference_n_cells ? config.reference_n_cells : config.n_cells;
  return eta_gap_experiment(base, config.etas, n_ref, config.cfl_safety);
}

EtaGapResult run_eta_gap(const RunConfig& config, const fs::path& out) {
  EtaGapResult result = eta_gap_study(config);
  fs::create_directories(out);
  write_text(out / "config.json", serialize(config));
  std::ostringstream csv;
  csv << "eta,l1_gap,fitted_exponent\n";
  for (std::size_t k = 0; k < result.etas.size(); ++k) {
    csv << format_double(result.etas[k]) << ',' << format_double(result.gaps[k]) << ','
        << format_double(result.fitted_exponent) << '\n';
  }
  write_text(out / "eta_gap.csv", csv.str());
  json summary{{"n_ref", result.n_ref},
               {"fitted_exponent", result.fitted_exponent},
               {"monotone", result.monotone}};
  write_text(out / "eta_gap_summary.json", summary.dump(2) + "\n");
  return result;
}

InvariantReport check_invariants_dir(const fs::path& dir) {
  const RunConfig config = load_config((dir / "config.json").string());
  const Problem problem = make_problem(config);
  std::vector<LedgerEntry> ledger = read_ledger_csv(dir / "ledger.csv");
  const std::vector<GridFunction> snapshots = read_snapshots(dir, problem.grid);
  if (snapshots.empty()) throw std::runtime_error("check-invariants: no snapshots in '" + dir.string() + "'");

  DataRange range = data_range(snapshots.front());
  for (const auto& s : snapshots) {
    const DataRange r = data_range(s);
    range.lo = std::min(range.lo, r.lo);
    range.hi = std::max(range.hi, r.hi);
  }
  const double scale = std::max({1.0, std::abs(range.lo), std::abs(range.hi)});
  const SpatialOperator op(problem, range.widened(1e-9 * scale));
  SchemeWorkspace ws;
  ws.resize(problem.grid.n_cells());
  for (const auto& s : snapshots) {
    const SchemeState state(s, problem.bc);
    op.interface_fluxes(state.values(), problem.grid.dx(), ws);
    ledger.push_back(ledger_entry(state, ws.w, std::numeric_limits<double>::quiet_NaN()));
  }

  Trajectory traj;
  traj.bc = problem.bc;
  traj.ledger = std::move(ledger);
  return invariant_report(traj);
}

}  // namespace degen::harness
