// degen: command-line front end for the degenerate convection-diffusion
// solver. Exit codes: 0 success, 1 error, 2 invariant failure.

#include <cstdlib>
#include <exception>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "harness/io.hpp"

namespace {

using namespace degen;
using namespace degen::harness;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInvariant = 2;

struct Overrides {
  std::string preset;
  std::string config_path;
  std::string out;
  std::optional<std::size_t> n_cells;
  std::optional<double> t_final;
  std::optional<double> cfl;
  std::optional<double> eta;
  std::optional<std::size_t> reference_n;
  std::vector<double> snapshot_times;
  std::vector<double> etas;
  std::vector<std::size_t> resolutions;
  bool dump_config = false;
};

void add_common(CLI::App* cmd, Overrides& o, const std::string& default_preset) {
  o.preset = default_preset;
  cmd->add_option("-p,--preset", o.preset, "Preset name")->capture_default_str();
  cmd->add_option("-c,--config", o.config_path, "JSON config file (overrides the preset)");
  cmd->add_option("-o,--out", o.out, "Output directory (default $DEGEN_OUTPUT_ROOT/<preset>)");
  cmd->add_option("--n-cells", o.n_cells, "Number of cells");
  cmd->add_option("--t-final", o.t_final, "Final time");
  cmd->add_option("--cfl", o.cfl, "CFL safety factor in (0, 1]");
  cmd->add_option("--eta", o.eta, "Linear regularization added to A");
  cmd->add_option("--reference-n", o.reference_n, "Reference resolution for convergence runs");
  cmd->add_option("--snapshot-times", o.snapshot_times, "Snapshot times")->delimiter(',');
  cmd->add_option("--etas", o.etas, "Regularization sweep values")->delimiter(',');
  cmd->add_option("--resolutions", o.resolutions, "Resolution sweep (doubling)")->delimiter(',');
  cmd->add_flag("--dump-config", o.dump_config, "Print the resolved config as JSON and exit");
}

RunConfig resolve(const Overrides& o) {
  RunConfig c = o.config_path.empty() ? preset(o.preset) : load_config(o.config_path);
  if (o.n_cells) c.n_cells = *o.n_cells;
  if (o.t_final) {
    c.t_final = *o.t_final;
    if (!c.snapshot_times.empty() && o.snapshot_times.empty()) c.snapshot_times = {0.0, c.t_final};
  }
  if (o.cfl) c.cfl_safety = *o.cfl;
  if (o.eta) c.eta = *o.eta;
  if (o.reference_n) c.reference_n_cells = *o.reference_n;
  if (!o.snapshot_times.empty()) c.snapshot_times = o.snapshot_times;
  if (!o.etas.empty()) c.etas = o.etas;
  if (!o.resolutions.empty()) c.resolutions = o.resolutions;
  if (!o.out.empty()) c.output_dir = o.out;
  validate(c);
  return c;
}

int report_invariants(const InvariantReport& report) {
  std::cout << format_invariant_report(report);
  return report.all_passed() ? kExitOk : kExitInvariant;
}

int cmd_table1(const RunConfig& c) {
  const auto out = resolve_output_dir(c.output_dir, c.preset);
  const Table1Result r = run_table1(c, out);
  std::cout << "     N        error     rate\n";
  for (std::size_t k = 0; k < r.report.grid_sizes.size(); ++k) {
    std::cout << std::setw(6) << r.report.grid_sizes[k] << std::setw(13) << std::fixed << std::setprecision(3)
              << r.report.errors[k];
    if (k > 0) std::cout << std::setw(9) << std::setprecision(2) << r.report.rates[k - 1];
    std::cout << '\n';
  }
  std::cout << "fitted rate " << std::setprecision(3) << r.report.fitted_rate << "\nwrote " << out.string()
            << '\n';
  bool ok = r.reference_invariants.all_passed();
  for (const auto& inv : r.invariants) ok = ok && inv.all_passed();
  if (!ok) std::cout << "invariant failure in at least one run\n";
  return ok ? kExitOk : kExitInvariant;
}

int cmd_corollary(const RunConfig& c) {
  const auto out = resolve_output_dir(c.output_dir, c.preset);
  const EtaSweep s = run_corollary(c, out);
  for (double eta : s.etas) {
    std::cout << "eta=" << eta << "  fitted rate " << std::fixed << std::setprecision(3) << s.fitted_rates.at(eta)
              << "  C=" << s.error_constants.at(eta) << std::defaultfloat << '\n';
  }
  std::cout << "constant ratio " << s.constant_ratio << "\nwrote " << out.string() << '\n';
  return kExitOk;
}

int cmd_eta_gap(const RunConfig& c) {
  const auto out = resolve_output_dir(c.output_dir, c.preset);
  const EtaGapResult r = run_eta_gap(c, out);
  for (std::size_t k = 0; k < r.etas.size(); ++k) {
    std::cout << "eta=" << r.etas[k] << "  gap=" << r.gaps[k] << '\n';
  }
  std::cout << "fitted exponent " << r.fitted_exponent << (r.monotone ? "" : " (gaps not monotone in eta)")
            << "\nwrote " << out.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Engquist-Osher solver for degenerate convection-diffusion equations"};
  app.require_subcommand(1);

  Overrides run_o, table_o, cor_o, gap_o;
  auto* run = app.add_subcommand("run", "Single run: snapshots, ledger and invariant report");
  add_common(run, run_o, "heat");
  auto* table1 = app.add_subcommand("table1", "Degenerate diffusion convergence table");
  add_common(table1, table_o, "table1");
  auto* corollary = app.add_subcommand("corollary", "Viscous Burgers rate sweep over eta");
  add_common(corollary, cor_o, "corollary");
  auto* eta_gap = app.add_subcommand("eta-gap", "L1 gap between A and A + eta u");
  add_common(eta_gap, gap_o, "eta-gap");

  std::string check_dir;
  auto* check = app.add_subcommand("check-invariants", "Re-audit a run directory");
  check->add_option("dir", check_dir, "Directory written by `degen run`")->required();

  auto* list = app.add_subcommand("presets", "List preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*list) {
      for (const auto& n : preset_names()) std::cout << n << '\n';
      return kExitOk;
    }
    if (*check) return report_invariants(check_invariants_dir(check_dir));

    const Overrides& o = *run ? run_o : *table1 ? table_o : *corollary ? cor_o : gap_o;
    const RunConfig c = resolve(o);
    if (o.dump_config) {
      std::cout << serialize(c);
      return kExitOk;
    }
    if (*table1) return cmd_table1(c);
    if (*corollary) return cmd_corollary(c);
    if (*eta_gap) return cmd_eta_gap(c);

    // `run` with an experiment preset dispatches to the experiment.
    if (c.preset == "table1") return cmd_table1(c);
    if (c.preset == "corollary") return cmd_corollary(c);
    if (c.preset == "eta-gap") return cmd_eta_gap(c);
    const auto out = resolve_output_dir(c.output_dir, c.preset);
    const SingleRunResult r = run_single(c, out);
    std::cout << "wrote " << r.output_dir.string() << " (" << r.trajectory.ledger.size() - 1 << " steps)\n";
    return report_invariants(r.invariants);
  } catch (const std::exception& e) {
    std::cerr << "degen: " << e.what() << '\n';
    return kExitError;
  }
}
