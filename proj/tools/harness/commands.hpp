#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "degen/analysis.hpp"
#include "degen/regularization.hpp"
#include "harness/config.hpp"

namespace degen::harness {

struct SingleRunResult {
  Trajectory trajectory;
  InvariantReport invariants;
  std::filesystem::path output_dir;
};

/// Integrates the configured problem and writes config.json, ledger.csv,
/// snapshots.csv + snapshot_<k>.csv and invariants.json into `out`.
SingleRunResult run_single(const RunConfig& config, const std::filesystem::path& out);

struct Table1Result {
  ErrorReport report;
  std::vector<double> dx;
  std::vector<InvariantReport> invariants;  // one per resolution
  InvariantReport reference_invariants;
  GridFunction reference;
};

/// Degenerate-diffusion convergence study: every resolution against the
/// reference resolution at t_final, percent relative L1 errors.
Table1Result table1_study(const RunConfig& config);
/// table1_study plus table1.csv and table1_summary.json in `out`.
Table1Result run_table1(const RunConfig& config, const std::filesystem::path& out);

EtaSweep corollary_study(const RunConfig& config);
/// corollary.csv: `eta,n_cells,dx,cone_l1_error,fitted_rate,error_constant`.
EtaSweep run_corollary(const RunConfig& config, const std::filesystem::path& out);

EtaGapResult eta_gap_study(const RunConfig& config);
/// eta_gap.csv: `eta,l1_gap,fitted_exponent`.
EtaGapResult run_eta_gap(const RunConfig& config, const std::filesystem::path& out);

/// Re-audits a run directory written by run_single: ledger invariants from
/// ledger.csv, flux invariants recomputed from the stored snapshots.
InvariantReport check_invariants_dir(const std::filesystem::path& dir);

std::string invariant_report_json(const InvariantReport& report);
std::string format_invariant_report(const InvariantReport& report);

}  // namespace degen::harness
