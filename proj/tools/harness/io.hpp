#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "degen/analysis.hpp"
#include "degen/time_integration.hpp"

namespace degen::harness {

/// 17 significant digits: lossless for doubles.
std::string format_double(double v);

/// Snapshot CSV: header `x,u`, one row per cell center.
void write_snapshot_csv(const std::filesystem::path& path, const GridFunction& u);
/// Reads a snapshot back onto `grid`; the row count must match.
GridFunction read_snapshot_csv(const std::filesystem::path& path, const Grid1D& grid, double time);

/// Ledger CSV: header `t,dt,umin,umax,tv,mass`.
void write_ledger_csv(const std::filesystem::path& path, const std::vector<LedgerEntry>& ledger);
/// Flux fields of the returned entries are NaN (not stored in the file).
std::vector<LedgerEntry> read_ledger_csv(const std::filesystem::path& path);

/// Snapshot index `index,t,file` plus one snapshot_<k>.csv per snapshot.
void write_snapshots(const std::filesystem::path& dir, const std::vector<GridFunction>& snapshots);
std::vector<GridFunction> read_snapshots(const std::filesystem::path& dir, const Grid1D& grid);

/// Convergence table CSV: `n_cells,dx,error,rate` (rate empty on the first row).
void write_error_report_csv(const std::filesystem::path& path, const ErrorReport& report,
                            const std::vector<double>& dx);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Output directory: explicit value if given, else $DEGEN_OUTPUT_ROOT/<name>,
/// else ./degen-out/<name>.
std::filesystem::path resolve_output_dir(const std::string& explicit_dir, const std::string& name);

}  // namespace degen::harness
