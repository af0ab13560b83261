#include "harness/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace degen::harness {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, const fs::path& path) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) throw std::runtime_error("bad number '" + s + "' in '" + path.string() + "'");
  return v;
}

void expect_header(std::istream& in, const std::string& header, const fs::path& path) {
  std::string line;
  if (!std::getline(in, line) || line != header) {
    throw std::runtime_error("'" + path.string() + "': expected header '" + header + "'");
  }
}

}  // namespace

void write_snapshot_csv(const fs::path& path, const GridFunction& u) {
  auto out = open_out(path);
  out << "x,u\n";
  for (std::size_t j = 0; j < u.size(); ++j) {
    out << format_double(u.grid().center(j)) << ',' << format_double(u[j]) << '\n';
  }
}

GridFunction read_snapshot_csv(const fs::path& path, const Grid1D& grid, double time) {
  auto in = open_in(path);
  expect_header(in, "x,u", path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 2) throw std::runtime_error("'" + path.string() + "': malformed row");
    values.push_back(parse_number(cells[1], path));
  }
  return {grid, std::move(values), time};
}

void write_ledger_csv(const fs::path& path, const std::vector<LedgerEntry>& ledger) {
  auto out = open_out(path);
  out << "t,dt,umin,umax,tv,mass\n";
  for (const auto& e : ledger) {
    out << format_double(e.t) << ',' << format_double(e.dt) << ',' << format_double(e.umin) << ','
        << format_double(e.umax) << ',' << format_double(e.tv) << ',' << format_double(e.mass) << '\n';
  }
}

std::vector<LedgerEntry> read_ledger_csv(const fs::path& path) {
  auto in = open_in(path);
  expect_header(in, "t,dt,umin,umax,tv,mass", path);
  std::vector<LedgerEntry> ledger;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 6) throw std::runtime_error("'" + path.string() + "': malformed ledger row");
    LedgerEntry e;
    e.t = parse_number(cells[0], path);
    e.dt = parse_number(cells[1], path);
    e.umin = parse_number(cells[2], path);
    e.umax = parse_number(cells[3], path);
    e.tv = parse_number(cells[4], path);
    e.mass = parse_number(cells[5], path);
    e.flux_tv = std::numeric_limits<double>::quiet_NaN();
    e.flux_linf = std::numeric_limits<double>::quiet_NaN();
    ledger.push_back(e);
  }
  return ledger;
}

void write_snapshots(const fs::path& dir, const std::vector<GridFunction>& snapshots) {
  fs::create_directories(dir);
  auto index = open_out(dir / "snapshots.csv");
  index << "index,t,file\n";
  for (std::size_t k = 0; k < snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof(name), "snapshot_%03zu.csv", k);
    write_snapshot_csv(dir / name, snapshots[k]);
    index << k << ',' << format_double(snapshots[k].time()) << ',' << name << '\n';
  }
}

std::vector<GridFunction> read_snapshots(const fs::path& dir, const Grid1D& grid) {
  const fs::path index_path = dir / "snapshots.csv";
  auto in = open_in(index_path);
  expect_header(in, "index,t,file", index_path);
  std::vector<GridFunction> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != 3) throw std::runtime_error("'" + index_path.string() + "': malformed row");
    out.push_back(read_snapshot_csv(dir / cells[2], grid, parse_number(cells[1], index_path)));
  }
  return out;
}

void write_error_report_csv(const fs::path& path, const ErrorReport& report, const std::vector<double>& dx) {
  auto out = open_out(path);
  out << "n_cells,dx,error,rate\n";
  for (std::size_t k = 0; k < report.grid_sizes.size(); ++k) {
    out << report.grid_sizes[k] << ',' << format_double(dx.at(k)) << ',' << format_double(report.errors[k]) << ',';
    if (k > 0) out << format_double(report.rates[k - 1]);
    out << '\n';
  }
}

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

std::string read_text(const fs::path& path) {
  auto in = open_in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

fs::path resolve_output_dir(const std::string& explicit_dir, const std::string& name) {
  if (!explicit_dir.empty()) return explicit_dir;
  if (const char* root = std::getenv("DEGEN_OUTPUT_ROOT"); root && *root) return fs::path(root) / name;
  return fs::path("degen-out") / name;
}

}  // namespace degen::harness
