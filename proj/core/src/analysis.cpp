#include "degen/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "degen/scheme.hpp"

namespace degen {

double l1_norm(const GridFunction& v) {
  double s = 0.0;
  for (double x : v.values()) s += std::abs(x);
  return v.grid().dx() * s;
}

double linf_norm(const GridFunction& v) {
  double m = 0.0;
  for (double x : v.values()) m = std::max(m, std::abs(x));
  return m;
}

double total_variation(const GridFunction& v, BoundaryCondition bc) {
  const auto u = v.values();
  double tv = 0.0;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) tv += std::abs(u[j + 1] - u[j]);
  if (bc == BoundaryCondition::Periodic) tv += std::abs(u.front() - u.back());
  return tv;
}

GridFunction restrict_to_coarse(const GridFunction& fine, const Grid1D& coarse_grid) {
  if (!coarse_grid.nests(fine.grid())) {
    throw std::invalid_argument("restrict_to_coarse: grids are not nested (" +
                                std::to_string(fine.grid().n_cells()) + " cells onto " +
                                std::to_string(coarse_grid.n_cells()) + ")");
  }
  const std::size_t ratio = fine.grid().n_cells() / coarse_grid.n_cells();
  if (ratio == 1) return {coarse_grid, {fine.values().begin(), fine.values().end()}, fine.time()};
  std::vector<double> out(coarse_grid.n_cells());
  const auto u = fine.values();
  for (std::size_t j = 0; j < out.size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < ratio; ++k) s += u[j * ratio + k];
    out[j] = s / static_cast<double>(ratio);
  }
  return {coarse_grid, std::move(out), fine.time()};
}

void ConeSpec::validate(double max_fprime, double t_max) const {
  if (!(M > max_fprime)) {
    std::ostringstream msg;
    msg << "cone: speed M=" << M << " must exceed max|f'|=" << max_fprime;
    throw std::invalid_argument(msg.str());
  }
  if (!(L > M * t_max)) {
    std::ostringstream msg;
    msg << "cone: L=" << L << " must exceed M*T=" << M * t_max;
    throw std::invalid_argument(msg.str());
  }
}

namespace {

// Brings two grid functions onto the coarser of their grids.
std::pair<GridFunction, GridFunction> on_common_grid(const GridFunction& u, const GridFunction& v) {
  if (u.grid() == v.grid()) return {u, v};
  if (u.grid().n_cells() < v.grid().n_cells()) return {u, restrict_to_coarse(v, u.grid())};
  return {restrict_to_coarse(u, v.grid()), v};
}

}  // namespace

double cone_l1_error(const GridFunction& u, const GridFunction& v, double t, const ConeSpec& cone) {
  const double half = cone.half_width(t);
  if (!(half > 0.0)) {
    std::ostringstream msg;
    msg << "cone_l1_error: cone is empty at t=" << t << " (L - M t = " << half << ")";
    throw std::invalid_argument(msg.str());
  }
  const auto [a, b] = on_common_grid(u, v);
  const Grid1D& g = a.grid();
  const double c = cone.center.value_or(0.5 * (g.x_left() + g.x_right()));
  const double lo = c - half;
  const double hi = c + half;
  double s = 0.0;
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    const double overlap = std::min(hi, g.right_edge(j)) - std::max(lo, g.left_edge(j));
    if (overlap > 0.0) s += overlap * std::abs(a[j] - b[j]);
  }
  return s;
}

double percent_relative_l1_error(const GridFunction& approx, const GridFunction& reference) {
  const Grid1D& coarse = approx.grid();
  if (!coarse.nests(reference.grid())) {
    throw std::invalid_argument("percent_relative_l1_error: reference grid does not refine the approximation grid");
  }
  const double denom = l1_norm(approx);
  if (denom == 0.0) throw std::invalid_argument("percent_relative_l1_error: approximation has zero L1 norm");
  const std::size_t ratio = reference.grid().n_cells() / coarse.n_cells();
  const auto r = reference.values();
  double s = 0.0;
  for (std::size_t j = 0; j < approx.size(); ++j) {
    for (std::size_t k = 0; k < ratio; ++k) s += std::abs(approx[j] - r[j * ratio + k]);
  }
  return 100.0 * reference.grid().dx() * s / denom;
}

std::string to_string(NormKind kind) {
  return kind == NormKind::RelativePercentL1 ? "relative-percent-l1" : "cone-l1";
}

double fit_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_log_slope: need at least two matching samples");
  }
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw std::invalid_argument("fit_log_slope: samples must be positive");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(y[i]) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_log_slope: degenerate abscissae");
  return sxy / sxx;
}

ErrorReport convergence_table(std::span<const std::pair<std::size_t, double>> runs, NormKind kind) {
  if (runs.empty()) throw std::invalid_argument("convergence_table: no runs");
  ErrorReport report;
  report.norm_kind = kind;
  for (std::size_t k = 0; k < runs.size(); ++k) {
    if (k > 0 && runs[k].first != 2 * runs[k - 1].first) {
      throw std::invalid_argument("convergence_table: grid sizes must double (" +
                                  std::to_string(runs[k - 1].first) + " -> " +
                                  std::to_string(runs[k].first) + ")");
    }
    report.grid_sizes.push_back(runs[k].first);
    report.errors.push_back(runs[k].second);
  }
  for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
    report.rates.push_back(std::log2(report.errors[k] / report.errors[k + 1]));
  }
  if (runs.size() >= 2) {
    std::vector<double> h;
    for (std::size_t n : report.grid_sizes) h.push_back(1.0 / static_cast<double>(n));
    report.fitted_rate = fit_log_slope(h, report.errors);
  }
  return report;
}

double entropy_residual(const Trajectory& traj, const Problem& problem, double c) {
  if (traj.snapshots.size() < 2) return 0.0;
  const Grid1D& g = traj.snapshots.front().grid();
  const double dx = g.dx();
  const std::size_t n = g.n_cells();

  DataRange range{c, c};
  for (const auto& s : traj.snapshots) {
    const DataRange r = data_range(s);
    range.lo = std::min(range.lo, r.lo);
    range.hi = std::max(range.hi, r.hi);
  }
  const double scale = std::max({1.0, std::abs(range.lo), std::abs(range.hi)});
  const SpatialOperator op(problem, range.widened(1e-9 * scale));
  const EOFlux& flux = op.flux();
  const bool convect = !flux.identically_zero();
  const bool diffuse = !problem.diffusion.identically_zero;
  const double a_c = diffuse ? problem.diffusion.a(c) : 0.0;

  std::vector<double> q(n + 1), r(n + 2);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < traj.snapshots.size(); ++k) {
    const GridFunction& now = traj.snapshots[k];
    const GridFunction& next = traj.snapshots[k + 1];
    const double dt = next.time() - now.time();
    if (!(dt > 0.0)) continue;
    const PaddedValues u(now.values(), traj.bc);
    const auto p = u.padded();
    for (std::size_t i = 0; i < n + 1; ++i) {
      if (convect) {
        const double hi = flux(std::max(p[i], c), std::max(p[i + 1], c));
        const double lo = flux(std::min(p[i], c), std::min(p[i + 1], c));
        q[i] = hi - lo;
      } else {
        q[i] = 0.0;
      }
    }
    for (std::size_t i = 0; i < n + 2; ++i) r[i] = diffuse ? std::abs(problem.diffusion.a(p[i]) - a_c) : 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double time_part = (std::abs(next[j] - c) - std::abs(now[j] - c)) / dt;
      const double conv_part = (q[j + 1] - q[j]) / dx;
      const double diff_part = (r[j + 2] - 2.0 * r[j + 1] + r[j]) / (dx * dx);
      worst = std::max(worst, time_part + conv_part - diff_part);
    }
  }
  return std::isfinite(worst) ? worst : 0.0;
}

std::vector<double> kruzkov_lattice(DataRange range, std::size_t count, double margin) {
  if (count < 2) throw std::invalid_argument("kruzkov_lattice: need at least two constants");
  std::vector<double> cs(count);
  const double lo = range.lo - margin;
  const double hi = range.hi + margin;
  for (std::size_t i = 0; i < count; ++i) {
    cs[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  return cs;
}

EntropyCertificate entropy_certificate(const Trajectory& traj, const Problem& problem,
                                       std::span<const double> c_values) {
  EntropyCertificate cert;
  cert.worst = -std::numeric_limits<double>::infinity();
  for (double c : c_values) {
    const double res = entropy_residual(traj, problem, c);
    cert.c_values.push_back(c);
    cert.residuals.push_back(res);
    if (res > cert.worst) {
      cert.worst = res;
      cert.worst_c = c;
    }
  }
  if (c_values.empty()) cert.worst = 0.0;
  return cert;
}

bool InvariantReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.passed; });
}

const InvariantCheck* InvariantReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

template <typename Field>
std::optional<double> baseline(const std::vector<LedgerEntry>& ledger, Field field) {
  std::optional<double> value;
  double t_best = std::numeric_limits<double>::infinity();
  for (const auto& e : ledger) {
    const double v = field(e);
    if (std::isfinite(v) && e.t < t_best) {
      t_best = e.t;
      value = v;
    }
  }
  return value;
}

template <typename Field>
InvariantCheck non_increase(const std::string& name, const std::vector<LedgerEntry>& ledger,
                            Field field, double rel_tol, double abs_tol, double floor_scale = 0.0) {
  InvariantCheck check;
  check.name = name;
  const auto base = baseline(ledger, field);
  if (!base) {
    check.checked = false;
    return check;
  }
  check.tolerance = rel_tol * std::max(floor_scale, std::abs(*base)) + abs_tol;
  double margin = 0.0;
  for (const auto& e : ledger) {
    const double v = field(e);
    if (std::isfinite(v)) margin = std::max(margin, v - *base);
  }
  check.margin = margin;
  check.passed = margin <= check.tolerance;
  return check;
}

}  // namespace

InvariantReport invariant_report(const Trajectory& traj) {
  InvariantReport report;
  const auto& ledger = traj.ledger;
  report.checks.push_back(non_increase(
      "linf", ledger, [](const LedgerEntry& e) { return std::max(std::abs(e.umin), std::abs(e.umax)); },
      1e-12, 0.0, 1.0));
  report.checks.push_back(non_increase("tv", ledger, [](const LedgerEntry& e) { return e.tv; }, 0.0, 1e-10));

  InvariantCheck mass;
  mass.name = "mass";
  const auto mass0 = baseline(ledger, [](const LedgerEntry& e) { return e.mass; });
  if (traj.bc == BoundaryCondition::Periodic && mass0) {
    mass.tolerance = 1e-10 * (1.0 + std::abs(*mass0));
    for (const auto& e : ledger) {
      if (std::isfinite(e.mass)) mass.margin = std::max(mass.margin, std::abs(e.mass - *mass0));
    }
    mass.passed = mass.margin <= mass.tolerance;
  } else {
    mass.checked = false;
  }
  report.checks.push_back(mass);

  report.checks.push_back(
      non_increase("flux_tv", ledger, [](const LedgerEntry& e) { return e.flux_tv; }, 1e-8, 1e-12));
  report.checks.push_back(
      non_increase("flux_linf", ledger, [](const LedgerEntry& e) { return e.flux_linf; }, 1e-8, 1e-12));
  return report;
}

}  // namespace degen
