#include "degen/eo_flux.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>
#include <string>

namespace degen {

namespace {

struct SimpsonIntegrator {
  const ScalarFn& fprime;
  bool positive;
  int max_depth;
  std::size_t hits = 0;

  double g(double s) const {
    const double d = fprime(s);
    return positive ? std::max(d, 0.0) : std::min(d, 0.0);
  }

  double recurse(double a, double b, double fa, double fm, double fb, double whole,
                 double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = g(lm);
    const double frm = g(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth >= max_depth) {
      ++hits;
      return left + right + diff / 15.0;
    }
    if (std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
           recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
  }

  double integrate(double a, double b, double tol) {
    if (a == b) return 0.0;
    // Force a few levels so a kink between the initial nodes is not missed.
    const double h = (b - a) / 8.0;
    double total = 0.0;
    for (int k = 0; k < 8; ++k) {
      const double lo = a + h * k;
      const double hi = k == 7 ? b : a + h * (k + 1);
      const double flo = g(lo);
      const double fhi = g(hi);
      const double fmid = g(0.5 * (lo + hi));
      const double w = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
      total += recurse(lo, hi, flo, fmid, fhi, w, tol / 8.0, 3);
    }
    return total;
  }
};

}  // namespace

EOFlux::EOFlux(FluxSpec spec, DataRange range, EOFluxOptions options)
    : spec_(std::move(spec)),
      range_(range),
      options_(options),
      mode_(spec_.closed_form_split ? SplitMode::ClosedForm : SplitMode::Quadrature) {
  if (!spec_.f || !spec_.f_prime) throw std::invalid_argument("EOFlux: flux needs f and f'");
  if (!(range_.lo <= range_.hi)) throw std::invalid_argument("EOFlux: empty data range");
  f_at_zero_ = spec_.f(0.0);

  if (mode_ == SplitMode::Quadrature) {
    std::size_t hits = 0;
    integrate_part(0.0, range_.lo, true, &hits);
    integrate_part(0.0, range_.hi, true, &hits);
    integrate_part(0.0, range_.lo, false, &hits);
    integrate_part(0.0, range_.hi, false, &hits);
    depth_warnings_ = hits;
    if (hits > 0) {
      std::cerr << "warning: EOFlux quadrature hit the depth limit " << hits
                << " times; f' may oscillate faster than the panel spacing\n";
    }
  }

  if (options_.cache_spacing) {
    const double h_req = *options_.cache_spacing;
    if (!(h_req > 0.0)) throw std::invalid_argument("EOFlux: cache spacing must be positive");
    const double span = range_.hi - range_.lo;
    const auto intervals = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(span / h_req)));
    cache_h_ = span > 0.0 ? span / static_cast<double>(intervals) : 1.0;
    cache_plus_.resize(intervals + 1);
    cache_minus_.resize(intervals + 1);
    if (mode_ == SplitMode::ClosedForm) {
      for (std::size_t k = 0; k <= intervals; ++k) {
        const double u = range_.lo + cache_h_ * static_cast<double>(k);
        cache_plus_[k] = spec_.closed_form_split->plus(u);
        cache_minus_[k] = spec_.closed_form_split->minus(u);
      }
    } else {
      // Accumulate panel integrals from the value at the lower end.
      double plus = f_at_zero_ + integrate_part(0.0, range_.lo, true, nullptr);
      double minus = integrate_part(0.0, range_.lo, false, nullptr);
      cache_plus_[0] = plus;
      cache_minus_[0] = minus;
      for (std::size_t k = 0; k < intervals; ++k) {
        const double a = range_.lo + cache_h_ * static_cast<double>(k);
        const double b = range_.lo + cache_h_ * static_cast<double>(k + 1);
        plus += integrate_part(a, b, true, nullptr);
        minus += integrate_part(a, b, false, nullptr);
        cache_plus_[k + 1] = plus;
        cache_minus_[k + 1] = minus;
      }
    }
  }
}

double EOFlux::integrate_part(double a, double b, bool positive, std::size_t* depth_hits) const {
  if (a == b) return 0.0;
  SimpsonIntegrator integ{spec_.f_prime, positive, options_.quad_max_depth};
  const double sign = b >= a ? 1.0 : -1.0;
  const double value = sign * integ.integrate(std::min(a, b), std::max(a, b), options_.quad_tolerance);
  if (depth_hits) *depth_hits += integ.hits;
  return value;
}

void EOFlux::check_range(double u) const {
  const double slack = 1e-12 * std::max({1.0, std::abs(range_.lo), std::abs(range_.hi)});
  if (!range_.contains(u, slack)) {
    throw std::out_of_range("EOFlux: u=" + std::to_string(u) + " outside declared range [" +
                            std::to_string(range_.lo) + ", " + std::to_string(range_.hi) + "]");
  }
}

double EOFlux::lookup(const std::vector<double>& table, double u) const {
  check_range(u);
  const double s = (u - range_.lo) / cache_h_;
  const std::size_t last = table.size() - 1;
  if (s <= 0.0) return table[0];
  if (s >= static_cast<double>(last)) return table[last];
  const auto k = static_cast<std::size_t>(s);
  const double w = s - static_cast<double>(k);
  return (1.0 - w) * table[k] + w * table[k + 1];
}

double EOFlux::f_plus(double u) const {
  if (!cache_plus_.empty()) return lookup(cache_plus_, u);
  if (mode_ == SplitMode::ClosedForm) return spec_.closed_form_split->plus(u);
  check_range(u);
  return f_at_zero_ + integrate_part(0.0, u, true, nullptr);
}

double EOFlux::f_minus(double u) const {
  if (!cache_minus_.empty()) return lookup(cache_minus_, u);
  if (mode_ == SplitMode::ClosedForm) return spec_.closed_form_split->minus(u);
  check_range(u);
  return integrate_part(0.0, u, false, nullptr);
}

}  // namespace degen
