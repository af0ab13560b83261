#include "degen/problem.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace degen {

FluxSpec FluxSpec::zero() {
  FluxSpec s;
  s.f = [](double) { return 0.0; };
  s.f_prime = [](double) { return 0.0; };
  s.lipschitz_bound_hint = 0.0;
  s.closed_form_split = FluxSplit{[](double) { return 0.0; }, [](double) { return 0.0; }};
  s.identically_zero = true;
  s.name = "zero";
  return s;
}

FluxSpec FluxSpec::linear(double speed) {
  FluxSpec s;
  s.f = [speed](double u) { return speed * u; };
  s.f_prime = [speed](double) { return speed; };
  s.lipschitz_bound_hint = std::abs(speed);
  if (speed >= 0.0) {
    s.closed_form_split = FluxSplit{[speed](double u) { return speed * u; }, [](double) { return 0.0; }};
  } else {
    s.closed_form_split = FluxSplit{[](double) { return 0.0; }, [speed](double u) { return speed * u; }};
  }
  s.identically_zero = speed == 0.0;
  s.name = "linear";
  return s;
}

FluxSpec FluxSpec::burgers() {
  FluxSpec s;
  s.f = [](double u) { return 0.5 * u * u; };
  s.f_prime = [](double u) { return u; };
  s.closed_form_split = FluxSplit{
      [](double u) {
        const double p = std::max(u, 0.0);
        return 0.5 * p * p;
      },
      [](double u) {
        const double m = std::min(u, 0.0);
        return 0.5 * m * m;
      }};
  s.name = "burgers";
  return s;
}

FluxSpec FluxSpec::sine() {
  FluxSpec s;
  s.f = [](double u) { return std::sin(u); };
  s.f_prime = [](double u) { return std::cos(u); };
  s.lipschitz_bound_hint = 1.0;
  s.name = "sine";
  return s;
}

DiffusionSpec DiffusionSpec::zero() {
  DiffusionSpec d;
  d.a = [](double) { return 0.0; };
  d.a_prime = [](double) { return 0.0; };
  d.identically_zero = true;
  d.name = "zero";
  return d;
}

DiffusionSpec DiffusionSpec::linear(double coef) {
  if (coef < 0.0) throw std::invalid_argument("DiffusionSpec::linear: coefficient must be >= 0");
  DiffusionSpec d;
  d.a = [coef](double u) { return coef * u; };
  d.a_prime = [coef](double) { return coef; };
  d.identically_zero = coef == 0.0;
  d.name = "linear";
  return d;
}

DiffusionSpec DiffusionSpec::positive_part_quadratic() {
  DiffusionSpec d;
  d.a = [](double u) {
    const double p = std::max(u, 0.0);
    return 0.5 * p * p;
  };
  d.a_prime = [](double u) { return std::max(u, 0.0); };
  d.name = "positive-part-quadratic";
  return d;
}

DataRange data_range(const GridFunction& u) {
  const auto [lo, hi] = std::minmax_element(u.values().begin(), u.values().end());
  return {*lo, *hi};
}

namespace {

template <typename Fn>
void for_each_sample(DataRange range, std::size_t samples, Fn&& fn) {
  if (samples < 2 || range.hi == range.lo) {
    fn(range.lo);
    if (range.hi != range.lo) fn(range.hi);
    return;
  }
  for (std::size_t i = 0; i < samples; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(samples - 1);
    fn(i + 1 == samples ? range.hi : range.lo + s * (range.hi - range.lo));
  }
}

}  // namespace

double flux_derivative_mismatch(const FluxSpec& flux, DataRange range, double h,
                                std::size_t samples) {
  double worst = 0.0;
  for_each_sample(range, samples, [&](double u) {
    const double fd = (flux.f(u + h) - flux.f(u - h)) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - flux.f_prime(u)));
  });
  return worst;
}

double flux_split_mismatch(const FluxSpec& flux, DataRange range, std::size_t samples) {
  if (!flux.closed_form_split) return 0.0;
  double worst = 0.0;
  for_each_sample(range, samples, [&](double u) {
    const double f = flux.f(u);
    const double sum = flux.closed_form_split->plus(u) + flux.closed_form_split->minus(u);
    worst = std::max(worst, std::abs(sum - f) / std::max(1.0, std::abs(f)));
  });
  return worst;
}

void check_diffusion_monotone(const DiffusionSpec& diffusion, DataRange range, std::size_t samples) {
  bool first = true;
  double prev_u = 0.0;
  double prev_a = 0.0;
  for_each_sample(range, samples, [&](double u) {
    if (diffusion.a_prime(u) < 0.0) {
      throw std::invalid_argument("diffusion: A'(" + std::to_string(u) + ") < 0");
    }
    const double a = diffusion.a(u);
    if (!first && a < prev_a) {
      throw std::invalid_argument("diffusion: A decreases between " + std::to_string(prev_u) +
                                  " and " + std::to_string(u));
    }
    first = false;
    prev_u = u;
    prev_a = a;
  });
}

double max_abs_flux_derivative(const FluxSpec& flux, DataRange range, std::size_t samples) {
  if (flux.identically_zero) return 0.0;
  if (flux.lipschitz_bound_hint) return *flux.lipschitz_bound_hint;
  double m = 0.0;
  for_each_sample(range, samples, [&](double u) { m = std::max(m, std::abs(flux.f_prime(u))); });
  return m;
}

double max_diffusion_derivative(const DiffusionSpec& diffusion, DataRange range, std::size_t samples) {
  if (diffusion.identically_zero) return 0.0;
  double m = 0.0;
  for_each_sample(range, samples, [&](double u) { m = std::max(m, diffusion.a_prime(u)); });
  return m;
}

void Problem::validate() const {
  if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw std::invalid_argument("Problem: t_final must be nonnegative and finite");
  }
  if (!u0) throw std::invalid_argument("Problem: missing initial datum");
  if (!flux.f || !flux.f_prime) throw std::invalid_argument("Problem: incomplete flux");
  if (!diffusion.a || !diffusion.a_prime) throw std::invalid_argument("Problem: incomplete diffusion");
  std::vector<double> xs = grid.centers();
  xs.push_back(grid.x_left());
  xs.push_back(grid.x_right());
  for (double x : xs) {
    if (!std::isfinite(u0(x))) {
      throw std::invalid_argument("Problem: u0 not finite at x=" + std::to_string(x));
    }
  }
}

Problem Problem::with_grid(const Grid1D& g) const {
  Problem p = *this;
  p.grid = g;
  return p;
}

Problem Problem::with_diffusion(DiffusionSpec d) const {
  Problem p = *this;
  p.diffusion = std::move(d);
  return p;
}

}  // namespace degen
