#pragma once

#include <optional>
#include <string>

#include "degen/grid.hpp"

namespace degen {

/// Closed-form monotone splitting f = f_plus + f_minus.
struct FluxSplit {
  ScalarFn plus;
  ScalarFn minus;
};

/// Convective flux f together with f'. `identically_zero` lets the scheme
/// skip the convective stencil entirely.
struct FluxSpec {
  ScalarFn f;
  ScalarFn f_prime;
  std::optional<double> lipschitz_bound_hint;
  std::optional<FluxSplit> closed_form_split;
  bool identically_zero = false;
  std::string name = "custom";

  static FluxSpec zero();
  /// f(u) = speed * u.
  static FluxSpec linear(double speed);
  /// f(u) = u^2 / 2.
  static FluxSpec burgers();
  /// f(u) = sin(u), with no closed-form split (exercises quadrature).
  static FluxSpec sine();
};

/// Nondecreasing diffusion function A with A' >= 0. `eta` records any
/// linear regularization already folded into a and a_prime.
struct DiffusionSpec {
  ScalarFn a;
  ScalarFn a_prime;
  double eta = 0.0;
  /// A and A' without the eta term; set whenever eta > 0.
  ScalarFn a_base;
  ScalarFn a_prime_base;
  bool identically_zero = false;
  std::string name = "custom";

  static DiffusionSpec zero();
  /// A(u) = coef * u.
  static DiffusionSpec linear(double coef);
  /// A(u) = (max(u, 0))^2 / 2, degenerate for u <= 0.
  static DiffusionSpec positive_part_quadratic();
};

/// Closed interval of state values.
struct DataRange {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double u, double slack = 0.0) const { return u >= lo - slack && u <= hi + slack; }
  DataRange widened(double margin) const { return {lo - margin, hi + margin}; }
};

DataRange data_range(const GridFunction& u);

/// Largest central-difference mismatch |(f(u+h) - f(u-h))/2h - f'(u)| over
/// `samples` equispaced points of `range`.
double flux_derivative_mismatch(const FluxSpec& flux, DataRange range, double h,
                                std::size_t samples = 101);

/// Largest relative |f_plus + f_minus - f| of a closed-form split over the
/// sampled range. Zero if no split is given.
double flux_split_mismatch(const FluxSpec& flux, DataRange range, std::size_t samples = 101);

/// Throws std::invalid_argument if A' < 0 or A decreases anywhere on the
/// sampled range.
void check_diffusion_monotone(const DiffusionSpec& diffusion, DataRange range,
                              std::size_t samples = 101);

/// max |f'| and max A' sampled on a range (endpoints included).
double max_abs_flux_derivative(const FluxSpec& flux, DataRange range, std::size_t samples = 1001);
double max_diffusion_derivative(const DiffusionSpec& diffusion, DataRange range,
                                std::size_t samples = 1001);

struct Problem {
  FluxSpec flux;
  DiffusionSpec diffusion;
  BoundaryCondition bc = BoundaryCondition::Extrapolate;
  ScalarFn u0;
  Grid1D grid;
  double t_final;

  /// Checks t_final > 0 and that u0 is finite at the domain endpoints and
  /// cell centers.
  void validate() const;

  Problem with_grid(const Grid1D& g) const;
  Problem with_diffusion(DiffusionSpec d) const;
};

}  // namespace degen
