#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "degen/problem.hpp"

namespace degen {

enum class SplitMode { ClosedForm, Quadrature };

struct EOFluxOptions {
  /// Target absolute accuracy of the adaptive Simpson integrals.
  double quad_tolerance = 1e-10;
  /// Recursion limit per integral. Hitting it means f' varies faster than
  /// the finest subinterval and raises a warning.
  int quad_max_depth = 40;
  /// Lattice spacing for the optional f_plus/f_minus table. Off when unset.
  std::optional<double> cache_spacing;
};

/// Engquist-Osher numerical flux F(u, v) = f_plus(u) + f_minus(v) with
///   f_plus(u)  = f(0) + int_0^u max(f'(s), 0) ds
///   f_minus(u) =        int_0^u min(f'(s), 0) ds.
///
/// A closed-form split on the FluxSpec takes precedence. Otherwise the
/// integrals are computed by adaptive Simpson and `range` bounds the
/// admissible arguments. Immutable after construction.
class EOFlux {
 public:
  explicit EOFlux(FluxSpec spec, DataRange range = {-1.0, 1.0}, EOFluxOptions options = {});

  double f_plus(double u) const;
  double f_minus(double u) const;
  double operator()(double u_left, double u_right) const { return f_plus(u_left) + f_minus(u_right); }

  SplitMode mode() const { return mode_; }
  bool cached() const { return !cache_plus_.empty(); }
  bool identically_zero() const { return spec_.identically_zero; }
  const FluxSpec& spec() const { return spec_; }
  const DataRange& range() const { return range_; }

  /// Number of probe integrals over the declared range that hit the
  /// recursion limit during construction. Nonzero means f' oscillates
  /// faster than the finest Simpson panel.
  std::size_t depth_warnings() const { return depth_warnings_; }

 private:
  double integrate_part(double a, double b, bool positive, std::size_t* depth_hits) const;
  void check_range(double u) const;
  double lookup(const std::vector<double>& table, double u) const;

  FluxSpec spec_;
  DataRange range_;
  EOFluxOptions options_;
  SplitMode mode_;
  double f_at_zero_ = 0.0;
  double cache_h_ = 0.0;
  std::vector<double> cache_plus_;
  std::vector<double> cache_minus_;
  std::size_t depth_warnings_ = 0;
};

}  // namespace degen
