#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace degen {

/// Uniform 1D mesh on [x_left, x_right] with n_cells cells.
///
/// Cell j has center x_j = x_left + (j + 1/2) dx and occupies the
/// right-closed interval (x_j - dx/2, x_j + dx/2].
class Grid1D {
 public:
  Grid1D(double x_left, double x_right, std::size_t n_cells);

  double x_left() const { return x_left_; }
  double x_right() const { return x_right_; }
  std::size_t n_cells() const { return n_cells_; }
  double dx() const { return dx_; }
  double width() const { return x_right_ - x_left_; }

  double center(std::size_t j) const {
    return x_left_ + (static_cast<double>(j) + 0.5) * dx_;
  }
  double left_edge(std::size_t j) const {
    return x_left_ + static_cast<double>(j) * dx_;
  }
  double right_edge(std::size_t j) const {
    return x_left_ + static_cast<double>(j + 1) * dx_;
  }
  std::vector<double> centers() const;

  /// True when `fine` covers the same domain with an integer multiple of
  /// this grid's cells.
  bool nests(const Grid1D& fine) const;

  bool operator==(const Grid1D&) const = default;

 private:
  double x_left_;
  double x_right_;
  std::size_t n_cells_;
  double dx_;
};

/// Cell values on a grid at a given time. Immutable once built; every
/// value is finite.
class GridFunction {
 public:
  GridFunction(Grid1D grid, std::vector<double> values, double time = 0.0);

  const Grid1D& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double time() const { return time_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }

  GridFunction with_time(double t) const;

 private:
  Grid1D grid_;
  std::vector<double> values_;
  double time_;
};

enum class BoundaryCondition {
  ZeroDiffusiveFlux,  // mirror: ghost u equals the adjacent interior u
  Periodic,
  Extrapolate,        // copy boundary cell into ghost
};

std::string to_string(BoundaryCondition bc);
BoundaryCondition parse_boundary_condition(std::string_view name);

/// Interior values with one ghost cell on each side. Indices run over
/// [-1, n]; -1 and n are ghosts.
class PaddedValues {
 public:
  PaddedValues() = default;
  PaddedValues(std::span<const double> interior, BoundaryCondition bc);

  std::size_t n() const { return data_.size() - 2; }
  double operator[](std::ptrdiff_t j) const { return data_[static_cast<std::size_t>(j + 1)]; }
  double& operator[](std::ptrdiff_t j) { return data_[static_cast<std::size_t>(j + 1)]; }
  double at(std::ptrdiff_t j) const;

  std::span<const double> interior() const { return {data_.data() + 1, n()}; }
  std::span<double> interior() { return {data_.data() + 1, n()}; }
  std::span<const double> padded() const { return data_; }
  std::span<double> padded() { return data_; }

  void fill_ghosts(BoundaryCondition bc);

  bool operator==(const PaddedValues&) const = default;

 private:
  std::vector<double> data_;
};

/// (v_{j+1} - v_j) / dx for j in [-1, n-1].
double d_plus(const PaddedValues& v, std::ptrdiff_t j, double dx);
/// (v_j - v_{j-1}) / dx for j in [0, n].
double d_minus(const PaddedValues& v, std::ptrdiff_t j, double dx);

using ScalarFn = std::function<double(double)>;

/// Cell averages of u0 by composite Gauss-Legendre quadrature with
/// `quad_points` nodes per cell.
GridFunction cell_average_init(const ScalarFn& u0, const Grid1D& grid,
                               std::size_t quad_points = 4);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(std::size_t n_points);

/// Piecewise linear interpolant through the cell-center values. Queries
/// outside [x_0, x_{n-1}] clamp to the nearest end value.
double interp_linear(const GridFunction& v, double x);

/// Value of the cell whose right-closed interval contains x. The first
/// cell also owns x_left itself.
double eval_piecewise_constant(const GridFunction& v, double x);

}  // namespace degen
