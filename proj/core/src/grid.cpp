#include "degen/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "degen/errors.hpp"

namespace degen {

Grid1D::Grid1D(double x_left, double x_right, std::size_t n_cells)
    : x_left_(x_left), x_right_(x_right), n_cells_(n_cells), dx_(0.0) {
  if (!std::isfinite(x_left) || !std::isfinite(x_right) || !(x_left < x_right)) {
    throw std::invalid_argument("Grid1D: need finite x_left < x_right");
  }
  if (n_cells == 0) {
    throw std::invalid_argument("Grid1D: n_cells must be positive");
  }
  dx_ = (x_right - x_left) / static_cast<double>(n_cells);
}

std::vector<double> Grid1D::centers() const {
  std::vector<double> x(n_cells_);
  for (std::size_t j = 0; j < n_cells_; ++j) x[j] = center(j);
  return x;
}

bool Grid1D::nests(const Grid1D& fine) const {
  if (fine.x_left_ != x_left_ || fine.x_right_ != x_right_) return false;
  return fine.n_cells_ >= n_cells_ && fine.n_cells_ % n_cells_ == 0;
}

GridFunction::GridFunction(Grid1D grid, std::vector<double> values, double time)
    : grid_(grid), values_(std::move(values)), time_(time) {
  if (values_.size() != grid_.n_cells()) {
    throw std::invalid_argument("GridFunction: values length " +
                                std::to_string(values_.size()) +
                                " does not match n_cells " +
                                std::to_string(grid_.n_cells()));
  }
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (!std::isfinite(values_[j])) {
      throw NonFiniteError("GridFunction: non-finite value in cell " + std::to_string(j),
                           j, time);
    }
  }
}

GridFunction GridFunction::with_time(double t) const { return {grid_, values_, t}; }

std::string to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::ZeroDiffusiveFlux: return "zero-diffusive-flux";
    case BoundaryCondition::Periodic: return "periodic";
    case BoundaryCondition::Extrapolate: return "extrapolate";
  }
  return "unknown";
}

BoundaryCondition parse_boundary_condition(std::string_view name) {
  if (name == "zero-diffusive-flux") return BoundaryCondition::ZeroDiffusiveFlux;
  if (name == "periodic") return BoundaryCondition::Periodic;
  if (name == "extrapolate") return BoundaryCondition::Extrapolate;
  throw std::invalid_argument("unknown boundary condition '" + std::string(name) + "'");
}

PaddedValues::PaddedValues(std::span<const double> interior, BoundaryCondition bc)
    : data_(interior.size() + 2, 0.0) {
  if (interior.empty()) throw std::invalid_argument("PaddedValues: empty interior");
  std::copy(interior.begin(), interior.end(), data_.begin() + 1);
  fill_ghosts(bc);
}

double PaddedValues::at(std::ptrdiff_t j) const {
  if (j < -1 || j > static_cast<std::ptrdiff_t>(n())) {
    throw std::out_of_range("PaddedValues: index " + std::to_string(j) +
                            " outside [-1, " + std::to_string(n()) + "]");
  }
  return (*this)[j];
}

void PaddedValues::fill_ghosts(BoundaryCondition bc) {
  const std::size_t n = this->n();
  switch (bc) {
    case BoundaryCondition::Periodic:
      data_[0] = data_[n];
      data_[n + 1] = data_[1];
      break;
    // A(ghost) = A(interior) for any A when the ghost copies u, so the
    // mirror and the copy coincide.
    case BoundaryCondition::ZeroDiffusiveFlux:
    case BoundaryCondition::Extrapolate:
      data_[0] = data_[1];
      data_[n + 1] = data_[n];
      break;
  }
}

double d_plus(const PaddedValues& v, std::ptrdiff_t j, double dx) {
  if (j < -1 || j + 1 > static_cast<std::ptrdiff_t>(v.n())) {
    throw std::out_of_range("d_plus: index " + std::to_string(j) + " outside padded range");
  }
  return (v[j + 1] - v[j]) / dx;
}

double d_minus(const PaddedValues& v, std::ptrdiff_t j, double dx) {
  if (j < 0 || j > static_cast<std::ptrdiff_t>(v.n())) {
    throw std::out_of_range("d_minus: index " + std::to_string(j) + " outside padded range");
  }
  return (v[j] - v[j - 1]) / dx;
}

GaussRule gauss_legendre(std::size_t n_points) {
  if (n_points == 0) throw std::invalid_argument("gauss_legendre: need at least one node");
  GaussRule rule;
  rule.nodes.resize(n_points);
  rule.weights.resize(n_points);
  const auto n = static_cast<double>(n_points);
  for (std::size_t i = 0; i < (n_points + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n_points; ++k) {
        const auto kd = static_cast<double>(k);
        const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n_points; ++k) {
      const auto kd = static_cast<double>(k);
      const double p2 = ((2.0 * kd - 1.0) * x * p1 - (kd - 1.0) * p0) / kd;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n_points - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n_points - 1 - i] = w;
  }
  if (n_points % 2 == 1) rule.nodes[n_points / 2] = 0.0;
  return rule;
}

GridFunction cell_average_init(const ScalarFn& u0, const Grid1D& grid, std::size_t quad_points) {
  if (quad_points == 0) throw std::invalid_argument("cell_average_init: quad_points must be >= 1");
  const GaussRule rule = gauss_legendre(quad_points);
  const double half = 0.5 * grid.dx();
  std::vector<double> values(grid.n_cells());
  for (std::size_t j = 0; j < grid.n_cells(); ++j) {
    const double xc = grid.center(j);
    double sum = 0.0;
    double first = 0.0;
    bool uniform = true;
    for (std::size_t q = 0; q < quad_points; ++q) {
      const double x = xc + half * rule.nodes[q];
      const double u = u0(x);
      if (!std::isfinite(u)) {
        std::ostringstream msg;
        msg << "cell_average_init: u0 is not finite at x=" << x << " in cell " << j;
        throw NonFiniteError(msg.str(), j, 0.0);
      }
      if (q == 0) first = u;
      uniform = uniform && u == first;
      sum += rule.weights[q] * u;
    }
    // Equal samples average to themselves; skip the rounding of the weights.
    values[j] = uniform ? first : 0.5 * sum;
  }
  return {grid, std::move(values), 0.0};
}

double interp_linear(const GridFunction& v, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("interp_linear: non-finite x");
  const Grid1D& g = v.grid();
  const std::size_t n = g.n_cells();
  if (x <= g.center(0)) return v[0];
  if (x >= g.center(n - 1)) return v[n - 1];
  const double s = (x - g.center(0)) / g.dx();
  auto j = static_cast<std::size_t>(std::floor(s));
  if (j >= n - 1) j = n - 2;
  const double xj = g.center(j);
  if (x == xj) return v[j];
  const double slope = (v[j + 1] - v[j]) / g.dx();
  return v[j] + slope * (x - xj);
}

double eval_piecewise_constant(const GridFunction& v, double x) {
  const Grid1D& g = v.grid();
  if (!(x >= g.x_left() && x <= g.x_right())) {
    throw std::out_of_range("eval_piecewise_constant: x outside domain");
  }
  const std::size_t n = g.n_cells();
  // Right-closed cells: x on edge x_{j+1/2} belongs to cell j.
  const double s = (x - g.x_left()) / g.dx();
  auto j = static_cast<std::ptrdiff_t>(std::ceil(s)) - 1;
  if (j < 0) j = 0;
  if (j >= static_cast<std::ptrdiff_t>(n)) j = static_cast<std::ptrdiff_t>(n) - 1;
  // Guard against rounding in s by checking the cell edges directly.
  auto uj = static_cast<std::size_t>(j);
  while (uj > 0 && x <= g.left_edge(uj)) --uj;
  while (uj + 1 < n && x > g.right_edge(uj)) ++uj;
  return v[uj];
}

}  // namespace degen
