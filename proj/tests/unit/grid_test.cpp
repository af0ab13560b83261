#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "degen/errors.hpp"
#include "degen/grid.hpp"

namespace degen {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(Grid1D, DerivedQuantities) {
  const Grid1D g(0.0, 2.0, 8);
  EXPECT_DOUBLE_EQ(g.dx(), 0.25);
  EXPECT_DOUBLE_EQ(g.center(0), 0.125);
  EXPECT_DOUBLE_EQ(g.center(7), 1.875);
  EXPECT_DOUBLE_EQ(g.left_edge(3), 0.75);
  EXPECT_DOUBLE_EQ(g.right_edge(3), 1.0);
}

TEST(Grid1D, RejectsBadDomains) {
  EXPECT_THROW(Grid1D(1.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(Grid1D(2.0, 1.0, 4), std::invalid_argument);
  EXPECT_THROW(Grid1D(0.0, 1.0, 0), std::invalid_argument);
  EXPECT_THROW(Grid1D(0.0, std::numeric_limits<double>::infinity(), 4), std::invalid_argument);
}

TEST(Grid1D, CentersEquispacedWithinFourUlps) {
  const Grid1D g(-kPi / 2, kPi, 4000);
  const auto x = g.centers();
  // Ulps measured at the scale of the domain coordinates.
  const double scale = std::max({std::abs(g.x_left()), std::abs(g.x_right()), g.x_right() - g.x_left()});
  const double ulp = std::nextafter(scale, INFINITY) - scale;
  for (std::size_t j = 1; j < x.size(); ++j) {
    ASSERT_GT(x[j], x[j - 1]);
    EXPECT_LE(std::abs(x[j] - x[j - 1] - g.dx()), 4 * ulp) << "j=" << j;
  }
}

TEST(GridFunction, RejectsLengthMismatchAndNonFinite) {
  const Grid1D g(0.0, 1.0, 3);
  EXPECT_THROW(GridFunction(g, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(GridFunction(g, {1.0, std::nan(""), 2.0}), NonFiniteError);
  EXPECT_THROW(GridFunction(g, {1.0, INFINITY, 2.0}), NonFiniteError);
}

TEST(CellAverageInit, ConstantIsExact) {
  for (std::size_t q : {1u, 2u, 4u, 7u}) {
    const auto u = cell_average_init([](double) { return 0.3; }, Grid1D(-1.3, 2.9, 17), q);
    for (double v : u.values()) EXPECT_EQ(v, 0.3);
    EXPECT_EQ(u.time(), 0.0);
  }
}

TEST(CellAverageInit, LinearGivesMidpoints) {
  const auto u = cell_average_init([](double x) { return x; }, Grid1D(0.0, 1.0, 4), 2);
  const double expected[] = {0.125, 0.375, 0.625, 0.875};
  for (std::size_t j = 0; j < 4; ++j) EXPECT_NEAR(u[j], expected[j], 1e-15);
}

TEST(CellAverageInit, SineMatchesAnalyticAverages) {
  const Grid1D g(-kPi / 2, kPi, 400);
  const auto u = cell_average_init([](double x) { return std::sin(x); }, g);
  double worst_point = 0.0;
  for (std::size_t j = 0; j < g.n_cells(); ++j) {
    // Oracle: exact cell average of sin.
    const double exact = (std::cos(g.left_edge(j)) - std::cos(g.right_edge(j))) / g.dx();
    EXPECT_NEAR(u[j], exact, 1e-13);
    worst_point = std::max(worst_point, std::abs(u[j] - std::sin(g.center(j))));
  }
  // |cell average - point value| <= dx^2/8 * max|u0''| with max|sin''| = 1.
  EXPECT_LE(worst_point, g.dx() * g.dx() / 8.0);
}

TEST(CellAverageInit, NamesOffendingCell) {
  const Grid1D g(0.0, 1.0, 10);
  try {
    cell_average_init([](double x) { return x > 0.55 && x < 0.6 ? std::nan("") : x; }, g);
    FAIL() << "expected NonFiniteError";
  } catch (const NonFiniteError& e) {
    EXPECT_EQ(e.cell(), 5u);
  }
  EXPECT_THROW(cell_average_init([](double x) { return x; }, g, 0), std::invalid_argument);
}

// L1 distance between the piecewise-constant initial data and a unit step at
// x = 1/3, by fine midpoint sampling.
double step_init_gap(std::size_t n) {
  auto step = [](double x) { return x < 1.0 / 3.0 ? 0.0 : 1.0; };
  const Grid1D g(0.0, 1.0, n);
  const auto u = cell_average_init(step, g, 64);
  const std::size_t samples = 1 << 20;
  double gap = 0.0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double x = (static_cast<double>(s) + 0.5) / samples;
    gap += std::abs(eval_piecewise_constant(u, x) - step(x));
  }
  return gap / samples;
}

TEST(CellAverageInit, StepInitialErrorIsFirstOrder) {
  double prev = step_init_gap(16);
  for (std::size_t n : {32u, 64u, 128u}) {
    const double gap = step_init_gap(n);
    // 1/3 sits at fraction 1/3 or 2/3 of a dyadic cell: gap = (4/9) dx.
    EXPECT_NEAR(gap, 4.0 / 9.0 / static_cast<double>(n), 2e-4 / static_cast<double>(n));
    EXPECT_NEAR(prev / gap, 2.0, 0.02);
    prev = gap;
  }
}

TEST(GaussLegendre, IntegratesPolynomialsExactly) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto rule = gauss_legendre(n);
    for (std::size_t k = 0; k < 2 * n; ++k) {
      double s = 0.0;
      for (std::size_t q = 0; q < n; ++q) s += rule.weights[q] * std::pow(rule.nodes[q], static_cast<double>(k));
      const double exact = k % 2 == 1 ? 0.0 : 2.0 / static_cast<double>(k + 1);
      EXPECT_NEAR(s, exact, 1e-14) << "n=" << n << " k=" << k;
    }
  }
}

TEST(PaddedValues, GhostFillPerBoundaryCondition) {
  const std::vector<double> v{1, 2, 3, 4};
  const PaddedValues periodic(v, BoundaryCondition::Periodic);
  EXPECT_EQ(periodic[-1], 4.0);
  EXPECT_EQ(periodic[4], 1.0);
  const PaddedValues extrap(v, BoundaryCondition::Extrapolate);
  EXPECT_EQ(extrap[-1], 1.0);
  EXPECT_EQ(extrap[4], 4.0);
  EXPECT_EQ(d_plus(extrap, 3, 0.5), 0.0);
  EXPECT_EQ(d_minus(extrap, 0, 0.5), 0.0);
  const PaddedValues mirror(v, BoundaryCondition::ZeroDiffusiveFlux);
  EXPECT_EQ(mirror[-1], 1.0);
  EXPECT_EQ(mirror[4], 4.0);
}

TEST(PaddedValues, GhostFillIsIdempotent) {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Extrapolate, BoundaryCondition::ZeroDiffusiveFlux}) {
    std::vector<double> v(9);
    for (auto& x : v) x = dist(rng);
    PaddedValues once(v, bc);
    PaddedValues twice = once;
    twice.fill_ghosts(bc);
    EXPECT_EQ(once, twice);
  }
}

TEST(DiscreteDerivatives, ConstantAndLinear) {
  const PaddedValues c(std::vector<double>(6, 2.5), BoundaryCondition::Extrapolate);
  for (std::ptrdiff_t j = -1; j < 6; ++j) EXPECT_EQ(d_plus(c, j, 0.1), 0.0);
  for (std::ptrdiff_t j = 0; j <= 6; ++j) EXPECT_EQ(d_minus(c, j, 0.1), 0.0);

  const Grid1D g(0.0, 3.0, 6);  // dx = 0.5
  const PaddedValues lin(g.centers(), BoundaryCondition::Extrapolate);
  for (std::ptrdiff_t j = 0; j < 5; ++j) EXPECT_DOUBLE_EQ(d_plus(lin, j, g.dx()), 1.0);
  for (std::ptrdiff_t j = 1; j < 6; ++j) EXPECT_DOUBLE_EQ(d_minus(lin, j, g.dx()), 1.0);
}

TEST(DiscreteDerivatives, OutOfRangeIsRejected) {
  const PaddedValues v(std::vector<double>{1, 2, 3}, BoundaryCondition::Extrapolate);
  EXPECT_THROW(d_plus(v, 3, 1.0), std::out_of_range);
  EXPECT_THROW(d_plus(v, -2, 1.0), std::out_of_range);
  EXPECT_THROW(d_minus(v, -1, 1.0), std::out_of_range);
  EXPECT_THROW(d_minus(v, 4, 1.0), std::out_of_range);
  EXPECT_THROW(v.at(5), std::out_of_range);
}

TEST(DiscreteDerivatives, SecondDifferenceMatchesDirectFormula) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const double dx = 0.07;
  std::vector<double> raw(20);
  for (auto& x : raw) x = dist(rng);
  const PaddedValues v(raw, BoundaryCondition::Periodic);
  // D^+ v on the padded range, then D^- of that sequence.
  std::vector<double> dp;
  for (std::ptrdiff_t j = -1; j < 20; ++j) dp.push_back(d_plus(v, j, dx));
  for (std::ptrdiff_t j = 0; j < 20; ++j) {
    const double composed = (dp[static_cast<std::size_t>(j + 1)] - dp[static_cast<std::size_t>(j)]) / dx;
    const double direct = (v[j + 1] - 2.0 * v[j] + v[j - 1]) / (dx * dx);
    EXPECT_NEAR(composed, direct, 1e-11 * std::max(1.0, std::abs(direct)));
  }
}

TEST(DiscreteDerivatives, PeriodicSummationByParts) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(trial);
    std::vector<double> a(n), b(n);
    for (auto& x : a) x = dist(rng);
    for (auto& x : b) x = dist(rng);
    const PaddedValues v(a, BoundaryCondition::Periodic);
    const PaddedValues w(b, BoundaryCondition::Periodic);
    const double dx = 0.3;
    double lhs = 0.0, rhs = 0.0, scale = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const auto jj = static_cast<std::ptrdiff_t>(j);
      lhs += d_plus(v, jj, dx) * w[jj];
      rhs -= v[jj] * d_minus(w, jj, dx);
      scale += std::abs(d_plus(v, jj, dx) * w[jj]);
    }
    EXPECT_NEAR(lhs, rhs, 1e-12 * scale);
  }
}

TEST(InterpLinear, NodesMidpointsAndClamping) {
  const Grid1D g(0.0, 1.0, 5);
  const GridFunction v(g, {1.0, -2.0, 0.5, 4.0, 3.0});
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(interp_linear(v, g.center(j)), v[j]);
  for (std::size_t j = 0; j + 1 < 5; ++j) {
    EXPECT_NEAR(interp_linear(v, 0.5 * (g.center(j) + g.center(j + 1))), 0.5 * (v[j] + v[j + 1]), 1e-12);
  }
  EXPECT_EQ(interp_linear(v, -3.0), 1.0);
  EXPECT_EQ(interp_linear(v, 0.05), 1.0);
  EXPECT_EQ(interp_linear(v, 7.0), 3.0);
  EXPECT_THROW(interp_linear(v, std::nan("")), std::invalid_argument);
}

TEST(InterpLinear, QuadraticErrorBound) {
  const Grid1D g(-1.0, 2.0, 300);
  std::vector<double> vals;
  for (double x : g.centers()) vals.push_back(x * x);
  const GridFunction v(g, vals);
  // |interp - g| <= dx^2 max|g''| / 8 with g'' = 2.
  const double bound = g.dx() * g.dx() * 2.0 / 8.0;
  for (int s = 0; s <= 10000; ++s) {
    const double x = g.center(0) + (g.center(299) - g.center(0)) * s / 10000.0;
    EXPECT_LE(std::abs(interp_linear(v, x) - x * x), bound * (1 + 1e-9));
  }
}

TEST(EvalPiecewiseConstant, RightClosedCells) {
  const Grid1D g(0.0, 1.0, 4);
  const GridFunction v(g, {10, 20, 30, 40});
  EXPECT_EQ(eval_piecewise_constant(v, 0.25), 10.0);  // right edge of cell 0
  EXPECT_EQ(eval_piecewise_constant(v, 0.5), 20.0);
  EXPECT_EQ(eval_piecewise_constant(v, 1.0), 40.0);
  EXPECT_EQ(eval_piecewise_constant(v, 0.0), 10.0);
  for (std::size_t j = 0; j < 4; ++j) EXPECT_EQ(eval_piecewise_constant(v, g.center(j)), v[j]);
  EXPECT_THROW(eval_piecewise_constant(v, -0.01), std::out_of_range);
  EXPECT_THROW(eval_piecewise_constant(v, 1.01), std::out_of_range);
}

TEST(EvalPiecewiseConstant, MatchesIndexArithmetic) {
  const Grid1D g(-2.0, 3.0, 37);
  std::vector<double> vals(37);
  for (std::size_t j = 0; j < 37; ++j) vals[j] = static_cast<double>(j);
  const GridFunction v(g, vals);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-2.0, 3.0);
  for (int s = 0; s < 5000; ++s) {
    const double x = dist(rng);
    const double f = std::floor((x - g.x_left()) / g.dx());
    auto j = static_cast<std::size_t>(f);
    // A point exactly on an interior edge belongs to the left cell.
    if (x == g.left_edge(j) && j > 0) --j;
    EXPECT_EQ(eval_piecewise_constant(v, x), vals[std::min<std::size_t>(j, 36)]);
  }
}

TEST(BoundaryCondition, NamesRoundTrip) {
  for (auto bc : {BoundaryCondition::Periodic, BoundaryCondition::Extrapolate, BoundaryCondition::ZeroDiffusiveFlux}) {
    EXPECT_EQ(parse_boundary_condition(to_string(bc)), bc);
  }
  EXPECT_THROW(parse_boundary_condition("dirichlet"), std::invalid_argument);
}

}  // namespace
}  // namespace degen
