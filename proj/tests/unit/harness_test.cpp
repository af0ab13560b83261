#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "harness/commands.hpp"
#include "harness/config.hpp"
#include "harness/io.hpp"

namespace degen::harness {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("degen_harness_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Config, EveryPresetRoundTrips) {
  for (const char* name : {"constant", "heat", "table1", "table1-n25", "burgers-riemann", "corollary", "eta-gap"}) {
    const RunConfig c = preset(name);
    EXPECT_NO_THROW(validate(c)) << name;
    EXPECT_EQ(parse_config(serialize(c)), c) << name;
  }
}

TEST(Config, RandomizedRoundTrip) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1e3, 1e3);
  for (int trial = 0; trial < 100; ++trial) {
    RunConfig c = preset("heat");
    c.x_left = dist(rng);
    c.x_right = c.x_left + std::abs(dist(rng)) + 1e-3;
    c.t_final = std::abs(dist(rng)) + 0.1;
    c.eta = std::abs(dist(rng)) * 1e-7;
    c.u0_params = {dist(rng), dist(rng) * 1e-9, 1.0 / 3.0};
    c.snapshot_times = {0.0, c.t_final / 7.0, c.t_final};
    c.etas = {0.1, 1.0 / 30.0};
    c.resolutions = {17, 34};
    EXPECT_EQ(parse_config(serialize(c)), c);
  }
}

TEST(Config, UnknownNamesAreRejected) {
  EXPECT_THROW(preset("nonsense"), std::invalid_argument);
  EXPECT_THROW(preset("table1-n"), std::invalid_argument);
  EXPECT_THROW(preset("table1-nx"), std::invalid_argument);
  EXPECT_THROW(preset("table1-n0"), std::invalid_argument);
  RunConfig c = preset("heat");
  c.flux = "cubic";
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = preset("heat");
  c.bc = "dirichlet";
  EXPECT_THROW(validate(c), std::invalid_argument);
  c = preset("heat");
  c.cfl_safety = 2.0;
  EXPECT_THROW(validate(c), std::invalid_argument);
  EXPECT_THROW(parse_config("{not json"), std::exception);
}

TEST(Config, MakeProblemFollowsConfig) {
  const Problem p = make_problem(preset("table1-n25"));
  EXPECT_EQ(p.grid.n_cells(), 25u);
  EXPECT_EQ(p.bc, BoundaryCondition::ZeroDiffusiveFlux);
  EXPECT_TRUE(p.flux.identically_zero);
  EXPECT_DOUBLE_EQ(p.u0(1.0), std::sin(1.0));
  EXPECT_EQ(p.diffusion.a(-0.5), 0.0);

  RunConfig c = preset("burgers-riemann");
  c.eta = 0.01;
  const Problem q = make_problem(c);
  EXPECT_DOUBLE_EQ(q.diffusion.a(2.0), 0.02);
  EXPECT_EQ(q.u0(-0.1), 1.0);
  EXPECT_EQ(q.u0(0.1), 0.0);
  const ConeSpec cone = make_cone(c);
  EXPECT_EQ(cone.L, 1.5);
  EXPECT_EQ(cone.M, 1.1);

  RunConfig d = preset("heat");
  d.snapshot_times.clear();
  EXPECT_EQ(snapshot_times(d), std::vector<double>{d.t_final});
}

TEST(Io, FormatDoubleRoundTrips) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    const double v = dist(rng) * std::pow(10.0, (i % 40) - 20);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(Io, SnapshotsRoundTripExactly) {
  const fs::path dir = scratch_dir("snapshots");
  const Grid1D g(-1.0, 2.0, 13);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<GridFunction> snaps;
  for (double t : {0.0, 1.0 / 3.0}) {
    std::vector<double> v(13);
    for (auto& x : v) x = dist(rng);
    snaps.emplace_back(g, v, t);
  }
  write_snapshots(dir, snaps);
  const auto back = read_snapshots(dir, g);
  ASSERT_EQ(back.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(back[k].time(), snaps[k].time());
    for (std::size_t j = 0; j < 13; ++j) EXPECT_EQ(back[k][j], snaps[k][j]);
  }
  EXPECT_THROW(read_snapshots(dir, Grid1D(-1.0, 2.0, 12)), std::exception);
}

TEST(Io, LedgerRoundTripDropsFluxFields) {
  const fs::path dir = scratch_dir("ledger");
  const std::vector<LedgerEntry> ledger{{0.0, 0.0, -1.0, 1.0, 4.0, 0.1, 2.0, 3.0},
                                        {0.01, 0.01, -0.9, 0.9, 3.5, 0.1, 1.9, 2.9}};
  write_ledger_csv(dir / "ledger.csv", ledger);
  const auto back = read_ledger_csv(dir / "ledger.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].t, 0.01);
  EXPECT_EQ(back[1].tv, 3.5);
  EXPECT_EQ(back[0].umin, -1.0);
  EXPECT_TRUE(std::isnan(back[0].flux_tv));
  EXPECT_TRUE(std::isnan(back[0].flux_linf));
  EXPECT_EQ(read_text(dir / "ledger.csv").substr(0, 22), "t,dt,umin,umax,tv,mass");
}

TEST(Io, ErrorReportCsv) {
  const fs::path dir = scratch_dir("report");
  const std::vector<std::pair<std::size_t, double>> runs{{25, 4.0}, {50, 2.0}};
  write_error_report_csv(dir / "t.csv", convergence_table(runs), {0.2, 0.1});
  EXPECT_EQ(read_text(dir / "t.csv"), "n_cells,dx,error,rate\n25,0.20000000000000001,4,\n50,0.10000000000000001,2,1\n");
}

TEST(Io, OutputDirResolution) {
  EXPECT_EQ(resolve_output_dir("/x/y", "heat"), fs::path("/x/y"));
  ::setenv("DEGEN_OUTPUT_ROOT", "/tmp/root", 1);
  EXPECT_EQ(resolve_output_dir("", "heat"), fs::path("/tmp/root/heat"));
  ::unsetenv("DEGEN_OUTPUT_ROOT");
  EXPECT_EQ(resolve_output_dir("", "heat"), fs::path("degen-out/heat"));
}

TEST(Commands, RunSingleThenReaudit) {
  const fs::path dir = scratch_dir("run");
  RunConfig c = preset("burgers-riemann");
  c.n_cells = 80;
  const SingleRunResult r = run_single(c, dir);
  EXPECT_TRUE(r.invariants.all_passed()) << format_invariant_report(r.invariants);
  for (const char* f : {"config.json", "ledger.csv", "snapshots.csv", "snapshot_000.csv", "snapshot_001.csv", "invariants.json"}) {
    EXPECT_TRUE(fs::exists(dir / f)) << f;
  }
  const InvariantReport again = check_invariants_dir(dir);
  EXPECT_TRUE(again.all_passed()) << format_invariant_report(again);
  EXPECT_TRUE(again.find("flux_tv")->checked);

  // Rewrite the final snapshot with an extra oscillation: TV must fail.
  GridFunction last = read_snapshots(dir, make_problem(c).grid).back();
  std::vector<double> v(last.values().begin(), last.values().end());
  v[40] += 0.5;
  write_snapshot_csv(dir / "snapshot_001.csv", GridFunction(last.grid(), v, last.time()));
  EXPECT_FALSE(check_invariants_dir(dir).all_passed());
}

TEST(Commands, InvariantJsonAndText) {
  InvariantReport r;
  r.checks.push_back({"tv", true, false, 0.5, 1e-10});
  r.checks.push_back({"mass", false, true, 0.0, 0.0});
  const auto j = nlohmann::json::parse(invariant_report_json(r));
  EXPECT_FALSE(j["all_passed"].get<bool>());
  EXPECT_EQ(j["checks"].size(), 2u);
  const std::string text = format_invariant_report(r);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
  EXPECT_NE(text.find("n/a"), std::string::npos);
}

}  // namespace
}  // namespace degen::harness
