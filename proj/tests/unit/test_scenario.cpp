#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qwit/errors.hpp"
#include "qwit/scenario.hpp"

using namespace qwit;

namespace {

const char* kHeisenbergConfig = R"({
  "name": "unit",
  "comment": "ignored",
  "model": {"family": "heisenberg", "L": 4, "W": 1.0},
  "state": {"type": "gibbs"},
  "bipartition": {"L_A": 2},
  "rotation": {"kind": "local_x"},
  "sweep": {"parameter": "beta", "values": [0.1, 1.0, 10.0]}
})";

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("qwit_unit_" + name);
}

}  // namespace

TEST(Config, ParsesBasicScenario) {
  const Scenario s = parse_scenario(kHeisenbergConfig);
  EXPECT_EQ(s.name, "unit");
  EXPECT_EQ(s.model.family, ModelFamily::Heisenberg);
  EXPECT_EQ(s.model.L, 4);
  EXPECT_DOUBLE_EQ(s.model.W, 1.0);
  EXPECT_EQ(s.sites_a_or_default(), 2);
  EXPECT_EQ(s.sweep.parameter, "beta");
  EXPECT_EQ(s.sweep.values, (std::vector<double>{0.1, 1.0, 10.0}));
  EXPECT_EQ(s.outputs, kWitnessColumns);
}

TEST(Config, RoundTripsThroughJson) {
  const Scenario s = parse_scenario(kHeisenbergConfig);
  const Scenario t = parse_scenario(scenario_to_json(s));
  EXPECT_EQ(t.model.L, s.model.L);
  EXPECT_EQ(t.sweep.values, s.sweep.values);
  EXPECT_EQ(scenario_to_json(t), scenario_to_json(s));
}

TEST(Config, Grids) {
  const Scenario lin = parse_scenario(R"({"model": {"family": "annni", "L": 4},
    "sweep": {"parameter": "h", "start": 0.1, "stop": 0.5, "step": 0.1}})");
  ASSERT_EQ(lin.sweep.values.size(), 5u);
  EXPECT_NEAR(lin.sweep.values.back(), 0.5, 1e-12);
  const Scenario lg = parse_scenario(R"({"model": {"family": "heisenberg", "L": 4},
    "sweep": {"parameter": "beta", "log10": {"start": -2, "stop": 1, "per_decade": 2}}})");
  ASSERT_EQ(lg.sweep.values.size(), 7u);
  EXPECT_NEAR(lg.sweep.values.front(), 0.01, 1e-15);
  EXPECT_NEAR(lg.sweep.values.back(), 10.0, 1e-12);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_scenario("{not json"), InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "heisenberg", "L": 4}})"), InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "heisenberg", "L": 4, "typo": 1},
    "sweep": {"parameter": "beta", "values": [1]}})"),
               InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "foo", "L": 4},
    "sweep": {"parameter": "beta", "values": [1]}})"),
               InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "heisenberg", "L": 4},
    "sweep": {"parameter": "beta", "values": [1, 1]}})"),
               InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "heisenberg", "L": 4},
    "bipartition": {"L_A": 4}, "sweep": {"parameter": "beta", "values": [1]}})"),
               InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "heisenberg", "L": 4},
    "outputs": ["C3"], "sweep": {"parameter": "beta", "values": [1]}})"),
               InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "pxp", "L": 4},
    "state": {"type": "lindblad", "gamma": 0.1}, "sweep": {"parameter": "time", "values": [0, 1]}})"),
               InvalidArgument);
  EXPECT_THROW(parse_scenario(R"({"model": {"family": "annni", "L": 4, "sector": 0},
    "sweep": {"parameter": "beta", "values": [1]}})"),
               InvalidArgument);
  EXPECT_NO_THROW(parse_scenario(R"({"model": {"family": "heisenberg", "L": 4}})", false));
}

TEST(Caps, RefusesLargeWorkloads) {
  Scenario s = parse_scenario(kHeisenbergConfig);
  s.model.L = 11;
  EXPECT_THROW(check_caps(s, {}), CapExceeded);
  s.model.sector = 1;
  EXPECT_NO_THROW(check_caps(s, {}));
  s.model.sector.reset();
  s.model.L = 13;
  EXPECT_THROW(check_caps(s, {}), CapExceeded);

  std::vector<std::string> warnings;
  RunOptions opt;
  opt.cap_override = true;
  opt.warn = [&](const std::string& w) { warnings.push_back(w); };
  s.model.L = 11;
  EXPECT_NO_THROW(check_caps(s, opt));
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Run, BetaSweepBehaviour) {
  const Scenario s = parse_scenario(kHeisenbergConfig);
  const SweepResult r = run_scenario(s);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.parameter, "beta");
  EXPECT_GT(r.rows[2].negativity, r.rows[0].negativity);
  for (const auto& row : r.rows) {
    EXPECT_TRUE(std::isfinite(row.C1));
    EXPECT_TRUE(std::isfinite(row.C2));
    EXPECT_GE(row.negativity, 0.0);
  }
}

TEST(Run, IndependentOfWorkerCount) {
  Scenario s = parse_scenario(R"({"model": {"family": "annni", "L": 4, "kappa": 0.2},
    "state": {"type": "gibbs", "beta": 3.0},
    "sweep": {"parameter": "h", "start": 0.2, "stop": 1.6, "step": 0.2}})");
  RunOptions one, four;
  four.workers = 4;
  const SweepResult a = run_scenario(s, one);
  const SweepResult b = run_scenario(s, four);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].C1, b.rows[i].C1);
    EXPECT_EQ(a.rows[i].C2, b.rows[i].C2);
    EXPECT_EQ(a.rows[i].negativity, b.rows[i].negativity);
  }
}

TEST(Run, LindbladDephasingKeepsTrace) {
  const Scenario s = parse_scenario(R"({"model": {"family": "heisenberg", "L": 4, "W": 1.0},
    "state": {"type": "lindblad", "gamma": 0.1, "dt": 0.01},
    "sweep": {"parameter": "time", "values": [0, 0.5, 1.0]}})");
  const SweepResult r = run_scenario(s);
  ASSERT_EQ(r.rows.size(), 3u);
  // The Neel state is a product state.
  EXPECT_NEAR(r.rows[0].negativity, 0.0, 1e-12);
  EXPECT_NEAR(r.rows[0].C1, 0.0, 1e-12);
  EXPECT_GT(r.rows[1].negativity, 0.0);
}

TEST(Csv, HeaderAndFlaggedFields) {
  Scenario s = parse_scenario(kHeisenbergConfig);
  s.sweep.values = {1.0};
  SweepResult r{"beta", {1.0}, {WitnessResult{0.5, -0.25, std::nullopt, 1.0, std::nullopt, 0.125}}};
  std::ostringstream out;
  write_csv(out, s, r);
  std::istringstream in(out.str());
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_GE(lines.size(), 2u);
  EXPECT_EQ(lines[lines.size() - 2], "beta,C1,C2,pearson_O,pearson_Oprime,maccone_lhs,negativity");
  EXPECT_EQ(lines.back(), "1,0.5,-0.25,,1,,0.125");
  for (std::size_t i = 0; i + 2 < lines.size(); ++i) EXPECT_EQ(lines[i].rfind("# ", 0), 0u);
}

TEST(Files, AtomicWriteAndStateReader) {
  const auto path = temp_path("state.txt");
  write_file_atomic(path.string(), "2\n0.5 0\n0 0.5\n0 -0.5\n0.5 0\n");
  const DensityMatrix rho = read_state_file(path.string());
  EXPECT_EQ(rho.dim(), 2);
  EXPECT_NEAR(rho.matrix()(0, 1).imag(), 0.5, 1e-15);
  EXPECT_FALSE(std::filesystem::exists(path.string() + ".tmp"));

  write_file_atomic(path.string(), "2\n1 0\n0 0\n0 0\n");
  EXPECT_THROW(read_state_file(path.string()), InvalidArgument);
  write_file_atomic(path.string(), "2\n1 0\n0 0\n0 0\n-1 0\n");
  EXPECT_THROW(read_state_file(path.string()), InvalidArgument);
  std::filesystem::remove(path);
  EXPECT_THROW(read_state_file(path.string()), InvalidArgument);
}

TEST(Thresholds, SmallMap) {
  const ThresholdRequest req = parse_threshold_request(R"({
    "model": {"family": "annni", "L": 4, "kappa": 0.0},
    "thresholds": {"beta": {"values": [0.1, 1.0, 10.0]}, "h": {"values": [0.5, 1.0, 1.5]},
                   "level": 1e-4}})");
  const ThresholdMap m = threshold_map(req.base, req.beta_grid, req.h_grid, req.level);
  EXPECT_EQ(m.c2_grid.rows(), 3);
  EXPECT_EQ(m.c2_grid.cols(), 3);
  ASSERT_EQ(m.c2_threshold_per_beta.size(), 3u);
  for (Index b = 0; b < 3; ++b) {
    double expected = 0.0;
    for (Index h = 0; h < 3; ++h)
      if (m.n_grid(b, h) < m.level) expected = std::max(expected, std::abs(m.c2_grid(b, h)));
    EXPECT_EQ(m.c2_threshold_per_beta[b], expected);
  }
  EXPECT_NEAR(m.mean_c2_threshold(),
              (m.c2_threshold_per_beta[0] + m.c2_threshold_per_beta[1] + m.c2_threshold_per_beta[2]) / 3.0,
              1e-15);
  EXPECT_NE(threshold_map_json(m).find("mean_C2_threshold"), std::string::npos);

  Scenario heis = parse_scenario(kHeisenbergConfig);
  EXPECT_THROW(threshold_map(heis, {1.0}, {1.0}), InvalidArgument);
}

TEST(Parallel, RethrowsLowestFailure) {
  std::vector<int> hits(10, 0);
  EXPECT_THROW(parallel_for(10, 3,
                            [&](std::size_t i) {
                              hits[i] = 1;
                              if (i == 4 || i == 7) throw InvalidArgument(std::to_string(i));
                            }),
               InvalidArgument);
  try {
    parallel_for(10, 3, [](std::size_t i) {
      if (i == 4 || i == 7) throw InvalidArgument(std::to_string(i));
    });
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "4");
  }
}
