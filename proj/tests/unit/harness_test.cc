// Copyright 2026 The throttlesim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "throttlesim/harness.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gtest/gtest.h"
#include "throttlesim/config.h"
#include "throttlesim/report.h"

namespace throttlesim {
namespace {

std::vector<std::pair<double, double>> Curve(double (*f)(double)) {
  std::vector<std::pair<double, double>> points;
  for (int k = 8; k <= 20; ++k) {
    const double horizon = std::ldexp(1.0, k);
    points.emplace_back(horizon, f(horizon));
  }
  return points;
}

TEST(FitSlopeTest, PowerLaws) {
  const SlopeFit root = FitSlope(Curve([](double t) { return 3.0 * std::sqrt(t); }));
  EXPECT_NEAR(root.slope, 0.5, 1e-9);
  EXPECT_NEAR(root.intercept, std::log(3.0), 1e-9);
  EXPECT_NEAR(root.ci_low, 0.5, 1e-9);
  EXPECT_NEAR(root.ci_high, 0.5, 1e-9);
  EXPECT_EQ(root.points_used, 13);
  EXPECT_NEAR(FitSlope(Curve([](double t) { return t; })).slope, 1.0, 1e-9);
  const SlopeFit log_factor =
      FitSlope(Curve([](double t) { return std::sqrt(t * std::log(t)); }));
  EXPECT_GT(log_factor.slope, 0.52);
  EXPECT_LT(log_factor.slope, 0.58);
  EXPECT_LE(log_factor.ci_low, log_factor.slope);
  EXPECT_GE(log_factor.ci_high, log_factor.slope);
}

TEST(FitSlopeTest, ExcludesNonpositiveAndNeedsFourPoints) {
  std::vector<std::pair<double, double>> points = {
      {16, 4}, {64, 8}, {256, -1}, {1024, 32}, {4096, 64}};
  const SlopeFit fit = FitSlope(points);
  EXPECT_EQ(fit.points_used, 4);
  EXPECT_EQ(fit.points_excluded, 1);
  EXPECT_NEAR(fit.slope, 0.5, 1e-9);
  points[0].second = 0.0;
  EXPECT_THROW(FitSlope(points), std::invalid_argument);
}

TEST(FitSlopeTest, BootstrapIsSeeded) {
  auto points = Curve([](double t) { return std::sqrt(t); });
  for (std::size_t i = 0; i < points.size(); ++i) {
    points[i].second *= i % 2 ? 1.3 : 0.8;
  }
  const SlopeFit a = FitSlope(points, 500, 9);
  const SlopeFit b = FitSlope(points, 500, 9);
  EXPECT_EQ(a.ci_low, b.ci_low);
  EXPECT_EQ(a.ci_high, b.ci_high);
  EXPECT_LT(a.ci_low, a.slope);
  EXPECT_GT(a.ci_high, a.slope);
}

TEST(CompetitiveRatioTest, Examples) {
  const std::vector<double> rewards = {1.0, 2.0, 0.5};
  const std::vector<double> hindsight = {2.0, 4.0, 0.0};
  const CompetitiveRatioStats s = CompetitiveRatioCell(rewards, hindsight, 0.5, 10);
  EXPECT_NEAR(s.mean_ratio, 0.5, 1e-15);
  EXPECT_EQ(s.excluded, 1);
  EXPECT_NEAR(s.mean_gap, (0.0 + 0.0 + 0.05) / 3.0, 1e-15);
  const std::vector<double> none = {0.0};
  const CompetitiveRatioStats z = CompetitiveRatioCell(none, none, 0.5, 10);
  EXPECT_TRUE(std::isnan(z.mean_ratio));
  EXPECT_EQ(z.excluded, 1);
  EXPECT_THROW(CompetitiveRatioCell(rewards, none, 0.5, 10),
               std::invalid_argument);
}

CellSpec GapCell(const std::string& kind, int threads) {
  CellSpec spec;
  spec.experiment_id = "unit";
  spec.instance = MakeGapInstance(2000);
  spec.strategy = StrategySpec{kind, kind, {}, {}};
  spec.replications = 12;
  spec.base_seed = 5;
  spec.threads = threads;
  return spec;
}

std::string Row(const CellResult& cell) {
  std::ostringstream os;
  WriteCsvRow(os, cell);
  return os.str();
}

TEST(RunCellTest, DeterministicAcrossRunsAndThreadCounts) {
  for (const char* kind : {"ogdcb", "pacing"}) {
    const CellResult a = RunCell(GapCell(kind, 1));
    const CellResult b = RunCell(GapCell(kind, 1));
    const CellResult c = RunCell(GapCell(kind, 3));
    EXPECT_EQ(Row(a), Row(b));
    EXPECT_EQ(Row(a), Row(c));
    EXPECT_TRUE(a.invariants.ok());
    EXPECT_EQ(a.invariants.episodes_checked, 12);
  }
}

TEST(RunCellTest, ColumnsOnIidInstance) {
  std::vector<EpisodeRecord> episodes;
  const CellResult cell = RunCell(GapCell("always_skip", 1), &episodes);
  ASSERT_EQ(episodes.size(), 12u);
  EXPECT_EQ(cell.mean_reward, 0.0);
  EXPECT_NEAR(cell.opt_fluid, 200.0, 1e-9);
  EXPECT_NEAR(cell.opt_dlp, 400.0, 1e-9);
  // Regret against the fluid benchmark on i.i.d. instances.
  EXPECT_NEAR(cell.mean_regret, 200.0, 1e-9);
  EXPECT_EQ(cell.se_regret, 0.0);
  EXPECT_GT(cell.mean_hindsight, 0.0);
  EXPECT_EQ(cell.mean_stop_round, 0.0);
  EXPECT_EQ(cell.min_entering_ratio, 1.0);  // full feedback observes every price
  for (const EpisodeRecord& e : episodes) {
    EXPECT_EQ(e.seed, EpisodeSeed(5, 2000, 0, &e - episodes.data()));
  }
}

TEST(RunCellTest, RegretAgainstHindsightOffIid) {
  CellSpec spec = GapCell("always_enter", 1);
  spec.instance = MakeThm3Adversary(1.0, 300);
  std::vector<EpisodeRecord> episodes;
  const CellResult cell = RunCell(spec, &episodes);
  EXPECT_TRUE(std::isnan(cell.opt_fluid));
  EXPECT_TRUE(std::isnan(cell.opt_dlp));
  for (const EpisodeRecord& e : episodes) {
    EXPECT_NEAR(e.regret, e.hindsight - e.reward, 1e-12);
  }
  std::ostringstream os;
  WriteCsvRow(os, cell);
  EXPECT_NE(os.str().find(",,"), std::string::npos);  // NaN written empty
}

TEST(EpisodeSeedTest, DependsOnEveryCoordinate) {
  const uint64_t base = EpisodeSeed(1, 100, 0, 0);
  EXPECT_EQ(base, EpisodeSeed(1, 100, 0, 0));
  EXPECT_NE(base, EpisodeSeed(2, 100, 0, 0));
  EXPECT_NE(base, EpisodeSeed(1, 101, 0, 0));
  EXPECT_NE(base, EpisodeSeed(1, 100, 1, 0));
  EXPECT_NE(base, EpisodeSeed(1, 100, 0, 1));
}

TEST(CsvTest, HeaderMatchesSchema) {
  EXPECT_EQ(CsvHeader(),
            "experiment_id,instance,strategy,info_mode,T,replications,"
            "mean_reward,se_reward,opt_fluid,opt_dlp,mean_hindsight,"
            "mean_regret,se_regret,mean_gap_mu,min_entering_ratio,"
            "mean_stop_round");
}

TEST(ConfigTest, ParsesFullGrammar) {
  std::istringstream is(
      "# demo\n"
      "experiment_id = demo\n"
      "instance = random seed=3 nf=2 ng=3 rho=0.2\n"
      "horizons = 100, 200, 400\n"
      "replications = 4\n"
      "base_seed = 17\n"
      "info_mode = partial\n"
      "threads = 2\n"
      "mu = 0.3\n"
      "hindsight = false\n"
      "\n"
      "[strategy main]\n"
      "kind = ogdcb\n"
      "[strategy pace]\n"
      "kind = pacing\n"
      "step = 0.01\n"
      "info_mode = full\n"
      "[strategy half]\n"
      "kind = static\n"
      "prob = 0.5\n");
  const ExperimentConfig cfg = ParseExperimentConfig(is);
  EXPECT_EQ(cfg.experiment_id, "demo");
  EXPECT_EQ(cfg.horizons, (std::vector<int64_t>{100, 200, 400}));
  EXPECT_EQ(cfg.replications, 4);
  EXPECT_EQ(cfg.base_seed, 17u);
  EXPECT_EQ(cfg.info_mode, InfoMode::kPartial);
  EXPECT_EQ(cfg.threads, 2);
  EXPECT_EQ(cfg.mu, 0.3);
  EXPECT_FALSE(cfg.hindsight);
  ASSERT_EQ(cfg.strategies.size(), 3u);
  EXPECT_EQ(cfg.strategies[1].params.at("step"), "0.01");
  EXPECT_EQ(cfg.strategies[1].info_mode, InfoMode::kFull);
  const Instance inst = MakeInstanceFromSpec(cfg.instance, 100);
  EXPECT_EQ(inst.horizon, 100);
  for (const StrategySpec& s : cfg.strategies) {
    EXPECT_NE(MakeStrategy(s, inst), nullptr);
  }
}

TEST(ConfigTest, RejectsBadConfigs) {
  const std::string good_head = "instance = gap\nhorizons = 100\n";
  for (const std::string& text : {
           std::string("instance = gap\nhorizons = 100\n"),  // no strategy
           good_head + "[strategy a]\n",                      // no kind
           good_head + "replications = 0\n[strategy a]\nkind = ogdcb\n",
           std::string("instance = gap\nhorizons = 200, 100\n[strategy a]\nkind = ogdcb\n"),
           good_head + "info_mode = sometimes\n[strategy a]\nkind = ogdcb\n",
           good_head + "nonsense line\n",
       }) {
    std::istringstream is(text);
    EXPECT_THROW(ParseExperimentConfig(is), ConfigError) << text;
  }
  EXPECT_THROW(MakeInstanceFromSpec("nope", 100), ConfigError);
  EXPECT_THROW(MakeInstanceFromSpec("thm2 rho=0.5 vmax=1 delta=2", 100),
               ConfigError);
  const Instance gap = MakeGapInstance(100);
  EXPECT_THROW(MakeStrategy(StrategySpec{"x", "magic", {}, {}}, gap), ConfigError);
  EXPECT_THROW(MakeStrategy(StrategySpec{"x", "ogdcb", {{"bogus", "1"}}, {}}, gap),
               ConfigError);
  EXPECT_THROW(MakeStrategy(StrategySpec{"x", "static", {{"prob", "2"}}, {}}, gap),
               ConfigError);
  EXPECT_THROW(MakeStrategy(StrategySpec{"x", "static", {{"policy", "fluid"}}, {}},
                            MakeThm3Adversary(1.0, 100)),
               ConfigError);
}

TEST(RunExperimentTest, ProducesCellsAndSlopes) {
  ExperimentConfig cfg;
  cfg.experiment_id = "tiny";
  cfg.instance = "thm1";
  cfg.horizons = {64, 128, 256, 512, 1024};
  cfg.replications = 8;
  cfg.threads = 1;
  cfg.strategies = {StrategySpec{"skip", "always_skip", {}, {}}};
  const Report report = RunExperiment(cfg);
  ASSERT_EQ(report.cells.size(), 5u);
  EXPECT_TRUE(report.invariants.ok());
  const auto it = report.slopes.find({"skip", "full"});
  ASSERT_NE(it, report.slopes.end());
  EXPECT_NEAR(it->second.slope, 1.0, 1e-9);  // regret T/2
}

}  // namespace
}  // namespace throttlesim
