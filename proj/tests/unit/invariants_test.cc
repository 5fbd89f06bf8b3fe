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

#include "throttlesim/invariants.h"

#include <cmath>

#include "gtest/gtest.h"
#include "throttlesim/instances.h"
#include "throttlesim/model.h"
#include "throttlesim/strategies.h"

namespace throttlesim {
namespace {

struct Episode {
  Instance instance;
  EpisodeConfig config;
  Trajectory trajectory;
};

Episode RunAlwaysEnter(InfoMode mode) {
  Episode e{MakeGapInstance(400), {}, {}};
  e.config = EpisodeConfig::ForInstance(e.instance, mode, 31);
  auto s = MakeAlwaysEnter();
  e.trajectory = RunEpisode(*s, e.instance, e.config);
  return e;
}

TEST(EnteringFrequencyTest, Constant) {
  // min{(1/2) r^2, (√2/4) r}: the quadratic branch for small r.
  EXPECT_NEAR(EnteringFrequencyConstant(0.15, 1.0), 0.5 * 0.0225, 1e-15);
  EXPECT_NEAR(EnteringFrequencyConstant(1.0, 1.0), std::sqrt(2.0) / 4.0, 1e-15);
  EXPECT_NEAR(EnteringFrequencyConstant(0.5, 2.0), 0.5 * 0.0625, 1e-15);
}

TEST(MinEnteringRatioTest, FullAndPartial) {
  const Episode e = RunAlwaysEnter(InfoMode::kPartial);
  EXPECT_EQ(MinEnteringRatio(e.trajectory, InfoMode::kFull), 1.0);
  Trajectory t = e.trajectory;
  t.decision_rounds = 1;
  EXPECT_TRUE(std::isnan(MinEnteringRatio(t, InfoMode::kFull)));
  auto skip = MakeAlwaysSkip();
  const Trajectory s = RunEpisode(*skip, e.instance, e.config);
  EXPECT_EQ(MinEnteringRatio(s, InfoMode::kPartial), 0.0);
}

TEST(CheckTrajectoryTest, CleanEpisodePasses) {
  for (InfoMode mode : {InfoMode::kFull, InfoMode::kPartial}) {
    const Episode e = RunAlwaysEnter(mode);
    InvariantReport report;
    CheckTrajectory(e.trajectory, e.config, report);
    EXPECT_TRUE(report.ok()) << report.violations.front();
    EXPECT_EQ(report.episodes_checked, 1);
  }
}

TEST(CheckTrajectoryTest, DetectsInjectedViolations) {
  const Episode e = RunAlwaysEnter(InfoMode::kFull);
  ASSERT_LT(e.trajectory.decision_rounds, e.trajectory.horizon());

  auto expect_flagged = [&](Trajectory t) {
    InvariantReport report;
    CheckTrajectory(t, e.config, report);
    EXPECT_FALSE(report.ok());
  };
  Trajectory t = e.trajectory;
  t.rounds.pop_back();
  expect_flagged(t);

  t = e.trajectory;
  t.rounds[0].reward += 0.1;
  expect_flagged(t);

  t = e.trajectory;
  RoundOutcome& late = t.rounds.back();
  late = SettleRound(late.value, late.price, true, 1.0);
  t.stop_round = t.horizon();
  t.total_reward += late.reward;
  t.total_cost += late.cost;
  expect_flagged(t);

  t = e.trajectory;
  t.stop_round -= 1;
  expect_flagged(t);

  t = e.trajectory;
  t.total_reward += 1.0;
  expect_flagged(t);

  // Overspending: replace every round by a winning one.
  t = e.trajectory;
  t.decision_rounds = t.horizon();
  t.total_reward = t.total_cost = 0.0;
  for (RoundOutcome& r : t.rounds) {
    r = SettleRound(1.0, 0.9, true, 1.0);
    t.total_reward += r.reward;
    t.total_cost += r.cost;
  }
  t.stop_round = t.horizon();
  InvariantReport report;
  CheckTrajectory(t, e.config, report);
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_NE(report.violations[0].find("exceeds budget"), std::string::npos);
}

TEST(CheckOgdCbTest, CleanEpisodesPass) {
  for (const Instance& inst :
       {MakeGapInstance(3000), MakeThm1Instance(3000),
        MakeRandomInstance(8, 3, 3, 0.2, 3000)}) {
    for (InfoMode mode : {InfoMode::kFull, InfoMode::kPartial}) {
      for (uint64_t seed = 0; seed < 5; ++seed) {
        OgdCbStrategy s(inst.horizon, inst.rho, inst.vmax);
        const auto config = EpisodeConfig::ForInstance(inst, mode, seed);
        const Trajectory t = RunEpisode(s, inst, config);
        InvariantReport report;
        CheckTrajectory(t, config, report);
        CheckOgdCb(s, t, config, report);
        EXPECT_TRUE(report.ok()) << report.violations.front();
      }
    }
  }
}

TEST(CheckOgdCbTest, DetectsDualOutOfRange) {
  const Instance inst = MakeGapInstance(500);
  OgdCbStrategy s(inst.horizon, inst.rho, inst.vmax);
  const auto config = EpisodeConfig::ForInstance(inst, InfoMode::kFull, 1);
  Trajectory t = RunEpisode(s, inst, config);
  ASSERT_GE(t.dual_path.size(), 3u);
  t.dual_path[2] = inst.vmax / inst.rho;  // above vmax/rho - 1
  InvariantReport report;
  CheckOgdCb(s, t, config, report);
  EXPECT_FALSE(report.ok());
  t.dual_path[2] = -0.01;
  InvariantReport negative;
  CheckOgdCb(s, t, config, negative);
  EXPECT_FALSE(negative.ok());
}

TEST(InvariantReportTest, Merge) {
  InvariantReport a, b;
  a.Add("x");
  a.episodes_checked = 2;
  b.Add("y");
  b.episodes_checked = 3;
  a.Merge(b);
  EXPECT_EQ(a.violations.size(), 2u);
  EXPECT_EQ(a.episodes_checked, 5);
  EXPECT_FALSE(a.ok());
}

}  // namespace
}  // namespace throttlesim
