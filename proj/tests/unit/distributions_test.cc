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

#include "throttlesim/distributions.h"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

namespace throttlesim {
namespace {

DiscreteDistribution Thirds() {
  return DiscreteDistribution::Uniform({1.0 / 3.0, 2.0 / 3.0}, 1.0);
}

TEST(DiscreteDistributionTest, SortsAtoms) {
  const DiscreteDistribution d({{0.9, 0.25}, {0.1, 0.75}}, 1.0);
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.atoms()[0].point, 0.1);
  EXPECT_EQ(d.atoms()[1].point, 0.9);
  EXPECT_DOUBLE_EQ(d.Mean(), 0.1 * 0.75 + 0.9 * 0.25);
}

TEST(DiscreteDistributionTest, RejectsInvalidInput) {
  EXPECT_THROW(DiscreteDistribution({}, 1.0), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({{0.5, 0.5}, {0.5, 0.5}}, 1.0),
               std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({{1.5, 1.0}}, 1.0), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({{-0.1, 1.0}}, 1.0), std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({{0.2, 1.2}, {0.3, -0.2}}, 1.0),
               std::invalid_argument);
  EXPECT_THROW(DiscreteDistribution({{0.2, 0.5}, {0.3, 0.4}}, 1.0),
               std::invalid_argument);
  EXPECT_NO_THROW(DiscreteDistribution({{0.2, 0.5}, {0.3, 0.5 + 5e-13}}, 1.0));
}

TEST(DiscreteDistributionTest, CdfIsRightContinuous) {
  const DiscreteDistribution d = Thirds();
  EXPECT_EQ(d.Cdf(0.0), 0.0);
  EXPECT_EQ(d.Cdf(1.0 / 3.0), 0.5);
  EXPECT_EQ(d.Cdf(0.5), 0.5);
  EXPECT_EQ(d.Cdf(2.0 / 3.0), 1.0);
  EXPECT_EQ(d.Cdf(1.0), 1.0);
}

TEST(DiscreteDistributionTest, SampleFrequencyOnTwoPointUniform) {
  const DiscreteDistribution d = Thirds();
  Rng rng(11);
  constexpr int kDraws = 100000;
  int low = 0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = d.Sample(rng);
    ASSERT_TRUE(x == 1.0 / 3.0 || x == 2.0 / 3.0);
    low += x == 1.0 / 3.0 ? 1 : 0;
  }
  // 3 sigma binomial band: sigma = sqrt(0.25 / n).
  EXPECT_NEAR(static_cast<double>(low) / kDraws, 0.5,
              3 * std::sqrt(0.25 / kDraws));
}

TEST(DiscreteDistributionTest, PointMassAlwaysReturnsItsAtom) {
  const DiscreteDistribution d = DiscreteDistribution::PointMass(0.7, 1.0);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(d.Sample(rng), 0.7);
}

TEST(DiscreteDistributionTest, SeededReplay) {
  const DiscreteDistribution d({{0.1, 0.2}, {0.4, 0.3}, {0.8, 0.5}}, 1.0);
  Rng a(99), b(99);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(d.Sample(a), d.Sample(b));
}

TEST(DiscreteDistributionTest, TextRoundTripIsExact) {
  const DiscreteDistribution d({{0.1, 0.2}, {1.0 / 3.0, 0.3}, {0.8, 0.5}}, 1.0);
  std::istringstream is(d.ToText() + "end\n");
  const DiscreteDistribution back = DiscreteDistribution::ReadText(is, 1.0);
  EXPECT_TRUE(back == d);
}

TEST(DiscreteDistributionTest, ReadTextSkipsCommentsAndRejectsGarbage) {
  std::istringstream ok("# prices\n\n0.3 0.5\n0.9 0.5\nend\n");
  EXPECT_EQ(DiscreteDistribution::ReadText(ok, 1.0).size(), 2u);
  std::istringstream bad("0.3\n");
  EXPECT_THROW(DiscreteDistribution::ReadText(bad, 1.0), std::invalid_argument);
}

TEST(InterimCurvesTest, TwoPointUniformExamples) {
  const InterimCurves c(Thirds());
  EXPECT_NEAR(c.Reward(1.0), 0.5, 1e-15);
  EXPECT_NEAR(c.Cost(1.0), 0.5, 1e-15);
  EXPECT_NEAR(c.Reward(0.5), 1.0 / 12.0, 1e-15);
  EXPECT_NEAR(c.Cost(0.5), 1.0 / 6.0, 1e-15);
  EXPECT_EQ(c.Reward(0.0), 0.0);
  EXPECT_EQ(c.Cost(0.0), 0.0);
}

TEST(InterimCurvesTest, AtomAtZeroCostsNothing) {
  const InterimCurves c(DiscreteDistribution::Uniform({0.0, 0.5}, 1.0));
  EXPECT_EQ(c.Cost(0.0), 0.0);
  EXPECT_EQ(c.Reward(0.0), 0.0);
  EXPECT_EQ(c.WinProbability(0.0), 0.5);
}

TEST(InterimCurvesTest, TieCountsAsWin) {
  const InterimCurves c(DiscreteDistribution::PointMass(0.4, 1.0));
  EXPECT_EQ(c.Cost(0.4), 0.4);
  EXPECT_EQ(c.Reward(0.4), 0.0);
  EXPECT_EQ(c.Cost(0.39), 0.0);
}

TEST(InterimCurvesTest, IdentityMonotoneConvexOnAGrid) {
  const DiscreteDistribution g(
      {{0.05, 0.1}, {0.2, 0.25}, {0.45, 0.3}, {0.7, 0.2}, {0.95, 0.15}}, 1.0);
  const InterimCurves c(g);
  double prev_r = -1.0, prev_c = -1.0;
  std::vector<double> r;
  for (int i = 0; i <= 1000; ++i) {
    const double v = i / 1000.0;
    const double rv = c.Reward(v), cv = c.Cost(v);
    EXPECT_NEAR(rv + cv, v * g.Cdf(v), 1e-14) << "v=" << v;
    EXPECT_GE(rv, prev_r - 1e-15);
    EXPECT_GE(cv, prev_c - 1e-15);
    prev_r = rv;
    prev_c = cv;
    r.push_back(rv);
  }
  for (std::size_t i = 1; i + 1 < r.size(); ++i) {
    EXPECT_GE(r[i - 1] + r[i + 1] - 2 * r[i], -1e-14) << "convexity at " << i;
  }
}

TEST(InterimCurvesTest, MonteCarloAgreesWithinFourStandardErrors) {
  const DiscreteDistribution g({{0.1, 0.3}, {0.35, 0.4}, {0.8, 0.3}}, 1.0);
  const InterimCurves c(g);
  const double v = 0.6;
  Rng rng(2024);
  constexpr int kDraws = 1000000;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double x = std::max(0.0, v - g.Sample(rng));
    sum += x;
    sum_sq += x * x;
  }
  const double mean = sum / kDraws;
  const double se = std::sqrt((sum_sq / kDraws - mean * mean) / kDraws);
  EXPECT_NEAR(mean, c.Reward(v), 4 * se);
}

}  // namespace
}  // namespace throttlesim
