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

#include "throttlesim/benchmarks.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "throttlesim/distributions.h"
#include "throttlesim/instances.h"
#include "throttlesim/model.h"
#include "throttlesim/rng.h"
#include "throttlesim/strategies.h"

namespace throttlesim {
namespace {

// Exhaustive 0/1 search over every subset.
double Exhaustive(const std::vector<double>& v, const std::vector<double>& p,
                  double budget) {
  const int n = static_cast<int>(v.size());
  double best = 0.0;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    double value = 0.0, cost = 0.0;
    for (int i = 0; i < n; ++i) {
      if ((mask >> i & 1u) && v[i] >= p[i]) {
        value += v[i] - p[i];
        cost += p[i];
      }
    }
    if (cost <= budget + 1e-9) best = std::max(best, value);
  }
  return best;
}

// Textbook O(T · B) DP over integer costs.
int64_t NaiveDp(const std::vector<int64_t>& v, const std::vector<int64_t>& p,
                int64_t budget) {
  std::vector<int64_t> best(budget + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < p[i]) continue;
    for (int64_t b = budget; b >= p[i]; --b) {
      best[b] = std::max(best[b], best[b - p[i]] + v[i] - p[i]);
    }
  }
  return best[budget];
}

TEST(FluidOptTest, FirstInstanceIsBindingAtHalf) {
  const auto f = DiscreteDistribution::PointMass(1.0, 1.0);
  const auto g = DiscreteDistribution::Uniform({1.0 / 3.0, 2.0 / 3.0}, 1.0);
  const FluidSolution s = FluidOpt(f, g, 0.5);
  EXPECT_NEAR(s.per_round_value, 0.5, 1e-15);
  EXPECT_NEAR(s.expected_spend, 0.5, 1e-15);
  EXPECT_TRUE(s.binding);
  ASSERT_EQ(s.policy.size(), 1u);
  EXPECT_EQ(s.policy[0], 1.0);
}

TEST(FluidOptTest, GapExample) {
  const auto f = DiscreteDistribution::Uniform({0.4, 1.0}, 1.0);
  const auto g = DiscreteDistribution::Uniform({0.3, 0.9}, 1.0);
  const FluidSolution s = FluidOpt(f, g, 0.15);
  EXPECT_NEAR(s.per_round_value, 0.10, 1e-15);
  ASSERT_EQ(s.policy.size(), 2u);
  EXPECT_EQ(s.policy[0], 0.0);
  EXPECT_NEAR(s.policy[1], 0.5, 1e-15);
  EXPECT_NEAR(s.threshold_ratio, 2.0 / 3.0, 1e-15);
  EXPECT_TRUE(s.binding);
}

TEST(FluidOptTest, SlackBudgetTakesEverything) {
  const auto f = DiscreteDistribution::Uniform({0.4, 1.0}, 1.0);
  const auto g = DiscreteDistribution::Uniform({0.3, 0.9}, 1.0);
  const FluidSolution s = FluidOpt(f, g, 0.5);
  EXPECT_FALSE(s.binding);
  EXPECT_EQ(s.threshold_ratio, 0.0);
  EXPECT_EQ(s.policy, (std::vector<double>{1.0, 1.0}));
  // E[(v - p)^+] = (0.1 + 0.7 + 0.1) / 4.
  EXPECT_NEAR(s.per_round_value, 0.225, 1e-15);
  EXPECT_NEAR(DlpOpt(f, g, 0.5).per_round_value, 0.225, 1e-15);
}

TEST(DlpOptTest, GapExample) {
  const auto f = DiscreteDistribution::Uniform({0.4, 1.0}, 1.0);
  const auto g = DiscreteDistribution::Uniform({0.3, 0.9}, 1.0);
  const DlpSolution s = DlpOpt(f, g, 0.15);
  EXPECT_NEAR(s.per_round_value, 0.20, 1e-15);
  EXPECT_NEAR(s.expected_spend, 0.15, 1e-15);
  EXPECT_TRUE(s.binding);
  for (const DlpSolution::Pair& pair : s.pairs) {
    if (pair.value == 1.0 && pair.price == 0.9) {
      EXPECT_EQ(pair.kappa, 0.0);
    } else {
      EXPECT_NEAR(pair.kappa, 1.0, 1e-12);
    }
  }
}

TEST(DlpOptTest, SingletonPriceMatchesFluid) {
  const auto f = DiscreteDistribution::Uniform({0.2, 0.4, 0.7, 1.0}, 1.0);
  const auto g = DiscreteDistribution::PointMass(0.3, 1.0);
  for (double rho : {0.05, 0.1, 0.15, 0.3}) {
    EXPECT_NEAR(DlpOpt(f, g, rho).per_round_value,
                FluidOpt(f, g, rho).per_round_value, 1e-15)
        << rho;
  }
}

TEST(DlpOptTest, DominatesFluidAndMatchesGridLp) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst =
        MakeRandomInstance(seed, 1 + seed % 4, 1 + (seed / 4) % 4,
                           0.05 + 0.05 * static_cast<double>(seed % 7), 100);
    const auto& f = *inst.value_distribution();
    const auto& g = *inst.price_distribution();
    const FluidSolution fluid = FluidOpt(f, g, inst.rho);
    const DlpSolution dlp = DlpOpt(f, g, inst.rho);
    EXPECT_GE(dlp.per_round_value, fluid.per_round_value - 1e-12) << seed;
    EXPECT_LE(fluid.expected_spend, inst.rho + kSpendTolerance);
    EXPECT_LE(dlp.expected_spend, inst.rho + kSpendTolerance);
    for (double pi : fluid.policy) {
      EXPECT_GE(pi, 0.0);
      EXPECT_LE(pi, 1.0);
    }
    if (f.size() <= 2) {
      // Grid search over π in steps of 0.01 gives a lower bound within the
      // grid resolution of the optimum.
      const InterimCurves curves(g);
      double best = 0.0;
      const auto atoms = f.atoms();
      const int n = static_cast<int>(atoms.size());
      for (int a = 0; a <= 100; ++a) {
        for (int b = 0; b <= (n == 2 ? 100 : 0); ++b) {
          const double pi[2] = {a / 100.0, b / 100.0};
          double value = 0.0, spend = 0.0;
          for (int i = 0; i < n; ++i) {
            value += atoms[i].weight * pi[i] * curves.Reward(atoms[i].point);
            spend += atoms[i].weight * pi[i] * curves.Cost(atoms[i].point);
          }
          if (spend <= inst.rho + 1e-12) best = std::max(best, value);
        }
      }
      EXPECT_LE(best, fluid.per_round_value + 1e-12) << seed;
      EXPECT_GE(best, fluid.per_round_value - 0.02) << seed;
    }
  }
}

TEST(HindsightOptTest, Examples) {
  const std::vector<double> v = {1.0, 1.0};
  const std::vector<double> p = {1.0 / 3.0, 2.0 / 3.0};
  const HindsightResult r = HindsightOpt(v, p, 1.0, 1.0 / 3.0);
  EXPECT_TRUE(r.exact);
  EXPECT_NEAR(r.value, 1.0, 1e-15);
  EXPECT_EQ(r.selection, (std::vector<bool>{true, true}));

  const std::vector<double> lv = {0.1, 0.2, 0.3};
  const std::vector<double> lp = {0.5, 0.6, 0.7};
  EXPECT_EQ(HindsightOpt(lv, lp, 2.0, 0.1).value, 0.0);

  const std::vector<double> uv = {0.9, 0.8, 0.2};
  const std::vector<double> up = {0.3, 0.5, 0.6};
  EXPECT_NEAR(HindsightOpt(uv, up, 5.0, 0.1).value, 0.9, 1e-12);
  EXPECT_THROW(HindsightOpt(uv, up, -1.0, 0.1), std::invalid_argument);
  const std::vector<double> short_prices = {0.3, 0.5};
  EXPECT_THROW(HindsightOpt(uv, short_prices, 1.0, 0.1),
               std::invalid_argument);
}

TEST(HindsightOptTest, MatchesExhaustiveSearch) {
  Rng rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 14;
    std::vector<double> v(n), p(n);
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<double>(rng.UniformInt(121)) / 120.0;
      p[i] = static_cast<double>(rng.UniformInt(121)) / 120.0;
    }
    const double budget = static_cast<double>(120 + rng.UniformInt(120 * n - 119)) / 240.0;
    const HindsightResult r = HindsightOpt(v, p, budget, 1.0 / 120.0);
    ASSERT_TRUE(r.exact);
    EXPECT_NEAR(r.value, Exhaustive(v, p, budget), 1e-9) << trial;
    double cost = 0.0, value = 0.0;
    for (int i = 0; i < n; ++i) {
      if (r.selection[i] && v[i] >= p[i]) {
        cost += p[i];
        value += v[i] - p[i];
      }
    }
    EXPECT_LE(cost, budget + 1e-9);
    EXPECT_NEAR(value, r.value, 1e-9);
  }
}

TEST(HindsightOptTest, ManyCostClassesMatchNaiveDp) {
  Rng rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 400;
    std::vector<int64_t> vi(n), pi(n);
    std::vector<double> v(n), p(n);
    for (int i = 0; i < n; ++i) {
      vi[i] = static_cast<int64_t>(rng.UniformInt(61));
      pi[i] = static_cast<int64_t>(1 + rng.UniformInt(60));
      v[i] = static_cast<double>(vi[i]) / 60.0;
      p[i] = static_cast<double>(pi[i]) / 60.0;
    }
    const int64_t budget_units = 600 + 37 * trial;
    const HindsightResult r =
        HindsightOpt(v, p, static_cast<double>(budget_units) / 60.0, 1.0 / 60.0);
    ASSERT_TRUE(r.exact);
    EXPECT_NEAR(r.value, static_cast<double>(NaiveDp(vi, pi, budget_units)) / 60.0,
                1e-9)
        << trial;
  }
}

TEST(HindsightOptTest, OffGridPricesBracketTheOptimum) {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 12;
    std::vector<double> v(n), p(n);
    for (int i = 0; i < n; ++i) {
      v[i] = rng.Uniform01();
      p[i] = rng.Uniform01();
    }
    const double budget = 1.0 + rng.Uniform01();
    const HindsightResult r = HindsightOpt(v, p, budget, 0.0);
    EXPECT_FALSE(r.exact);
    const double opt = Exhaustive(v, p, budget);
    EXPECT_LE(r.value, opt + 1e-12);
    EXPECT_GE(r.upper_bound, opt - 1e-12);
    EXPECT_LE(r.upper_bound - r.value, 1.0 + 1e-12);
  }
}

TEST(Thm1RevenueBoundTest, Examples) {
  EXPECT_EQ(Thm1RevenueBoundThirds(3, 4), 7);
  EXPECT_EQ(Thm1RevenueBoundThirds(1, 4), 4);
  EXPECT_EQ(Thm1RevenueBoundThirds(2, 4), 6);
  EXPECT_NEAR(Thm1RevenueBound(3, 4), 7.0 / 3.0, 1e-15);
}

TEST(Thm1LowerBoundTest, SumsAndClosedForm) {
  const Thm1LowerBound t4 = Thm1RegretLowerBound(4);
  EXPECT_EQ(t4.sum, 20);
  EXPECT_EQ(t4.closed_form, 20);
  EXPECT_NEAR(t4.regret_bound, 5.0 / 48.0, 1e-15);
  const Thm1LowerBound t8 = Thm1RegretLowerBound(8);
  EXPECT_EQ(t8.sum, 408);
  EXPECT_EQ(t8.closed_form, 408);
  for (int64_t horizon = 4; horizon <= 128; horizon += 4) {
    const Thm1LowerBound b = Thm1RegretLowerBound(horizon);
    EXPECT_EQ(b.sum, b.closed_form) << horizon;
    EXPECT_NEAR(b.asymptotic_bound,
                1.0 / 24.0 + std::sqrt(2.0) / 48.0 * std::sqrt(double(horizon)),
                1e-12);
  }
  EXPECT_THROW(Thm1RegretLowerBound(6), std::invalid_argument);
  EXPECT_EQ(Binomial(9, 3), 84);
  EXPECT_EQ(Binomial(5, 7), 0);
}

TEST(RegretTest, Examples) {
  const Instance inst = MakeThm1Instance(64);
  auto skip = MakeAlwaysSkip();
  const Trajectory t = RunEpisode(
      *skip, inst, EpisodeConfig::ForInstance(inst, InfoMode::kFull, 1));
  EXPECT_EQ(Regret(t, 0.5), 32.0);
  auto enter = MakeAlwaysEnter();
  const Trajectory u = RunEpisode(
      *enter, inst, EpisodeConfig::ForInstance(inst, InfoMode::kFull, 1));
  EXPECT_NEAR(Regret(u, u.total_reward / 64.0), 0.0, 1e-12);
}

TEST(HindsightMeanTest, GapInstanceSitsBelowTheDeterministicLp) {
  const int64_t horizon = 2000;
  const Instance inst = MakeGapInstance(horizon);
  const double dlp = DlpOpt(*inst.value_distribution(),
                            *inst.price_distribution(), inst.rho)
                         .per_round_value;
  double total = 0.0;
  const int episodes = 300;
  for (int k = 0; k < episodes; ++k) {
    auto skip = MakeAlwaysSkip();
    const Trajectory t = RunEpisode(
        *skip, inst, EpisodeConfig::ForInstance(inst, InfoMode::kFull, 1000 + k));
    const HindsightResult h = HindsightOpt(t, inst.budget(), inst.price_grid);
    ASSERT_TRUE(h.exact);
    total += h.value;
  }
  const double mean = total / episodes;
  EXPECT_LE(mean, dlp * horizon + 1e-9);
  EXPECT_GE(mean, dlp * horizon - 2.0 * std::sqrt(double(horizon)));
}

}  // namespace
}  // namespace throttlesim
