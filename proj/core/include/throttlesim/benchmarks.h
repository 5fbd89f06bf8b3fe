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

#ifndef THROTTLESIM_BENCHMARKS_H_
#define THROTTLESIM_BENCHMARKS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "throttlesim/distributions.h"
#include "throttlesim/model.h"

namespace throttlesim {

using BigInt = boost::multiprecision::cpp_int;

// Slack allowed on an LP's expected spend.
inline constexpr double kSpendTolerance = 1e-12;

// Best participation rule π: supp(F) -> [0,1] under the budget in
// expectation (the fluid benchmark, per round).
struct FluidSolution {
  double per_round_value = 0.0;
  double expected_spend = 0.0;
  std::vector<double> support;  // F's atoms
  std::vector<double> policy;   // π at each atom
  // r(v)/c(v) of the marginal atom: accept above, reject below. 0 when the
  // budget is slack.
  double threshold_ratio = 0.0;
  // Spend at π ≡ 1 reaches ρ.
  bool binding = false;
};

// Sorts F's atoms by r(v)/c(v) and fills the budget, with free wins
// (c = 0 < r) first; ties go to the larger reward, then the lower atom.
// Returns π ≡ 1 when that is affordable.
FluidSolution FluidOpt(const DiscreteDistribution& values,
                       const DiscreteDistribution& prices, double rho);

// Best price-conditioned rule κ(v, p) (the deterministic LP, per round).
struct DlpSolution {
  struct Pair {
    double value;
    double price;
    double mass;
    double kappa;
  };

  double per_round_value = 0.0;
  double expected_spend = 0.0;
  // Accept iff v > (1 + λ̄) p; atoms exactly on the line may be fractional.
  double shading_threshold = 0.0;
  std::optional<Pair> fractional_pair;
  std::vector<Pair> pairs;  // all (v, p) atoms with v >= p and their κ
  bool binding = false;
};

DlpSolution DlpOpt(const DiscreteDistribution& values,
                   const DiscreteDistribution& prices, double rho);

// Best 0/1 selection of rounds with total payment <= budget.
struct HindsightResult {
  double value = 0.0;        // Σ selected (v - p)^+
  double upper_bound = 0.0;  // == value when exact
  std::vector<bool> selection;
  bool exact = false;
};

// Exact when every price is an integer multiple of `grid` (grid > 0) and the
// DP fits the memory cap; otherwise brackets the optimum between a greedy
// selection (returned) and the fractional relaxation. Throws
// std::invalid_argument on a negative budget or mismatched lengths.
HindsightResult HindsightOpt(std::span<const double> values,
                             std::span<const double> prices, double budget,
                             double grid);

HindsightResult HindsightOpt(const Trajectory& trajectory, double budget,
                             double grid);

// Revenue upper bound for any throttling strategy on the v ≡ 1,
// p ∈ {1/3, 2/3} instance, given S prices equal to 1/3. In thirds:
//   S + T                          if 2S >= T
//   2S + floor((3T - 2S) / 4)      otherwise.
int64_t Thm1RevenueBoundThirds(int64_t third_count, int64_t horizon);
double Thm1RevenueBound(int64_t third_count, int64_t horizon);

struct Thm1LowerBound {
  BigInt sum;          // Σ_{t=1}^{T/4} (T - 4(t-1)) C(T+1, 2t-1)
  BigInt closed_form;  // 2^{T-1} + (T/2) C(T, T/2)
  double regret_bound = 0.0;      // sum / (12 · 2^T)
  double asymptotic_bound = 0.0;  // 1/24 + (√2/48) √T
};

// Requires 4 | T.
Thm1LowerBound Thm1RegretLowerBound(int64_t horizon);

BigInt Binomial(int64_t n, int64_t k);

// T · opt_per_round - total reward.
double Regret(const Trajectory& trajectory, double opt_per_round);

}  // namespace throttlesim

#endif  // THROTTLESIM_BENCHMARKS_H_
