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

#ifndef THROTTLESIM_INSTANCES_H_
#define THROTTLESIM_INSTANCES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "throttlesim/distributions.h"

namespace throttlesim {

// A fixed, fully specified input sequence of length T.
struct FixedSequence {
  std::vector<double> points;
};

// Draws one of several fixed sequences at episode start.
struct SequenceMixture {
  std::vector<std::vector<double>> sequences;
  std::vector<double> weights;
};

// An input chosen online by an adversary. `entries` holds the buyer's entry
// flags for rounds 1..t when pricing round t (the current round included), and
// for rounds 1..t-1 when choosing a value.
class AdaptiveOracle {
 public:
  using Rule =
      std::function<double(int64_t round, std::span<const bool> entries)>;

  // `kind` and `params` identify the rule for serialization; only the
  // built-in kinds can be read back from an instance file.
  AdaptiveOracle(std::string kind, std::vector<double> params, Rule rule)
      : kind_(std::move(kind)), params_(std::move(params)),
        rule_(std::move(rule)) {}

  // Charges `if_enter` when the buyer enters the current round and
  // `if_skip` otherwise.
  static AdaptiveOracle EntryResponsive(double if_enter, double if_skip);

  double operator()(int64_t round, std::span<const bool> entries) const {
    return rule_(round, entries);
  }

  const std::string& kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }

 private:
  std::string kind_;
  std::vector<double> params_;
  Rule rule_;
};

using ValueSource = std::variant<FixedSequence, DiscreteDistribution,
                                 SequenceMixture, AdaptiveOracle>;
using PriceSource =
    std::variant<FixedSequence, DiscreteDistribution, AdaptiveOracle>;

// A complete auction environment.
struct Instance {
  std::string name;
  ValueSource values;
  PriceSource prices;
  int64_t horizon = 0;
  double rho = 0.0;
  double vmax = 1.0;
  // Every price the instance can emit is an integer multiple of this grid;
  // 0 means unknown. Lets the hindsight solver run its exact DP.
  double price_grid = 0.0;

  double budget() const { return rho * static_cast<double>(horizon); }

  // i.i.d. values and prices: fluid and deterministic-LP benchmarks apply.
  bool IsStochastic() const;
  const DiscreteDistribution* value_distribution() const;
  const DiscreteDistribution* price_distribution() const;

  // Throws std::invalid_argument when T < 1, rho outside (0, vmax],
  // B < vmax, a fixed sequence has the wrong length or leaves [0, vmax],
  // mixture weights do not sum to one, or a distribution's ceiling
  // disagrees with vmax.
  void Validate() const;
};

// Per-episode realization of an instance's inputs. Values and prices draw
// from separate streams, so the realized sequences do not depend on the
// strategy unless an adaptive oracle is involved.
class InputRealization {
 public:
  InputRealization(const Instance& instance, Rng& value_rng, Rng& price_rng);

  double Value(int64_t round, std::span<const bool> entries_before);
  double Price(int64_t round, std::span<const bool> entries_through);

  // Index of the drawn mixture component, if the values are a mixture.
  std::optional<std::size_t> mixture_component() const { return component_; }

 private:
  const Instance* instance_;
  Rng* value_rng_;
  Rng* price_rng_;
  std::optional<std::size_t> component_;
};

// v ≡ 1, prices uniform on {1/3, 2/3}, rho = 1/2, vmax = 1. Requires 4 | T.
Instance MakeThm1Instance(int64_t horizon);

struct Thm2Construction {
  int m = 0;               // number of value batches, ceil(vmax/rho) + 1
  double epsilon = 0.0;    // delta / (4 - 2 delta)
  double price = 0.0;      // vmax / (1 + epsilon), charged every round
  int64_t batch_length = 0;             // floor(T / m)
  std::vector<double> batch_values;     // v_j = price (1 + eps^{m+1-j})
  std::vector<double> weights;          // q_1 .. q_m
};

// Parameters of the adversarial-value construction. Throws if delta is
// outside (0, 1) or the budget inequality price * floor(T/m) <= rho T fails.
Thm2Construction Thm2Parameters(double rho, double vmax, double delta,
                                int64_t horizon);

// Fixed price, values drawn from a mixture of m nested batch sequences:
// sequence i carries v_1..v_{m+1-i} on its first m+1-i batches and the
// price elsewhere. Requires T >= vmax / rho.
Instance MakeThm2Instance(double rho, double vmax, double delta,
                          int64_t horizon);

// mu / (3 mu + 6).
double Thm3Epsilon(double mu);

// v ≡ 2/3, rho = 1/3, vmax = 1; the price is 2/3 - eps when the buyer
// enters and eps when it skips.
Instance MakeThm3Adversary(double mu, int64_t horizon);

// F uniform{0.4, 1.0}, G uniform{0.3, 0.9}, rho = 0.15, vmax = 1. The
// deterministic LP beats the fluid benchmark by 0.10 per round.
Instance MakeGapInstance(int64_t horizon = 100000);

// Same F and rho as the gap instance with the price fixed at 0.3, where
// throttling and price-conditioned bidding have the same benchmark.
Instance MakeSingletonPriceInstance(int64_t horizon = 100000);

// Random i.i.d. instance: atoms drawn without replacement from the grid
// {0, 1/120, ..., vmax}, weights uniform then normalized.
Instance MakeRandomInstance(uint64_t seed, int value_support,
                            int price_support, double rho,
                            int64_t horizon, double vmax = 1.0);

inline constexpr double kRandomInstanceGrid = 1.0 / 120.0;

}  // namespace throttlesim

#endif  // THROTTLESIM_INSTANCES_H_
