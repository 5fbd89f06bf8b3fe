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

#ifndef THROTTLESIM_MODEL_H_
#define THROTTLESIM_MODEL_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "throttlesim/instances.h"
#include "throttlesim/rng.h"

namespace throttlesim {

enum class InfoMode { kFull, kPartial };

std::string_view InfoModeName(InfoMode mode);
// Accepts "full" or "partial"; throws std::invalid_argument otherwise.
InfoMode ParseInfoMode(std::string_view name);

// One settled second-price auction from the buyer's side.
//   reward = x (v - p)^+,  cost = x p 1[v >= p].
struct RoundOutcome {
  double value = 0.0;
  double price = 0.0;
  bool decision = false;
  double reward = 0.0;
  double cost = 0.0;
};

// Throws std::invalid_argument when value or price is outside [0, vmax].
RoundOutcome SettleRound(double value, double price, bool decision,
                         double vmax);

struct EpisodeConfig {
  int64_t horizon = 0;
  double budget_rate = 0.0;
  double value_ceiling = 1.0;
  InfoMode info_mode = InfoMode::kFull;
  uint64_t seed = 0;

  double budget() const { return budget_rate * static_cast<double>(horizon); }

  // Requires T >= 1, 0 < rho <= vmax and rho T >= vmax.
  void Validate() const;

  static EpisodeConfig ForInstance(const Instance& instance, InfoMode mode,
                                   uint64_t seed);
};

// Per-round record of one episode. Rounds after the budget stop are present
// with decision 0 so that every trajectory has length T.
struct Trajectory {
  std::vector<RoundOutcome> rounds;
  int64_t stop_round = 0;       // last round with decision 1 (0 if none)
  int64_t decision_rounds = 0;  // rounds the strategy was consulted
  double total_reward = 0.0;
  double total_cost = 0.0;
  std::vector<double> dual_path;  // λ_1, λ_2, ... (empty without a dual)
  // Index of the drawn value sequence for mixture instances.
  std::optional<std::size_t> mixture_component;

  int64_t horizon() const { return static_cast<int64_t>(rounds.size()); }
};

// What the strategy submits in a round. Throttling strategies bid their
// value when they enter; bid-shading strategies may bid less.
struct Action {
  bool enter = false;
  double bid = 0.0;
};

// Online bidding policy. Decide may only use the history the engine has
// handed to Observe (H_t^F or H_t^P) plus the private stream `rng`.
class Strategy {
 public:
  virtual ~Strategy() = default;

  virtual std::string name() const = 0;

  // Called once per round until the budget stop, with round in 1..T.
  virtual Action Decide(int64_t round, double value, double remaining_budget,
                        Rng& rng) = 0;

  // Feedback at the end of a round. `price` is empty under partial
  // feedback when the recorded decision is 0.
  virtual void Observe(std::optional<double> price,
                       const RoundOutcome& outcome) = 0;

  // Dual-variable history λ_1, λ_2, ... for strategies that keep one.
  virtual std::vector<double> DualPath() const { return {}; }

  // Fresh copy of the strategy in its initial state, for replication.
  virtual std::unique_ptr<Strategy> CloneFresh() const = 0;
};

// Runs one episode. After each round the cost is deducted and, once the
// remaining budget drops below vmax, the strategy is no longer consulted;
// the remaining rounds are recorded with decision 0. Under full feedback the
// price is still revealed after the stop. Throws std::invalid_argument when
// config and instance disagree on T, rho or vmax.
Trajectory RunEpisode(Strategy& strategy, const Instance& instance,
                      const EpisodeConfig& config);

}  // namespace throttlesim

#endif  // THROTTLESIM_MODEL_H_
