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

#include "throttlesim/model.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>

#include "throttlesim/budget.h"

namespace throttlesim {

std::string_view InfoModeName(InfoMode mode) {
  return mode == InfoMode::kFull ? "full" : "partial";
}

InfoMode ParseInfoMode(std::string_view name) {
  if (name == "full") return InfoMode::kFull;
  if (name == "partial") return InfoMode::kPartial;
  throw std::invalid_argument("unknown info mode '" + std::string(name) +
                              "' (expected full or partial)");
}

RoundOutcome SettleRound(double value, double price, bool decision,
                         double vmax) {
  if (!(value >= 0.0 && value <= vmax)) {
    throw std::invalid_argument("settle_round: value outside [0, vmax]");
  }
  if (!(price >= 0.0 && price <= vmax)) {
    throw std::invalid_argument("settle_round: price outside [0, vmax]");
  }
  RoundOutcome out;
  out.value = value;
  out.price = price;
  out.decision = decision;
  if (decision && value >= price) {
    out.reward = value - price;
    out.cost = price;
  }
  return out;
}

void EpisodeConfig::Validate() const {
  if (horizon < 1) throw std::invalid_argument("episode: T must be >= 1");
  if (!(value_ceiling > 0.0)) {
    throw std::invalid_argument("episode: vmax must be positive");
  }
  if (!(budget_rate > 0.0 && budget_rate <= value_ceiling)) {
    throw std::invalid_argument("episode: rho must lie in (0, vmax]");
  }
  if (budget() < value_ceiling) {
    throw std::invalid_argument("episode: budget rho*T is below vmax");
  }
}

EpisodeConfig EpisodeConfig::ForInstance(const Instance& instance,
                                         InfoMode mode, uint64_t seed) {
  EpisodeConfig c;
  c.horizon = instance.horizon;
  c.budget_rate = instance.rho;
  c.value_ceiling = instance.vmax;
  c.info_mode = mode;
  c.seed = seed;
  return c;
}

Trajectory RunEpisode(Strategy& strategy, const Instance& instance,
                      const EpisodeConfig& config) {
  config.Validate();
  if (config.horizon != instance.horizon || config.budget_rate != instance.rho ||
      config.value_ceiling != instance.vmax) {
    throw std::invalid_argument(
        "run_episode: config disagrees with the instance on T, rho or vmax");
  }
  const int64_t horizon = config.horizon;
  const double vmax = config.value_ceiling;
  const bool full_info = config.info_mode == InfoMode::kFull;

  EpisodeStreams streams(config.seed);
  InputRealization inputs(instance, streams.values, streams.prices);
  auto entries = std::make_unique<bool[]>(static_cast<std::size_t>(horizon));

  Trajectory traj;
  traj.rounds.reserve(static_cast<std::size_t>(horizon));
  traj.mixture_component = inputs.mixture_component();

  double remaining = config.budget();
  const double slack = BudgetSlack(config.budget());
  bool active = true;
  for (int64_t t = 1; t <= horizon; ++t) {
    const auto idx = static_cast<std::size_t>(t - 1);
    const double value =
        inputs.Value(t, std::span<const bool>(entries.get(), idx));
    Action action;
    if (active) {
      action = strategy.Decide(t, value, remaining, streams.strategy);
      if (action.enter && !(action.bid >= 0.0 && action.bid <= value)) {
        throw std::logic_error("strategy " + strategy.name() +
                               " bid outside [0, value]");
      }
      ++traj.decision_rounds;
    }
    entries[idx] = active && action.enter;
    const double price =
        inputs.Price(t, std::span<const bool>(entries.get(), idx + 1));
    // A truthful bid (bid == value) records the entry decision itself; a
    // shaded bid only counts when it clears the price.
    const bool decision = entries[idx] &&
                          (action.bid >= value || action.bid >= price);
    const RoundOutcome outcome = SettleRound(value, price, decision, vmax);

    if (active || full_info) {
      const bool visible = full_info || outcome.decision;
      strategy.Observe(visible ? std::optional<double>(price) : std::nullopt,
                       outcome);
    }

    remaining -= outcome.cost;
    traj.total_reward += outcome.reward;
    traj.total_cost += outcome.cost;
    if (outcome.decision) traj.stop_round = t;
    traj.rounds.push_back(outcome);

    if (active && remaining < vmax - slack) active = false;
  }
  traj.dual_path = strategy.DualPath();
  return traj;
}

}  // namespace throttlesim
