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

#include "throttlesim/strategies.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace throttlesim {

OgdCbState::OgdCbState(int64_t horizon, double budget_rate, double vmax)
    : horizon(horizon), budget_rate(budget_rate), vmax(vmax) {
  if (horizon < 2) throw std::invalid_argument("ogdcb: T must be >= 2");
  if (!(budget_rate > 0.0 && budget_rate <= vmax)) {
    throw std::invalid_argument("ogdcb: rho must lie in (0, vmax]");
  }
}

OgdCbStep OgdCbDecide(OgdCbState& state, int64_t round, double value) {
  OgdCbStep step;
  step.round = round;
  step.sample_count = state.store.size();
  step.lambda_before = state.lambda;
  if (round == 1) {
    step.exploration = true;
    step.decision = true;
    step.lambda_after = state.lambda;
    return step;
  }
  if (state.store.empty()) {
    throw std::logic_error("ogdcb: no price observed before round " +
                           std::to_string(round));
  }
  step.epsilon = DkwEpsilon(state.store.size(), state.horizon);
  step.reward_estimate = EstimateReward(value, state.store, step.epsilon);
  step.cost_estimate = EstimateCost(value, state.store, step.epsilon);
  step.decision = step.reward_estimate >= state.lambda * step.cost_estimate;
  step.step_size = 1.0 / (state.vmax * std::sqrt(static_cast<double>(round)));
  const double gradient =
      (step.decision ? step.cost_estimate : 0.0) - state.budget_rate;
  state.lambda = std::max(0.0, state.lambda + step.step_size * gradient);
  step.lambda_after = state.lambda;
  return step;
}

OgdCbStrategy::OgdCbStrategy(int64_t horizon, double budget_rate, double vmax)
    : state_(horizon, budget_rate, vmax) {}

Action OgdCbStrategy::Decide(int64_t round, double value, double, Rng&) {
  const OgdCbStep step = OgdCbDecide(state_, round, value);
  steps_.push_back(step);
  return Action{step.decision, value};
}

void OgdCbStrategy::Observe(std::optional<double> price,
                            const RoundOutcome&) {
  if (price) state_.store.Add(*price);
}

std::vector<double> OgdCbStrategy::DualPath() const {
  std::vector<double> path;
  path.reserve(steps_.size() + 1);
  for (const OgdCbStep& s : steps_) path.push_back(s.lambda_before);
  if (!steps_.empty()) path.push_back(steps_.back().lambda_after);
  return path;
}

std::unique_ptr<Strategy> OgdCbStrategy::CloneFresh() const {
  return std::make_unique<OgdCbStrategy>(state_.horizon, state_.budget_rate,
                                         state_.vmax);
}

PacingState PacingState::Default(int64_t horizon, double budget_rate,
                                 double vmax) {
  PacingState s;
  s.step_size = 1.0 / (vmax * std::sqrt(static_cast<double>(horizon)));
  s.mu_max = vmax / budget_rate - 1.0;
  s.budget_rate = budget_rate;
  return s;
}

double PacingBid(const PacingState& state, double value) {
  return value / (1.0 + state.mu);
}

void PacingUpdate(PacingState& state, double expenditure) {
  state.mu = std::clamp(
      state.mu - state.step_size * (state.budget_rate - expenditure), 0.0,
      state.mu_max);
}

PacingStep PacingDecide(PacingState& state, double value, double price) {
  PacingStep step;
  step.bid = PacingBid(state, value);
  step.win = step.bid >= price;
  step.expenditure = step.win ? price : 0.0;
  PacingUpdate(state, step.expenditure);
  return step;
}

PacingStrategy::PacingStrategy(PacingState initial)
    : initial_(initial), state_(initial) {
  if (!(initial.step_size >= 0.0) || !(initial.mu_max >= 0.0) ||
      initial.mu < 0.0 || initial.mu > initial.mu_max) {
    throw std::invalid_argument("pacing: invalid step size or multiplier");
  }
}

Action PacingStrategy::Decide(int64_t, double value, double, Rng&) {
  mu_path_.push_back(state_.mu);
  awaiting_feedback_ = true;
  return Action{true, std::min(value, PacingBid(state_, value))};
}

void PacingStrategy::Observe(std::optional<double>,
                             const RoundOutcome& outcome) {
  // Rounds reported after the budget stop carry no bid of ours.
  if (!awaiting_feedback_) return;
  awaiting_feedback_ = false;
  PacingUpdate(state_, outcome.cost);
}

std::unique_ptr<Strategy> PacingStrategy::CloneFresh() const {
  return std::make_unique<PacingStrategy>(initial_);
}

StaticThrottleStrategy::StaticThrottleStrategy(std::string name,
                                               ParticipationFn participation)
    : name_(std::move(name)), participation_(std::move(participation)) {}

Action StaticThrottleStrategy::Decide(int64_t, double value, double,
                                      Rng& rng) {
  const double prob = participation_(value);
  if (!(prob >= 0.0 && prob <= 1.0)) {
    throw std::invalid_argument("static throttle: participation outside [0, 1]");
  }
  bool enter;
  if (prob >= 1.0) {
    enter = true;
  } else if (prob <= 0.0) {
    enter = false;
  } else {
    enter = rng.Bernoulli(prob);
  }
  return Action{enter, value};
}

std::unique_ptr<Strategy> StaticThrottleStrategy::CloneFresh() const {
  return std::make_unique<StaticThrottleStrategy>(name_, participation_);
}

std::unique_ptr<Strategy> MakeStaticThrottle(ParticipationFn participation,
                                             std::string name) {
  return std::make_unique<StaticThrottleStrategy>(std::move(name),
                                                  std::move(participation));
}

std::unique_ptr<Strategy> MakeAlwaysEnter() {
  return MakeStaticThrottle([](double) { return 1.0; }, "always_enter");
}

std::unique_ptr<Strategy> MakeAlwaysSkip() {
  return MakeStaticThrottle([](double) { return 0.0; }, "always_skip");
}

ParticipationFn TabulatedParticipation(std::vector<double> support,
                                       std::vector<double> probabilities) {
  if (support.size() != probabilities.size()) {
    throw std::invalid_argument("participation table: size mismatch");
  }
  return [support = std::move(support),
          probabilities = std::move(probabilities)](double v) {
    auto it = std::lower_bound(support.begin(), support.end(), v);
    if (it == support.end() || *it != v) return 0.0;
    return probabilities[it - support.begin()];
  };
}

}  // namespace throttlesim
