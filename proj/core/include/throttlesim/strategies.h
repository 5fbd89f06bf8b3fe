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

#ifndef THROTTLESIM_STRATEGIES_H_
#define THROTTLESIM_STRATEGIES_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "throttlesim/estimation.h"
#include "throttlesim/model.h"

namespace throttlesim {

// ---------------------------------------------------------------------------
// OGD-CB: throttling on confidence-bound estimates of r(v) and c(v) with a
// budget multiplier λ driven by projected online gradient descent.
// ---------------------------------------------------------------------------

struct OgdCbState {
  OgdCbState(int64_t horizon, double budget_rate, double vmax);

  double lambda = 0.0;
  SampleStore store;
  int64_t horizon;
  double budget_rate;
  double vmax;
};

// Everything computed in one call of OgdCbDecide.
struct OgdCbStep {
  int64_t round = 0;
  bool exploration = false;  // round 1: enter, λ unchanged, no estimates
  bool decision = false;
  int64_t sample_count = 0;  // |I_t| before this round's observation
  double epsilon = 0.0;
  double reward_estimate = 0.0;
  double cost_estimate = 0.0;
  double step_size = 0.0;  // η_t = 1 / (vmax sqrt(t))
  double lambda_before = 0.0;
  double lambda_after = 0.0;
};

// Round-t decision and multiplier update:
//   x_t = 1[r~ >= λ_t c~],  λ_{t+1} = (λ_t + η_t (x_t c~ - ρ))^+,
// with the same c~ in both. Round 1 always enters and keeps λ.
// Throws std::logic_error if the store is empty at t >= 2.
OgdCbStep OgdCbDecide(OgdCbState& state, int64_t round, double value);

class OgdCbStrategy final : public Strategy {
 public:
  OgdCbStrategy(int64_t horizon, double budget_rate, double vmax);

  std::string name() const override { return "ogdcb"; }
  Action Decide(int64_t round, double value, double remaining_budget,
                Rng& rng) override;
  void Observe(std::optional<double> price,
               const RoundOutcome& outcome) override;
  std::vector<double> DualPath() const override;
  std::unique_ptr<Strategy> CloneFresh() const override;

  const OgdCbState& state() const { return state_; }
  // One entry per consulted round, in order.
  const std::vector<OgdCbStep>& steps() const { return steps_; }

 private:
  OgdCbState state_;
  std::vector<OgdCbStep> steps_;
};

// ---------------------------------------------------------------------------
// Adaptive pacing baseline: bid v / (1 + μ) and move μ against the spend
// error, μ <- clip(μ - step (ρ - z), 0, mu_max).
// ---------------------------------------------------------------------------

struct PacingState {
  double mu = 0.0;
  double step_size = 0.0;
  double mu_max = 0.0;
  double budget_rate = 0.0;

  // step = 1 / (vmax sqrt(T)), mu_max = vmax / rho - 1.
  static PacingState Default(int64_t horizon, double budget_rate, double vmax);
};

struct PacingStep {
  double bid = 0.0;
  bool win = false;
  double expenditure = 0.0;
};

double PacingBid(const PacingState& state, double value);
void PacingUpdate(PacingState& state, double expenditure);
// Bid, settle against `price` (win iff bid >= price, pay price) and update.
PacingStep PacingDecide(PacingState& state, double value, double price);

class PacingStrategy final : public Strategy {
 public:
  explicit PacingStrategy(PacingState initial);

  std::string name() const override { return "pacing"; }
  Action Decide(int64_t round, double value, double remaining_budget,
                Rng& rng) override;
  void Observe(std::optional<double> price,
               const RoundOutcome& outcome) override;
  std::vector<double> DualPath() const override { return mu_path_; }
  std::unique_ptr<Strategy> CloneFresh() const override;

  const PacingState& state() const { return state_; }

 private:
  PacingState initial_;
  PacingState state_;
  std::vector<double> mu_path_;
  bool awaiting_feedback_ = false;
};

// ---------------------------------------------------------------------------
// Static throttling: enter independently with probability π(v).
// ---------------------------------------------------------------------------

using ParticipationFn = std::function<double(double value)>;

class StaticThrottleStrategy final : public Strategy {
 public:
  StaticThrottleStrategy(std::string name, ParticipationFn participation);

  std::string name() const override { return name_; }
  Action Decide(int64_t round, double value, double remaining_budget,
                Rng& rng) override;
  void Observe(std::optional<double>, const RoundOutcome&) override {}
  std::unique_ptr<Strategy> CloneFresh() const override;

 private:
  std::string name_;
  ParticipationFn participation_;
};

// Throws std::invalid_argument if π maps any probed value outside [0, 1]
// at decision time.
std::unique_ptr<Strategy> MakeStaticThrottle(ParticipationFn participation,
                                             std::string name = "static");
std::unique_ptr<Strategy> MakeAlwaysEnter();
std::unique_ptr<Strategy> MakeAlwaysSkip();

// Participation function that looks up π on a finite value support; values
// off the support get probability 0.
ParticipationFn TabulatedParticipation(std::vector<double> support,
                                       std::vector<double> probabilities);

}  // namespace throttlesim

#endif  // THROTTLESIM_STRATEGIES_H_
