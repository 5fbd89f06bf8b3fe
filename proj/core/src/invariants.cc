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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "throttlesim/budget.h"

namespace throttlesim {
namespace {

constexpr double kRelTol = 1e-9;

std::string Where(const EpisodeConfig& config, int64_t round) {
  std::ostringstream os;
  os << "[seed " << config.seed << ", T " << config.horizon << ", "
     << InfoModeName(config.info_mode) << ", round " << round << "] ";
  return os.str();
}

}  // namespace

void InvariantReport::Merge(const InvariantReport& other) {
  violations.insert(violations.end(), other.violations.begin(),
                    other.violations.end());
  episodes_checked += other.episodes_checked;
}

double EnteringFrequencyConstant(double rho, double vmax) {
  const double r = rho / vmax;
  return std::min(0.5 * r * r, std::sqrt(2.0) / 4.0 * r);
}

double MinEnteringRatio(const Trajectory& trajectory, InfoMode mode) {
  double best = std::numeric_limits<double>::quiet_NaN();
  int64_t observed = 0;
  for (int64_t t = 1; t <= trajectory.decision_rounds; ++t) {
    if (t >= 2) {
      const double ratio =
          static_cast<double>(observed) / static_cast<double>(t - 1);
      best = std::isnan(best) ? ratio : std::min(best, ratio);
    }
    const RoundOutcome& r = trajectory.rounds[static_cast<std::size_t>(t - 1)];
    if (mode == InfoMode::kFull || r.decision) ++observed;
  }
  return best;
}

void CheckTrajectory(const Trajectory& trajectory, const EpisodeConfig& config,
                     InvariantReport& report) {
  ++report.episodes_checked;
  if (trajectory.horizon() != config.horizon) {
    report.Add(Where(config, 0) + "trajectory length differs from T");
    return;
  }
  const double budget = config.budget();
  double reward = 0.0, cost = 0.0, largest = 0.0;
  int64_t last_decision = 0;
  for (int64_t t = 1; t <= trajectory.horizon(); ++t) {
    const RoundOutcome& r = trajectory.rounds[static_cast<std::size_t>(t - 1)];
    const bool win = r.decision && r.value >= r.price;
    const double want_reward = win ? r.value - r.price : 0.0;
    const double want_cost = win ? r.price : 0.0;
    if (r.reward != want_reward || r.cost != want_cost) {
      report.Add(Where(config, t) + "settlement inconsistent with decision");
    }
    if (r.decision && t > trajectory.decision_rounds) {
      report.Add(Where(config, t) + "decision recorded after the budget stop");
    }
    if (r.decision) last_decision = t;
    reward += r.reward;
    cost += r.cost;
    largest = std::max({largest, std::abs(reward), cost});
  }
  if (last_decision != trajectory.stop_round) {
    report.Add(Where(config, 0) + "stop_round is not the last entered round");
  }
  const double tol = kRelTol * std::max(1.0, largest);
  if (std::abs(reward - trajectory.total_reward) > tol ||
      std::abs(cost - trajectory.total_cost) > tol) {
    report.Add(Where(config, 0) + "totals differ from the per-round sums");
  }
  if (cost > budget + BudgetSlack(budget)) {
    std::ostringstream os;
    os << "cumulative spend " << cost << " exceeds budget " << budget;
    report.Add(Where(config, 0) + os.str());
  }
}

void CheckOgdCb(const OgdCbStrategy& strategy, const Trajectory& trajectory,
                const EpisodeConfig& config, InvariantReport& report) {
  const double rho = config.budget_rate;
  const double vmax = config.value_ceiling;
  const double lambda_max = vmax / rho - 1.0;
  const double lambda_tol = kRelTol * std::max(1.0, lambda_max);

  for (std::size_t i = 0; i < trajectory.dual_path.size(); ++i) {
    const double l = trajectory.dual_path[i];
    if (!(l >= 0.0 && l <= lambda_max + lambda_tol)) {
      std::ostringstream os;
      os << "lambda_" << i + 1 << " = " << l << " outside [0, " << lambda_max
         << "]";
      report.Add(Where(config, static_cast<int64_t>(i + 1)) + os.str());
    }
  }

  const double entering = EnteringFrequencyConstant(rho, vmax);
  const bool partial = config.info_mode == InfoMode::kPartial;
  const int64_t t0 = trajectory.stop_round;
  double sum_lambda_g = 0.0, sum_g = 0.0, sum_eta = 0.0, eta_t0 = 0.0;
  double scale = 1.0;
  for (const OgdCbStep& s : strategy.steps()) {
    const double value =
        trajectory.rounds[static_cast<std::size_t>(s.round - 1)].value;
    if (s.lambda_before == 0.0 && value > 0.0 && !s.decision) {
      report.Add(Where(config, s.round) + "lambda = 0 but the round was skipped");
    }
    if (partial && s.round >= 2 &&
        static_cast<double>(s.sample_count) <
            entering * static_cast<double>(s.round - 1)) {
      std::ostringstream os;
      os << "|I_t| = " << s.sample_count << " < C_e (t-1) = "
         << entering * static_cast<double>(s.round - 1);
      report.Add(Where(config, s.round) + os.str());
    }
    if (s.exploration || s.round > t0) continue;
    const double g = (s.decision ? s.cost_estimate : 0.0) - rho;
    sum_lambda_g += s.lambda_before * g;
    sum_g += g;
    sum_eta += s.step_size;
    eta_t0 = s.step_size;
    scale = std::max({scale, std::abs(sum_lambda_g), std::abs(sum_g)});
  }
  if (t0 >= 2 && eta_t0 > 0.0) {
    const double slack =
        lambda_max * lambda_max / eta_t0 + vmax * vmax * sum_eta;
    for (double comparator : {0.0, lambda_max}) {
      const double rhs = comparator * sum_g - slack;
      if (sum_lambda_g < rhs - kRelTol * scale * std::max(1.0, lambda_max)) {
        std::ostringstream os;
        os << "OGD path inequality fails at lambda = " << comparator << ": "
           << sum_lambda_g << " < " << rhs;
        report.Add(Where(config, t0) + os.str());
      }
    }
  }
}

}  // namespace throttlesim
