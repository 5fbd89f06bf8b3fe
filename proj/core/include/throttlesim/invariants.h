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

#ifndef THROTTLESIM_INVARIANTS_H_
#define THROTTLESIM_INVARIANTS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "throttlesim/model.h"
#include "throttlesim/strategies.h"

namespace throttlesim {

// Collected violations of structural properties; empty means all held.
struct InvariantReport {
  std::vector<std::string> violations;
  int64_t episodes_checked = 0;

  bool ok() const { return violations.empty(); }
  void Add(std::string what) { violations.push_back(std::move(what)); }
  void Merge(const InvariantReport& other);
};

// Guaranteed participation rate of OGD-CB under partial feedback:
//   C_e = min{(1/2)(rho/vmax)^2, (sqrt(2)/4)(rho/vmax)}.
double EnteringFrequencyConstant(double rho, double vmax);

// min over t in [2, consulted rounds] of |I_t| / (t - 1), where |I_t| counts
// earlier rounds whose price the strategy observed (every round under full
// feedback, entered rounds under partial feedback). NaN with fewer than two
// consulted rounds.
double MinEnteringRatio(const Trajectory& trajectory, InfoMode mode);

// Properties every episode must satisfy, whatever the strategy:
// length T, cumulative spend <= rho T, per-round settlement consistent with
// the recorded decision, totals equal to the per-round sums, no decisions
// after the stop round.
void CheckTrajectory(const Trajectory& trajectory, const EpisodeConfig& config,
                     InvariantReport& report);

// OGD-CB-specific properties, from the strategy's step log:
//   * lambda_t in [0, vmax/rho - 1] on the whole dual path;
//   * lambda_t = 0 and v_t > 0 imply entry;
//   * partial feedback: |I_t| >= C_e (t - 1) for every consulted t >= 2;
//   * the path-wise OGD inequality for lambda in {0, vmax/rho - 1}:
//       Σ_{t=2}^{T0} lambda_t g_t >= lambda Σ g_t
//           - ((vmax/rho - 1)^2 / eta_{T0} + vmax^2 Σ eta_t),
//     with g_t = x_t c~_t - rho and T0 the stop round.
void CheckOgdCb(const OgdCbStrategy& strategy, const Trajectory& trajectory,
                const EpisodeConfig& config, InvariantReport& report);

}  // namespace throttlesim

#endif  // THROTTLESIM_INVARIANTS_H_
