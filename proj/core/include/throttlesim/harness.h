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

#ifndef THROTTLESIM_HARNESS_H_
#define THROTTLESIM_HARNESS_H_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "throttlesim/config.h"
#include "throttlesim/instances.h"
#include "throttlesim/invariants.h"
#include "throttlesim/model.h"

namespace throttlesim {

// Per-episode summary kept by the harness.
struct EpisodeRecord {
  uint64_t seed = 0;
  double reward = 0.0;
  double cost = 0.0;
  double hindsight = 0.0;  // NaN when the hindsight solve is disabled
  bool hindsight_exact = true;
  double regret = 0.0;
  double entering_ratio = 0.0;  // NaN with fewer than two consulted rounds
  int64_t stop_round = 0;
  std::optional<std::size_t> mixture_component;
};

// Everything needed to run one (instance, strategy, mode, T) cell.
struct CellSpec {
  std::string experiment_id = "experiment";
  Instance instance;
  StrategySpec strategy;
  std::size_t strategy_index = 0;  // enters the seed derivation
  InfoMode info_mode = InfoMode::kFull;
  int64_t replications = 1;
  uint64_t base_seed = 1;
  std::optional<double> mu;  // default rho / vmax
  bool hindsight = true;
  bool check_invariants = true;
  int threads = 1;  // 0 = hardware concurrency
};

// Aggregates of one cell; one CSV row.
struct CellResult {
  std::string experiment_id;
  std::string instance;
  std::string strategy;
  InfoMode info_mode = InfoMode::kFull;
  int64_t horizon = 0;
  int64_t replications = 0;
  double mean_reward = 0.0;
  double se_reward = 0.0;
  double opt_fluid = 0.0;  // T * fluid per-round value; NaN if not i.i.d.
  double opt_dlp = 0.0;    // T * DLP per-round value; NaN if not i.i.d.
  double mean_hindsight = 0.0;
  double mean_regret = 0.0;
  double se_regret = 0.0;
  double mu = 0.0;
  double mean_gap_mu = 0.0;  // mean (R - mu R^H) / T
  double mean_ratio = 0.0;   // mean R / R^H over episodes with R^H > 0
  int64_t ratio_excluded = 0;
  double min_entering_ratio = 0.0;
  double mean_stop_round = 0.0;
  int64_t hindsight_inexact = 0;
  InvariantReport invariants;
};

// Episode seed: hash(base, T, strategy index, replication).
uint64_t EpisodeSeed(uint64_t base_seed, int64_t horizon,
                     std::size_t strategy_index, int64_t replication);

// Runs every replication of a cell. Episodes may run on several threads;
// results are folded in replication order, so the outcome does not depend on
// the thread count. Regret is measured against the fluid benchmark on i.i.d.
// instances and against the realized hindsight optimum otherwise. When
// `episodes` is given it receives one record per replication, in order.
CellResult RunCell(const CellSpec& spec,
                   std::vector<EpisodeRecord>* episodes = nullptr);

struct CompetitiveRatioStats {
  double mean_ratio = 0.0;  // NaN if every episode was excluded
  int64_t excluded = 0;     // episodes with R^H = 0
  double mean_gap = 0.0;    // mean (R - mu R^H) / T
};

// Paired per-episode rewards and hindsight values.
CompetitiveRatioStats CompetitiveRatioCell(std::span<const double> rewards,
                                           std::span<const double> hindsight,
                                           double mu, int64_t horizon);

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double ci_low = 0.0;   // 2.5% residual-bootstrap quantile
  double ci_high = 0.0;  // 97.5% residual-bootstrap quantile
  int points_used = 0;
  int points_excluded = 0;  // nonpositive regret
};

// Least squares of ln(regret) on ln(T); the interval comes from a residual
// bootstrap. Nonpositive points are dropped (and counted); throws
// std::invalid_argument when fewer than four remain.
SlopeFit FitSlope(std::span<const std::pair<double, double>> points,
                  int resamples = 1000, uint64_t seed = 0x5eed);

struct Report {
  std::vector<CellResult> cells;
  // Keyed by (strategy, info mode name); present when >= 4 horizons have
  // positive mean regret.
  std::map<std::pair<std::string, std::string>, SlopeFit> slopes;
  std::vector<std::string> warnings;
  InvariantReport invariants;
};

// Runs all cells in (horizon, strategy) order. Throws ConfigError on a bad
// configuration.
Report RunExperiment(const ExperimentConfig& config);

struct ValidateOptions {
  int seeds = 20;  // episodes per (instance, strategy, mode, T)
  std::vector<int64_t> horizons = {256, 1024, 4096};
  uint64_t base_seed = 2026;
  int threads = 0;
};

// The full structural check suite: the binomial identity behind the regret
// lower bound for T = 4..128, LP and hindsight consistency on random instances,
// replay determinism, and trajectory/OGD-CB invariants on every shipped
// instance under both feedback modes. Progress goes to `log`.
InvariantReport RunValidationSuite(const ValidateOptions& options,
                                   std::ostream& log);

}  // namespace throttlesim

#endif  // THROTTLESIM_HARNESS_H_
