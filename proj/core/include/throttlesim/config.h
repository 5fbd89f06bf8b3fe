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

#ifndef THROTTLESIM_CONFIG_H_
#define THROTTLESIM_CONFIG_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "throttlesim/instances.h"
#include "throttlesim/model.h"

namespace throttlesim {

// Raised for malformed or inconsistent experiment configurations and
// instance specifications.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One strategy cell of an experiment, from a '[strategy NAME]' section.
struct StrategySpec {
  std::string name;
  // ogdcb | pacing | static | always_enter | always_skip
  std::string kind;
  std::map<std::string, std::string> params;
  // Overrides the experiment's feedback mode for this strategy.
  std::optional<InfoMode> info_mode;
};

struct ExperimentConfig {
  std::string experiment_id = "experiment";
  std::string instance;  // instance spec, see MakeInstanceFromSpec
  std::vector<StrategySpec> strategies;
  std::vector<int64_t> horizons;
  int64_t replications = 1;
  uint64_t base_seed = 1;
  InfoMode info_mode = InfoMode::kFull;
  std::string output;         // CSV path; empty writes to stdout
  std::string svg;            // optional SVG chart of mean regret vs T
  std::string slope_output;   // optional slope-fit text file
  int threads = 0;            // 0 = hardware concurrency
  std::optional<double> mu;   // competitive-ratio target; default rho/vmax
  bool hindsight = true;      // solve the hindsight knapsack per episode
  bool check_invariants = true;

  // Throws ConfigError unless there is at least one strategy and horizon,
  // horizons are strictly ascending and positive, and replications >= 1.
  void Validate() const;
};

// Grammar (one 'key = value' per line; '#' starts a comment):
//
//   experiment_id = <word>
//   instance      = <instance spec>
//   horizons      = <T1>, <T2>, ...
//   replications  = <n>
//   base_seed     = <u64>
//   info_mode     = full | partial
//   output        = <csv path>
//   svg           = <svg path>
//   slope_output  = <text path>
//   threads       = <n>
//   mu            = <double>
//   hindsight     = true | false
//   invariants    = true | false
//
//   [strategy <name>]
//   kind      = ogdcb | pacing | static | always_enter | always_skip
//   info_mode = full | partial        (optional override)
//   step      = <double>              (pacing; default 1/(vmax sqrt T))
//   mu_max    = <double>              (pacing; default vmax/rho - 1)
//   prob      = <double>              (static; constant participation)
//   policy    = fluid                 (static; the fluid-optimal π)
ExperimentConfig ParseExperimentConfig(std::istream& is);
ExperimentConfig ParseExperimentConfigFile(const std::string& path);

// Instance specs:
//   thm1
//   thm2 rho=<r> vmax=<v> delta=<d>
//   thm3 mu=<mu>
//   gap
//   singleton
//   random seed=<s> nf=<n> ng=<n> rho=<r> [vmax=<v>]
//   file:<path>          (i.i.d. file instances take the requested T)
// Throws ConfigError on unknown names or bad parameters.
Instance MakeInstanceFromSpec(const std::string& spec, int64_t horizon);

// Builds a fresh strategy for . Throws ConfigError on unknown
// kinds, bad parameters, or a fluid policy on a non-i.i.d. instance.
std::unique_ptr<Strategy> MakeStrategy(const StrategySpec& spec,
                                       const Instance& instance);

}  // namespace throttlesim

#endif  // THROTTLESIM_CONFIG_H_
