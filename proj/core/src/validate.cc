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

// The structural check suite behind `throttlesim validate`.

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "throttlesim/benchmarks.h"
#include "throttlesim/harness.h"
#include "throttlesim/instances.h"
#include "throttlesim/strategies.h"

namespace throttlesim {
namespace {

void CheckIdentity(InvariantReport& report, std::ostream& log) {
  int checked = 0;
  for (int64_t t = 4; t <= 128; t += 4) {
    const Thm1LowerBound lb = Thm1RegretLowerBound(t);
    if (lb.sum != lb.closed_form) {
      report.Add("binomial identity fails at T = " + std::to_string(t));
    }
    ++checked;
  }
  log << "identity: " << checked << " horizons checked\n";
}

void CheckBenchmarks(const ValidateOptions& options, InvariantReport& report,
                     std::ostream& log) {
  int checked = 0;
  for (int k = 0; k < 40; ++k) {
    const uint64_t seed = DeriveSeed(options.base_seed, {100, uint64_t(k)});
    const double rho = 0.1 + 0.05 * (k % 8);
    const Instance inst =
        MakeRandomInstance(seed, 1 + k % 4, 1 + (k / 4) % 4, rho, 12);
    const auto& f = *inst.value_distribution();
    const auto& g = *inst.price_distribution();
    const FluidSolution fluid = FluidOpt(f, g, rho);
    const DlpSolution dlp = DlpOpt(f, g, rho);
    const std::string where = "random instance " + std::to_string(k) + ": ";
    if (fluid.expected_spend > rho + kSpendTolerance ||
        dlp.expected_spend > rho + kSpendTolerance) {
      report.Add(where + "LP solution overspends");
    }
    if (dlp.per_round_value < fluid.per_round_value - 1e-12) {
      report.Add(where + "deterministic LP below the fluid benchmark");
    }
    for (double pi : fluid.policy) {
      if (!(pi >= 0.0 && pi <= 1.0)) report.Add(where + "policy outside [0,1]");
    }
    // Hindsight on a sampled trace: exact, within its bracket, and not above
    // the exhaustive optimum on this small horizon.
    EpisodeStreams streams(seed);
    std::vector<double> v(12), p(12);
    for (int t = 0; t < 12; ++t) {
      v[t] = f.Sample(streams.values);
      p[t] = g.Sample(streams.prices);
    }
    const HindsightResult h = HindsightOpt(v, p, inst.budget(), inst.price_grid);
    double best = 0.0;
    for (uint32_t mask = 0; mask < (1u << 12); ++mask) {
      double cost = 0.0, value = 0.0;
      for (int t = 0; t < 12; ++t) {
        if (mask >> t & 1u) {
          cost += p[t];
          value += std::max(0.0, v[t] - p[t]);
        }
      }
      if (cost <= inst.budget() + 1e-9) best = std::max(best, value);
    }
    if (!h.exact || std::abs(h.value - best) > 1e-9) {
      std::ostringstream os;
      os << where << "hindsight " << h.value << " != exhaustive " << best;
      report.Add(os.str());
    }
    ++checked;
  }
  log << "benchmarks: " << checked << " random instances checked\n";
}

struct NamedInstance {
  std::string label;
  Instance instance;
};

std::vector<NamedInstance> ShippedInstances(int64_t horizon, uint64_t seed) {
  std::vector<NamedInstance> out;
  const int64_t t4 = horizon - horizon % 4;
  out.push_back({"thm1", MakeThm1Instance(t4)});
  out.push_back({"thm2", MakeThm2Instance(0.5, 1.0, 0.5, horizon)});
  out.push_back({"thm3", MakeThm3Adversary(1.0, horizon)});
  out.push_back({"gap", MakeGapInstance(horizon)});
  out.push_back({"singleton", MakeSingletonPriceInstance(horizon)});
  out.push_back({"random", MakeRandomInstance(seed, 3, 4, 0.2, horizon)});
  return out;
}

void CheckEpisodes(const ValidateOptions& options, InvariantReport& report,
                   std::ostream& log) {
  const std::vector<StrategySpec> strategies = {
      {"ogdcb", "ogdcb", {}, {}},
      {"pacing", "pacing", {}, {}},
      {"static_half", "static", {{"prob", "0.5"}}, {}},
      {"always_enter", "always_enter", {}, {}},
  };
  for (const int64_t horizon : options.horizons) {
    for (const NamedInstance& ni : ShippedInstances(
             horizon, DeriveSeed(options.base_seed, {200, uint64_t(horizon)}))) {
      for (InfoMode mode : {InfoMode::kFull, InfoMode::kPartial}) {
        for (std::size_t s = 0; s < strategies.size(); ++s) {
          CellSpec spec;
          spec.experiment_id = "validate";
          spec.instance = ni.instance;
          spec.strategy = strategies[s];
          spec.strategy_index = s;
          spec.info_mode = mode;
          spec.replications = options.seeds;
          spec.base_seed = options.base_seed;
          spec.threads = options.threads;
          const CellResult cell = RunCell(spec);
          report.Merge(cell.invariants);
          if (cell.hindsight_inexact > 0) {
            report.Add(ni.label + ": hindsight fell back to the bracket path");
          }
        }
      }
      log << "episodes: " << ni.label << " T=" << horizon << " ok so far ("
          << report.violations.size() << " violations)\n";
    }
  }
}

void CheckReplay(const ValidateOptions& options, InvariantReport& report,
                 std::ostream& log) {
  const Instance inst = MakeRandomInstance(options.base_seed, 3, 3, 0.25, 2000);
  for (InfoMode mode : {InfoMode::kFull, InfoMode::kPartial}) {
    const EpisodeConfig config =
        EpisodeConfig::ForInstance(inst, mode, options.base_seed);
    OgdCbStrategy a(inst.horizon, inst.rho, inst.vmax);
    OgdCbStrategy b(inst.horizon, inst.rho, inst.vmax);
    const Trajectory ta = RunEpisode(a, inst, config);
    const Trajectory tb = RunEpisode(b, inst, config);
    bool same = ta.total_reward == tb.total_reward &&
                ta.dual_path == tb.dual_path && ta.stop_round == tb.stop_round;
    for (std::size_t i = 0; same && i < ta.rounds.size(); ++i) {
      same = ta.rounds[i].value == tb.rounds[i].value &&
             ta.rounds[i].price == tb.rounds[i].price &&
             ta.rounds[i].decision == tb.rounds[i].decision;
    }
    if (!same) {
      report.Add("replay differs under " + std::string(InfoModeName(mode)));
    }
  }
  log << "replay: deterministic re-runs compared\n";
}

}  // namespace

InvariantReport RunValidationSuite(const ValidateOptions& options,
                                   std::ostream& log) {
  InvariantReport report;
  CheckIdentity(report, log);
  CheckBenchmarks(options, report, log);
  CheckReplay(options, report, log);
  CheckEpisodes(options, report, log);
  return report;
}

}  // namespace throttlesim
