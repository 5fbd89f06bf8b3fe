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

// Command-line front end:
//   throttlesim run <config>
//   throttlesim bench <instance-spec> <T>
//   throttlesim identity-check <Tmax>
//   throttlesim validate
//
// Exit codes: 0 success, 1 configuration or usage error, 2 invariant
// violation.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "throttlesim/benchmarks.h"
#include "throttlesim/config.h"
#include "throttlesim/harness.h"
#include "throttlesim/report.h"
#include "throttlesim/strategies.h"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kInvariantViolation = 2;

int PrintViolations(const throttlesim::InvariantReport& report) {
  constexpr std::size_t kShown = 20;
  for (std::size_t i = 0; i < report.violations.size() && i < kShown; ++i) {
    std::cerr << "violation: " << report.violations[i] << '\n';
  }
  if (report.violations.size() > kShown) {
    std::cerr << "... and " << report.violations.size() - kShown << " more\n";
  }
  return report.ok() ? kOk : kInvariantViolation;
}

int Run(const std::string& path) {
  const throttlesim::ExperimentConfig config =
      throttlesim::ParseExperimentConfigFile(path);
  const throttlesim::Report report = throttlesim::RunExperiment(config);
  throttlesim::WriteReportFiles(config, report, std::cout);
  for (const std::string& w : report.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  throttlesim::WriteSlopes(config.output.empty() ? std::cerr : std::cout,
                           report);
  return PrintViolations(report.invariants);
}

int Bench(const std::string& spec, int64_t horizon, uint64_t seed) {
  using namespace throttlesim;
  const Instance inst = MakeInstanceFromSpec(spec, horizon);
  std::cout << "instance " << inst.name << "  T=" << inst.horizon
            << "  rho=" << inst.rho << "  vmax=" << inst.vmax
            << "  B=" << inst.budget() << '\n';
  std::cout.precision(10);
  if (inst.IsStochastic()) {
    const FluidSolution fluid = FluidOpt(*inst.value_distribution(),
                                         *inst.price_distribution(), inst.rho);
    const DlpSolution dlp = DlpOpt(*inst.value_distribution(),
                                   *inst.price_distribution(), inst.rho);
    std::cout << "fluid OPT   per round " << fluid.per_round_value << "  total "
              << fluid.per_round_value * static_cast<double>(horizon)
              << "  spend " << fluid.expected_spend
              << (fluid.binding ? "  (binding)" : "  (slack)") << '\n';
    for (std::size_t i = 0; i < fluid.support.size(); ++i) {
      std::cout << "  pi(" << fluid.support[i] << ") = " << fluid.policy[i]
                << '\n';
    }
    std::cout << "DLP OPT*    per round " << dlp.per_round_value << "  total "
              << dlp.per_round_value * static_cast<double>(horizon)
              << "  threshold " << dlp.shading_threshold << '\n';
  } else {
    std::cout << "fluid OPT / DLP OPT*: not defined (inputs are not i.i.d.)\n";
  }
  // One realized trace, generated while entering every round.
  auto strategy = MakeAlwaysEnter();
  const Trajectory traj = RunEpisode(
      *strategy, inst, EpisodeConfig::ForInstance(inst, InfoMode::kFull, seed));
  const HindsightResult h = HindsightOpt(traj, inst.budget(), inst.price_grid);
  std::cout << "hindsight   seed " << seed << "  value " << h.value
            << (h.exact ? "  (exact)" : "  (greedy; upper bound ")
            << (h.exact ? std::string() : std::to_string(h.upper_bound) + ")")
            << '\n';
  return kOk;
}

int IdentityCheck(int64_t tmax) {
  if (tmax < 4) throw throttlesim::ConfigError("Tmax must be >= 4");
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (int64_t t = 4; t <= tmax; t += 4) {
    const throttlesim::Thm1LowerBound lb = throttlesim::Thm1RegretLowerBound(t);
    const bool ok = lb.sum == lb.closed_form;
    failures += ok ? 0 : 1;
    std::cout << "T=" << t << "  sum=" << lb.sum << "  closed_form="
              << lb.closed_form << "  " << (ok ? "equal" : "DIFFERENT")
              << "  bound=" << lb.regret_bound << '\n';
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  std::cout << (failures == 0 ? "identity holds" : "identity FAILS") << " for "
            << tmax / 4 << " horizons in " << secs << " s\n";
  return failures == 0 ? kOk : kInvariantViolation;
}

int Validate(const throttlesim::ValidateOptions& options) {
  const throttlesim::InvariantReport report =
      throttlesim::RunValidationSuite(options, std::cout);
  std::cout << (report.ok() ? "validate: all invariants hold"
                            : "validate: invariant violations found")
            << " (" << report.episodes_checked << " episodes)\n";
  return PrintViolations(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained bidding simulator for repeated "
               "second-price auctions"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run an experiment config");
  run->add_option("config", config_path, "Experiment config file")->required();

  std::string instance_spec;
  int64_t bench_horizon = 0;
  uint64_t bench_seed = 1;
  auto* bench =
      app.add_subcommand("bench", "Print OPT, OPT* and one hindsight draw");
  bench->add_option("instance", instance_spec, "Instance spec")->required();
  bench->add_option("T", bench_horizon, "Horizon")->required();
  bench->add_option("--seed", bench_seed, "Seed of the hindsight draw");

  int64_t tmax = 0;
  auto* identity = app.add_subcommand(
      "identity-check", "Check the binomial identity for T = 4, 8, ..., Tmax");
  identity->add_option("Tmax", tmax, "Largest horizon")->required();

  throttlesim::ValidateOptions vopts;
  auto* validate = app.add_subcommand("validate", "Run the invariant suite");
  validate->add_option("--seeds", vopts.seeds, "Episodes per cell");
  validate->add_option("--horizons", vopts.horizons, "Horizons to simulate (comma-separated)")
      ->delimiter(',');
  validate->add_option("--seed", vopts.base_seed, "Base seed");
  validate->add_option("--threads", vopts.threads, "Worker threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return Run(config_path);
    if (*bench) return Bench(instance_spec, bench_horizon, bench_seed);
    if (*identity) return IdentityCheck(tmax);
    if (*validate) return Validate(vopts);
  } catch (const throttlesim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  }
  return kConfigError;
}
