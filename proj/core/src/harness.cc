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

#include "throttlesim/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "throttlesim/benchmarks.h"
#include "throttlesim/rng.h"
#include "throttlesim/strategies.h"

namespace throttlesim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

MeanSe Summarize(const std::vector<double>& xs) {
  MeanSe out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(ss / static_cast<double>(xs.size() - 1) /
                       static_cast<double>(xs.size()));
  }
  return out;
}

int ResolveThreads(int requested, int64_t work) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(1, n);
  return static_cast<int>(std::min<int64_t>(n, work));
}

}  // namespace

uint64_t EpisodeSeed(uint64_t base_seed, int64_t horizon,
                     std::size_t strategy_index, int64_t replication) {
  return DeriveSeed(base_seed, {static_cast<uint64_t>(horizon),
                                static_cast<uint64_t>(strategy_index),
                                static_cast<uint64_t>(replication)});
}

CellResult RunCell(const CellSpec& spec, std::vector<EpisodeRecord>* episodes) {
  if (spec.replications < 1) {
    throw std::invalid_argument("run_cell: replications must be >= 1");
  }
  const Instance& inst = spec.instance;
  const int64_t horizon = inst.horizon;
  const std::unique_ptr<Strategy> prototype = MakeStrategy(spec.strategy, inst);

  CellResult cell;
  cell.experiment_id = spec.experiment_id;
  cell.instance = inst.name;
  cell.strategy = spec.strategy.name;
  cell.info_mode = spec.info_mode;
  cell.horizon = horizon;
  cell.replications = spec.replications;
  cell.mu = spec.mu.value_or(inst.rho / inst.vmax);
  cell.opt_fluid = kNaN;
  cell.opt_dlp = kNaN;
  double fluid_per_round = kNaN;
  if (inst.IsStochastic()) {
    const auto& f = *inst.value_distribution();
    const auto& g = *inst.price_distribution();
    fluid_per_round = FluidOpt(f, g, inst.rho).per_round_value;
    cell.opt_fluid = static_cast<double>(horizon) * fluid_per_round;
    cell.opt_dlp =
        static_cast<double>(horizon) * DlpOpt(f, g, inst.rho).per_round_value;
  }
  const bool need_hindsight = spec.hindsight || !inst.IsStochastic();

  const auto reps = static_cast<std::size_t>(spec.replications);
  std::vector<EpisodeRecord> records(reps);
  std::vector<InvariantReport> reports(reps);
  std::vector<std::string> errors(reps);
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        EpisodeRecord& rec = records[r];
        rec.seed = EpisodeSeed(spec.base_seed, horizon, spec.strategy_index,
                               static_cast<int64_t>(r));
        const EpisodeConfig config =
            EpisodeConfig::ForInstance(inst, spec.info_mode, rec.seed);
        std::unique_ptr<Strategy> strategy = prototype->CloneFresh();
        const Trajectory traj = RunEpisode(*strategy, inst, config);
        rec.reward = traj.total_reward;
        rec.cost = traj.total_cost;
        rec.stop_round = traj.stop_round;
        rec.mixture_component = traj.mixture_component;
        rec.entering_ratio = MinEnteringRatio(traj, spec.info_mode);
        rec.hindsight = kNaN;
        if (need_hindsight) {
          const HindsightResult h =
              HindsightOpt(traj, config.budget(), inst.price_grid);
          rec.hindsight = h.value;
          rec.hindsight_exact = h.exact;
        }
        rec.regret = inst.IsStochastic()
                         ? Regret(traj, fluid_per_round)
                         : rec.hindsight - rec.reward;
        if (spec.check_invariants) {
          CheckTrajectory(traj, config, reports[r]);
          if (const auto* ogd = dynamic_cast<const OgdCbStrategy*>(strategy.get())) {
            CheckOgdCb(*ogd, traj, config, reports[r]);
          }
        }
      } catch (const std::exception& e) {
        errors[r] = e.what();
      }
    }
  };
  const int n_threads = ResolveThreads(spec.threads, spec.replications);
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  for (const std::string& e : errors) {
    if (!e.empty()) throw std::runtime_error("episode failed: " + e);
  }

  std::vector<double> rewards, regrets, hindsights, stops;
  double min_ratio = kNaN;
  for (std::size_t r = 0; r < reps; ++r) {
    const EpisodeRecord& rec = records[r];
    rewards.push_back(rec.reward);
    regrets.push_back(rec.regret);
    hindsights.push_back(rec.hindsight);
    stops.push_back(static_cast<double>(rec.stop_round));
    if (!rec.hindsight_exact) ++cell.hindsight_inexact;
    if (!std::isnan(rec.entering_ratio)) {
      min_ratio = std::isnan(min_ratio) ? rec.entering_ratio
                                        : std::min(min_ratio, rec.entering_ratio);
    }
    cell.invariants.Merge(reports[r]);
  }
  const MeanSe reward = Summarize(rewards);
  const MeanSe regret = Summarize(regrets);
  cell.mean_reward = reward.mean;
  cell.se_reward = reward.se;
  cell.mean_regret = regret.mean;
  cell.se_regret = regret.se;
  cell.mean_stop_round = Summarize(stops).mean;
  cell.min_entering_ratio = min_ratio;
  if (need_hindsight) {
    cell.mean_hindsight = Summarize(hindsights).mean;
    const CompetitiveRatioStats cr =
        CompetitiveRatioCell(rewards, hindsights, cell.mu, horizon);
    cell.mean_gap_mu = cr.mean_gap;
    cell.mean_ratio = cr.mean_ratio;
    cell.ratio_excluded = cr.excluded;
  } else {
    cell.mean_hindsight = kNaN;
    cell.mean_gap_mu = kNaN;
    cell.mean_ratio = kNaN;
  }
  if (episodes != nullptr) *episodes = std::move(records);
  return cell;
}

CompetitiveRatioStats CompetitiveRatioCell(std::span<const double> rewards,
                                           std::span<const double> hindsight,
                                           double mu, int64_t horizon) {
  if (rewards.size() != hindsight.size() || rewards.empty() || horizon < 1) {
    throw std::invalid_argument("competitive ratio: bad input");
  }
  CompetitiveRatioStats out;
  double ratio_sum = 0.0, gap_sum = 0.0;
  int64_t ratio_n = 0;
  for (std::size_t i = 0; i < rewards.size(); ++i) {
    gap_sum += (rewards[i] - mu * hindsight[i]) / static_cast<double>(horizon);
    if (hindsight[i] > 0.0) {
      ratio_sum += rewards[i] / hindsight[i];
      ++ratio_n;
    } else {
      ++out.excluded;
    }
  }
  out.mean_gap = gap_sum / static_cast<double>(rewards.size());
  out.mean_ratio =
      ratio_n > 0 ? ratio_sum / static_cast<double>(ratio_n) : kNaN;
  return out;
}

SlopeFit FitSlope(std::span<const std::pair<double, double>> points,
                  int resamples, uint64_t seed) {
  SlopeFit fit;
  std::vector<double> x, y;
  for (const auto& [t, regret] : points) {
    if (t > 0.0 && regret > 0.0) {
      x.push_back(std::log(t));
      y.push_back(std::log(regret));
    } else {
      ++fit.points_excluded;
    }
  }
  fit.points_used = static_cast<int>(x.size());
  if (x.size() < 4) {
    throw std::invalid_argument("fit_slope: need at least 4 positive points");
  }
  const auto ols = [&x](const std::vector<double>& ys) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      mx += x[i];
      my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      sxy += (x[i] - mx) * (ys[i] - my);
      sxx += (x[i] - mx) * (x[i] - mx);
    }
    if (sxx <= 0.0) throw std::invalid_argument("fit_slope: all T equal");
    const double slope = sxy / sxx;
    return std::make_pair(slope, my - slope * mx);
  };
  std::tie(fit.slope, fit.intercept) = ols(y);
  std::vector<double> resid(x.size()), fitted(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    fitted[i] = fit.intercept + fit.slope * x[i];
    resid[i] = y[i] - fitted[i];
  }
  Rng rng(seed);
  std::vector<double> slopes;
  slopes.reserve(static_cast<std::size_t>(std::max(resamples, 0)));
  std::vector<double> yb(x.size());
  for (int b = 0; b < resamples; ++b) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      yb[i] = fitted[i] + resid[rng.UniformInt(resid.size())];
    }
    slopes.push_back(ols(yb).first);
  }
  if (slopes.empty()) {
    fit.ci_low = fit.ci_high = fit.slope;
  } else {
    std::sort(slopes.begin(), slopes.end());
    const auto at = [&](double q) {
      const auto idx = static_cast<std::size_t>(
          std::floor(q * static_cast<double>(slopes.size() - 1)));
      return slopes[idx];
    };
    fit.ci_low = at(0.025);
    fit.ci_high = at(0.975);
  }
  return fit;
}

Report RunExperiment(const ExperimentConfig& config) {
  config.Validate();
  Report report;
  for (const int64_t horizon : config.horizons) {
    const Instance inst = MakeInstanceFromSpec(config.instance, horizon);
    for (std::size_t s = 0; s < config.strategies.size(); ++s) {
      CellSpec spec;
      spec.experiment_id = config.experiment_id;
      spec.instance = inst;
      spec.strategy = config.strategies[s];
      spec.strategy_index = s;
      spec.info_mode = config.strategies[s].info_mode.value_or(config.info_mode);
      spec.replications = config.replications;
      spec.base_seed = config.base_seed;
      spec.mu = config.mu;
      spec.hindsight = config.hindsight;
      spec.check_invariants = config.check_invariants;
      spec.threads = config.threads;
      CellResult cell = RunCell(spec);
      if (cell.hindsight_inexact > 0) {
        report.warnings.push_back(
            "cell " + cell.strategy + " T=" + std::to_string(horizon) + ": " +
            std::to_string(cell.hindsight_inexact) +
            " hindsight values are greedy lower bounds (prices off the grid)");
      }
      report.invariants.Merge(cell.invariants);
      report.cells.push_back(std::move(cell));
    }
  }
  std::map<std::pair<std::string, std::string>,
           std::vector<std::pair<double, double>>>
      series;
  for (const CellResult& c : report.cells) {
    series[{c.strategy, std::string(InfoModeName(c.info_mode))}].push_back(
        {static_cast<double>(c.horizon), c.mean_regret});
  }
  for (const auto& [key, pts] : series) {
    int positive = 0;
    for (const auto& p : pts) positive += p.second > 0.0 ? 1 : 0;
    if (positive < 4) continue;
    if (positive < static_cast<int>(pts.size())) {
      report.warnings.push_back("slope fit for " + key.first + ": " +
                                std::to_string(pts.size() - positive) +
                                " nonpositive mean-regret points excluded");
    }
    report.slopes[key] = FitSlope(pts, 1000, config.base_seed);
  }
  return report;
}

}  // namespace throttlesim
