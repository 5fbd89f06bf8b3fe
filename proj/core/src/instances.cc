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

#include "throttlesim/instances.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace throttlesim {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CheckSequence(const std::vector<double>& seq, const Instance& inst,
                   const char* what) {
  if (static_cast<int64_t>(seq.size()) != inst.horizon) {
    throw std::invalid_argument(std::string(what) +
                                ": fixed sequence length differs from T");
  }
  for (double x : seq) {
    if (!(x >= 0.0 && x <= inst.vmax)) {
      throw std::invalid_argument(std::string(what) +
                                  ": entry outside [0, vmax]");
    }
  }
}

void CheckDistribution(const DiscreteDistribution& d, const Instance& inst,
                       const char* what) {
  if (d.vmax() != inst.vmax) {
    throw std::invalid_argument(std::string(what) +
                                ": distribution ceiling differs from vmax");
  }
}

std::size_t SampleIndex(std::span<const double> weights, Rng& rng) {
  const double u = rng.Uniform01();
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  // Rounding left u above the final partial sum; pick the last positive one.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i] > 0.0) return i;
  }
  return weights.size() - 1;
}

}  // namespace

AdaptiveOracle AdaptiveOracle::EntryResponsive(double if_enter,
                                               double if_skip) {
  return AdaptiveOracle(
      "entry_responsive", {if_enter, if_skip},
      [if_enter, if_skip](int64_t round, std::span<const bool> entries) {
        const auto idx = static_cast<std::size_t>(round - 1);
        const bool entered = idx < entries.size() && entries[idx];
        return entered ? if_enter : if_skip;
      });
}

bool Instance::IsStochastic() const {
  return value_distribution() != nullptr && price_distribution() != nullptr;
}

const DiscreteDistribution* Instance::value_distribution() const {
  return std::get_if<DiscreteDistribution>(&values);
}

const DiscreteDistribution* Instance::price_distribution() const {
  return std::get_if<DiscreteDistribution>(&prices);
}

void Instance::Validate() const {
  if (horizon < 1) throw std::invalid_argument("instance: T must be >= 1");
  if (!(vmax > 0.0)) throw std::invalid_argument("instance: vmax must be > 0");
  if (!(rho > 0.0 && rho <= vmax)) {
    throw std::invalid_argument("instance: rho must lie in (0, vmax]");
  }
  if (budget() < vmax) {
    throw std::invalid_argument("instance: budget rho*T is below vmax");
  }
  if (price_grid < 0.0) {
    throw std::invalid_argument("instance: negative price grid");
  }
  std::visit(Overloaded{
                 [&](const FixedSequence& s) {
                   CheckSequence(s.points, *this, "values");
                 },
                 [&](const DiscreteDistribution& d) {
                   CheckDistribution(d, *this, "values");
                 },
                 [&](const SequenceMixture& m) {
                   if (m.sequences.empty() ||
                       m.sequences.size() != m.weights.size()) {
                     throw std::invalid_argument(
                         "values: mixture needs one weight per sequence");
                   }
                   double total = 0.0;
                   for (double w : m.weights) {
                     if (!(w >= 0.0)) {
                       throw std::invalid_argument(
                           "values: negative mixture weight");
                     }
                     total += w;
                   }
                   if (std::abs(total - 1.0) >
                       DiscreteDistribution::kWeightTolerance) {
                     throw std::invalid_argument(
                         "values: mixture weights do not sum to 1");
                   }
                   for (const auto& s : m.sequences) {
                     CheckSequence(s, *this, "values");
                   }
                 },
                 [](const AdaptiveOracle&) {},
             },
             values);
  std::visit(Overloaded{
                 [&](const FixedSequence& s) {
                   CheckSequence(s.points, *this, "prices");
                 },
                 [&](const DiscreteDistribution& d) {
                   CheckDistribution(d, *this, "prices");
                 },
                 [](const AdaptiveOracle&) {},
             },
             prices);
}

InputRealization::InputRealization(const Instance& instance, Rng& value_rng,
                                   Rng& price_rng)
    : instance_(&instance), value_rng_(&value_rng), price_rng_(&price_rng) {
  if (const auto* mix = std::get_if<SequenceMixture>(&instance.values)) {
    component_ = SampleIndex(mix->weights, *value_rng_);
  }
}

double InputRealization::Value(int64_t round,
                               std::span<const bool> entries_before) {
  const auto idx = static_cast<std::size_t>(round - 1);
  double v = std::visit(
      Overloaded{
          [&](const FixedSequence& s) { return s.points[idx]; },
          [&](const DiscreteDistribution& d) { return d.Sample(*value_rng_); },
          [&](const SequenceMixture& m) {
            return m.sequences[*component_][idx];
          },
          [&](const AdaptiveOracle& o) { return o(round, entries_before); },
      },
      instance_->values);
  if (!(v >= 0.0 && v <= instance_->vmax)) {
    throw std::out_of_range("value oracle left [0, vmax]");
  }
  return v;
}

double InputRealization::Price(int64_t round,
                               std::span<const bool> entries_through) {
  const auto idx = static_cast<std::size_t>(round - 1);
  double p = std::visit(
      Overloaded{
          [&](const FixedSequence& s) { return s.points[idx]; },
          [&](const DiscreteDistribution& d) { return d.Sample(*price_rng_); },
          [&](const AdaptiveOracle& o) { return o(round, entries_through); },
      },
      instance_->prices);
  if (!(p >= 0.0 && p <= instance_->vmax)) {
    throw std::out_of_range("price oracle left [0, vmax]");
  }
  return p;
}

Instance MakeThm1Instance(int64_t horizon) {
  if (horizon < 4 || horizon % 4 != 0) {
    throw std::invalid_argument("thm1 instance: T must be a positive multiple of 4");
  }
  Instance inst;
  inst.name = "thm1";
  inst.values = DiscreteDistribution::PointMass(1.0, 1.0);
  inst.prices = DiscreteDistribution::Uniform({1.0 / 3.0, 2.0 / 3.0}, 1.0);
  inst.horizon = horizon;
  inst.rho = 0.5;
  inst.vmax = 1.0;
  inst.price_grid = 1.0 / 3.0;
  inst.Validate();
  return inst;
}

Thm2Construction Thm2Parameters(double rho, double vmax, double delta,
                                int64_t horizon) {
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("thm2 instance: delta must lie in (0, 1)");
  }
  if (!(rho > 0.0 && rho <= vmax)) {
    throw std::invalid_argument("thm2 instance: rho must lie in (0, vmax]");
  }
  if (static_cast<double>(horizon) < vmax / rho) {
    throw std::invalid_argument("thm2 instance: T must be >= vmax / rho");
  }
  Thm2Construction c;
  c.m = static_cast<int>(std::ceil(vmax / rho)) + 1;
  c.epsilon = delta / (4.0 - 2.0 * delta);
  c.price = vmax / (1.0 + c.epsilon);
  c.batch_length = horizon / c.m;
  if (c.price * static_cast<double>(c.batch_length) >
      rho * static_cast<double>(horizon)) {
    throw std::invalid_argument(
        "thm2 instance: price * floor(T/m) exceeds the budget");
  }
  for (int j = 1; j <= c.m; ++j) {
    const double v = c.price * (1.0 + std::pow(c.epsilon, c.m + 1 - j));
    c.batch_values.push_back(std::min(v, vmax));
  }
  // q_1 = eps^{m-1}, q_i = eps^{m-i} - eps^{m-i+1} (1 < i < m), q_m = 1 - eps.
  for (int i = 1; i <= c.m; ++i) {
    if (i == 1) {
      c.weights.push_back(std::pow(c.epsilon, c.m - 1));
    } else {
      c.weights.push_back(std::pow(c.epsilon, c.m - i) -
                          std::pow(c.epsilon, c.m - i + 1));
    }
  }
  return c;
}

Instance MakeThm2Instance(double rho, double vmax, double delta,
                          int64_t horizon) {
  const Thm2Construction c = Thm2Parameters(rho, vmax, delta, horizon);
  SequenceMixture mix;
  mix.weights = c.weights;
  for (int i = 1; i <= c.m; ++i) {
    std::vector<double> seq(static_cast<std::size_t>(horizon), c.price);
    const int active_batches = c.m + 1 - i;
    for (int j = 1; j <= active_batches; ++j) {
      const auto begin = static_cast<std::size_t>((j - 1) * c.batch_length);
      std::fill_n(seq.begin() + begin, c.batch_length,
                  c.batch_values[j - 1]);
    }
    mix.sequences.push_back(std::move(seq));
  }
  Instance inst;
  inst.name = "thm2";
  inst.values = std::move(mix);
  inst.prices =
      FixedSequence{std::vector<double>(static_cast<std::size_t>(horizon),
                                        c.price)};
  inst.horizon = horizon;
  inst.rho = rho;
  inst.vmax = vmax;
  inst.price_grid = c.price;
  inst.Validate();
  return inst;
}

double Thm3Epsilon(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("thm3 adversary: mu must be > 0");
  return mu / (3.0 * mu + 6.0);
}

Instance MakeThm3Adversary(double mu, int64_t horizon) {
  const double eps = Thm3Epsilon(mu);
  Instance inst;
  inst.name = "thm3";
  inst.values = FixedSequence{
      std::vector<double>(static_cast<std::size_t>(horizon), 2.0 / 3.0)};
  inst.prices = AdaptiveOracle::EntryResponsive(2.0 / 3.0 - eps, eps);
  inst.horizon = horizon;
  inst.rho = 1.0 / 3.0;
  inst.vmax = 1.0;
  // Both prices are multiples of 1/(3 mu + 6) whenever mu is an integer;
  // otherwise the hindsight solver detects misalignment and brackets.
  inst.price_grid = 1.0 / (3.0 * mu + 6.0);
  inst.Validate();
  return inst;
}

Instance MakeGapInstance(int64_t horizon) {
  Instance inst;
  inst.name = "gap";
  inst.values = DiscreteDistribution::Uniform({0.4, 1.0}, 1.0);
  inst.prices = DiscreteDistribution::Uniform({0.3, 0.9}, 1.0);
  inst.horizon = horizon;
  inst.rho = 0.15;
  inst.vmax = 1.0;
  inst.price_grid = kRandomInstanceGrid;
  inst.Validate();
  return inst;
}

Instance MakeSingletonPriceInstance(int64_t horizon) {
  Instance inst;
  inst.name = "singleton";
  inst.values = DiscreteDistribution::Uniform({0.4, 1.0}, 1.0);
  inst.prices = DiscreteDistribution::PointMass(0.3, 1.0);
  inst.horizon = horizon;
  inst.rho = 0.15;
  inst.vmax = 1.0;
  inst.price_grid = kRandomInstanceGrid;
  inst.Validate();
  return inst;
}

namespace {

DiscreteDistribution RandomGridDistribution(Rng& rng, int support,
                                            double vmax) {
  const auto cells = static_cast<uint64_t>(
      std::floor(vmax / kRandomInstanceGrid + 1e-9));
  if (support < 1 || static_cast<uint64_t>(support) > cells + 1) {
    throw std::invalid_argument("random instance: bad support size");
  }
  std::vector<uint64_t> chosen;
  while (chosen.size() < static_cast<std::size_t>(support)) {
    const uint64_t k = rng.UniformInt(cells + 1);
    if (std::find(chosen.begin(), chosen.end(), k) == chosen.end()) {
      chosen.push_back(k);
    }
  }
  std::vector<double> raw(chosen.size());
  for (double& w : raw) w = 0.05 + rng.Uniform01();
  const double total = std::accumulate(raw.begin(), raw.end(), 0.0);
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    atoms.push_back({static_cast<double>(chosen[i]) / 120.0, raw[i] / total});
  }
  return DiscreteDistribution(std::move(atoms), vmax);
}

}  // namespace

Instance MakeRandomInstance(uint64_t seed, int value_support,
                            int price_support, double rho, int64_t horizon,
                            double vmax) {
  Rng rng(DeriveSeed(seed, {0x72616e64}));
  Instance inst;
  inst.name = "random";
  inst.values = RandomGridDistribution(rng, value_support, vmax);
  inst.prices = RandomGridDistribution(rng, price_support, vmax);
  inst.horizon = horizon;
  inst.rho = rho;
  inst.vmax = vmax;
  inst.price_grid = kRandomInstanceGrid;
  inst.Validate();
  return inst;
}

}  // namespace throttlesim
