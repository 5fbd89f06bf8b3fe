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
#include "throttlesim/estimation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace throttlesim {

double DkwEpsilon(int64_t sample_count, int64_t horizon) {
  if (sample_count < 1) {
    throw std::invalid_argument("dkw_epsilon: sample count must be >= 1");
  }
  if (horizon < 2) throw std::invalid_argument("dkw_epsilon: T must be >= 2");
  const double numer =
      std::numbers::ln2 + 2.0 * std::log(static_cast<double>(horizon));
  return std::sqrt(numer / (2.0 * static_cast<double>(sample_count)));
}

void SampleStore::Add(double price) {
  auto it = std::lower_bound(
      groups_.begin(), groups_.end(), price,
      [](const Group& g, double p) { return g.price < p; });
  if (it != groups_.end() && it->price == price) {
    ++it->count;
  } else {
    groups_.insert(it, Group{price, 1});
  }
  ++size_;
}

double SampleStore::MeanSurplus(double value) const {
  double acc = 0.0;
  for (const Group& g : groups_) {
    if (g.price > value) break;
    acc += static_cast<double>(g.count) * (value - g.price);
  }
  return acc / static_cast<double>(size_);
}

double SampleStore::MeanWinningPayment(double value) const {
  double acc = 0.0;
  for (const Group& g : groups_) {
    if (g.price > value) break;
    acc += static_cast<double>(g.count) * g.price;
  }
  return acc / static_cast<double>(size_);
}

double EstimateReward(double value, const SampleStore& store, double eps) {
  if (store.empty()) {
    throw std::invalid_argument("estimate_reward: empty sample store");
  }
  return store.MeanSurplus(value) + eps * value;
}

double EstimateCost(double value, const SampleStore& store, double eps) {
  if (store.empty()) {
    throw std::invalid_argument("estimate_cost: empty sample store");
  }
  return store.MeanWinningPayment(value) - 2.0 * eps * value;
}

}  // namespace throttlesim
