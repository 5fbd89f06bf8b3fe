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
#ifndef THROTTLESIM_ESTIMATION_H_
#define THROTTLESIM_ESTIMATION_H_

#include <cstdint>
#include <span>
#include <vector>

namespace throttlesim {

// DKW confidence radius sqrt((ln 2 + 2 ln T) / (2 n)).
// Throws std::invalid_argument when n < 1 or T < 2.
double DkwEpsilon(int64_t sample_count, int64_t horizon);

// Multiset of observed prices. Estimates are functions of the multiset only:
// samples are grouped by distinct value and every query sums groups in
// ascending price order, so the result is independent of insertion order.
// Queries are linear in the number of distinct prices, which is small for
// the finite-support price distributions this library simulates.
class SampleStore {
 public:
  struct Group {
    double price;
    int64_t count;
  };

  void Add(double price);

  int64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::span<const Group> groups() const { return groups_; }

  // (1/n) Σ (v - p_τ)^+
  double MeanSurplus(double value) const;
  // (1/n) Σ p_τ 1[v >= p_τ]
  double MeanWinningPayment(double value) const;

 private:
  std::vector<Group> groups_;  // sorted by price, distinct
  int64_t size_ = 0;
};

// Optimistic reward estimate: empirical mean surplus plus eps * v.
// Throws std::invalid_argument on an empty store.
double EstimateReward(double value, const SampleStore& store, double eps);

// Pessimistic cost estimate: empirical mean payment minus 2 eps v. May be
// negative and is returned unclipped.
double EstimateCost(double value, const SampleStore& store, double eps);

}  // namespace throttlesim

#endif  // THROTTLESIM_ESTIMATION_H_
