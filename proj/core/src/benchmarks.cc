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

#include "throttlesim/benchmarks.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>

namespace throttlesim {
namespace {

// ---------------------------------------------------------------------------
// Continuous (fractional) knapsack shared by the fluid and deterministic LPs.
// ---------------------------------------------------------------------------

struct LpItem {
  double reward;
  double weight;
};

struct FractionalFill {
  std::vector<double> fraction;
  double value = 0.0;
  double spend = 0.0;
  bool binding = false;
  // Ratio of the last item the fill touched when the budget is binding; 0
  // otherwise. Infinity when only free items were taken.
  double marginal_ratio = 0.0;
  int marginal = -1;
};

FractionalFill FillFractional(const std::vector<LpItem>& items,
                              double capacity) {
  FractionalFill fill;
  fill.fraction.assign(items.size(), 0.0);
  double all_spend = 0.0;
  for (const LpItem& it : items) all_spend += it.weight;
  fill.binding = all_spend >= capacity - kSpendTolerance;
  if (all_spend <= capacity + kSpendTolerance) {
    std::fill(fill.fraction.begin(), fill.fraction.end(), 1.0);
    for (const LpItem& it : items) fill.value += it.reward;
    fill.spend = all_spend;
    if (fill.binding) {
      double lowest = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].weight > 0.0 && items[i].reward / items[i].weight < lowest) {
          lowest = items[i].reward / items[i].weight;
          fill.marginal = static_cast<int>(i);
        }
      }
      fill.marginal_ratio = fill.marginal >= 0 ? lowest : 0.0;
    }
    return fill;
  }

  std::vector<int> order;
  double remaining = capacity;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i].reward <= 0.0) continue;
    if (items[i].weight <= 0.0) {
      fill.fraction[i] = 1.0;  // free win
      continue;
    }
    order.push_back(static_cast<int>(i));
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ra = items[a].reward / items[a].weight;
    const double rb = items[b].reward / items[b].weight;
    if (ra != rb) return ra > rb;
    if (items[a].reward != items[b].reward) {
      return items[a].reward > items[b].reward;
    }
    return a < b;
  });
  fill.marginal_ratio = std::numeric_limits<double>::infinity();
  for (int i : order) {
    if (remaining <= 0.0) break;
    const double take = std::min(1.0, remaining / items[i].weight);
    fill.fraction[i] = take;
    remaining -= take * items[i].weight;
    fill.marginal = i;
    fill.marginal_ratio = items[i].reward / items[i].weight;
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    fill.value += fill.fraction[i] * items[i].reward;
    fill.spend += fill.fraction[i] * items[i].weight;
  }
  return fill;
}

// ---------------------------------------------------------------------------
// Hindsight knapsack helpers.
// ---------------------------------------------------------------------------

constexpr std::size_t kMaxDpCells = std::size_t{1} << 27;

struct CostClass {
  int64_t units;
  std::vector<int> items;       // sorted by reward desc, index asc
  std::vector<double> prefix;   // prefix[j] = Σ of the j best rewards
};

// new[i] = max_{i-n <= s <= i} a[s] + prefix[i - s]. The prefix is concave,
// so the leftmost maximizer is nondecreasing in i and divide-and-conquer
// finds all maximizers in O(M log M).
void ConcaveMaxPlus(const std::vector<double>& a,
                    const std::vector<double>& prefix,
                    std::vector<double>& out, std::vector<int64_t>& arg) {
  const int64_t m = static_cast<int64_t>(a.size()) - 1;
  const int64_t n = static_cast<int64_t>(prefix.size()) - 1;
  out.assign(a.size(), 0.0);
  arg.assign(a.size(), 0);
  struct Frame {
    int64_t lo, hi, opt_lo, opt_hi;
  };
  std::vector<Frame> stack{{0, m, 0, m}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    if (f.lo > f.hi) continue;
    const int64_t mid = f.lo + (f.hi - f.lo) / 2;
    int64_t s_lo = std::max(f.opt_lo, mid - n);
    int64_t s_hi = std::min(f.opt_hi, mid);
    if (s_lo > s_hi) {  // cannot happen for concave prefixes; stay correct
      s_lo = std::max<int64_t>(0, mid - n);
      s_hi = mid;
    }
    double best = -std::numeric_limits<double>::infinity();
    int64_t best_s = s_lo;
    for (int64_t s = s_lo; s <= s_hi; ++s) {
      const double cand = a[s] + prefix[mid - s];
      if (cand > best) {
        best = cand;
        best_s = s;
      }
    }
    out[mid] = best;
    arg[mid] = best_s;
    stack.push_back({f.lo, mid - 1, f.opt_lo, best_s});
    stack.push_back({mid + 1, f.hi, best_s, f.opt_hi});
  }
}

// Chooses how many items of each class to take, maximizing value within
// `capacity` units. Returns false if the DP would exceed the memory cap.
bool SolveClasses(const std::vector<CostClass>& classes, int64_t capacity,
                  std::vector<int64_t>& counts) {
  counts.assign(classes.size(), 0);
  if (classes.size() == 1) {
    const CostClass& c = classes[0];
    counts[0] = std::min<int64_t>(static_cast<int64_t>(c.items.size()),
                                  capacity / c.units);
    return true;
  }
  if (classes.size() == 2) {
    const CostClass& c1 = classes[0];
    const CostClass& c2 = classes[1];
    const int64_t n1 = static_cast<int64_t>(c1.items.size());
    const int64_t n2 = static_cast<int64_t>(c2.items.size());
    double best = -1.0;
    for (int64_t j1 = 0; j1 <= std::min(n1, capacity / c1.units); ++j1) {
      const int64_t j2 =
          std::min(n2, (capacity - j1 * c1.units) / c2.units);
      const double v = c1.prefix[j1] + c2.prefix[j2];
      if (v > best) {
        best = v;
        counts = {j1, j2};
      }
    }
    return true;
  }
  const auto cells = static_cast<std::size_t>(capacity + 1);
  if (cells * classes.size() > kMaxDpCells) return false;

  std::vector<double> dp(cells, 0.0);
  std::vector<std::vector<int64_t>> choice(classes.size());
  std::vector<double> a, out;
  std::vector<int64_t> arg;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const CostClass& c = classes[k];
    std::vector<double> next(cells, 0.0);
    choice[k].assign(cells, 0);
    for (int64_t r = 0; r < c.units && r <= capacity; ++r) {
      const int64_t m = (capacity - r) / c.units;
      a.resize(static_cast<std::size_t>(m + 1));
      for (int64_t i = 0; i <= m; ++i) a[i] = dp[r + i * c.units];
      ConcaveMaxPlus(a, c.prefix, out, arg);
      for (int64_t i = 0; i <= m; ++i) {
        next[r + i * c.units] = out[i];
        choice[k][r + i * c.units] = i - arg[i];
      }
    }
    dp.swap(next);
  }
  int64_t c = capacity;
  for (std::size_t k = classes.size(); k-- > 0;) {
    counts[k] = choice[k][c];
    c -= counts[k] * classes[k].units;
  }
  return true;
}

bool GridUnits(double price, double grid, int64_t& units) {
  const double q = price / grid;
  const double r = std::round(q);
  if (std::abs(q - r) > 1e-9 * std::max(1.0, std::abs(q))) return false;
  units = static_cast<int64_t>(r);
  return true;
}

}  // namespace

FluidSolution FluidOpt(const DiscreteDistribution& values,
                       const DiscreteDistribution& prices, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("fluid_opt: rho must be > 0");
  const InterimCurves curves(prices);
  std::vector<LpItem> items;
  FluidSolution sol;
  for (const Atom& a : values.atoms()) {
    items.push_back({a.weight * curves.Reward(a.point),
                     a.weight * curves.Cost(a.point)});
    sol.support.push_back(a.point);
  }
  const FractionalFill fill = FillFractional(items, rho);
  sol.policy = fill.fraction;
  sol.per_round_value = fill.value;
  sol.expected_spend = fill.spend;
  sol.binding = fill.binding;
  sol.threshold_ratio = fill.binding ? fill.marginal_ratio : 0.0;
  return sol;
}

DlpSolution DlpOpt(const DiscreteDistribution& values,
                   const DiscreteDistribution& prices, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("dlp_opt: rho must be > 0");
  DlpSolution sol;
  std::vector<LpItem> items;
  for (const Atom& v : values.atoms()) {
    for (const Atom& p : prices.atoms()) {
      if (v.point < p.point) continue;
      const double mass = v.weight * p.weight;
      sol.pairs.push_back({v.point, p.point, mass, 0.0});
      items.push_back({mass * (v.point - p.point), mass * p.point});
    }
  }
  const FractionalFill fill = FillFractional(items, rho);
  for (std::size_t i = 0; i < items.size(); ++i) {
    sol.pairs[i].kappa = fill.fraction[i];
    if (fill.fraction[i] > 0.0 && fill.fraction[i] < 1.0) {
      sol.fractional_pair = sol.pairs[i];
    }
  }
  sol.per_round_value = fill.value;
  sol.expected_spend = fill.spend;
  sol.binding = fill.binding;
  // (v - p) / p = v/p - 1, so the ratio threshold is exactly λ̄.
  sol.shading_threshold =
      fill.binding && std::isfinite(fill.marginal_ratio) ? fill.marginal_ratio
                                                         : 0.0;
  return sol;
}

HindsightResult HindsightOpt(std::span<const double> values,
                             std::span<const double> prices, double budget,
                             double grid) {
  if (values.size() != prices.size()) {
    throw std::invalid_argument("hindsight_opt: length mismatch");
  }
  if (!(budget >= 0.0)) {
    throw std::invalid_argument("hindsight_opt: negative budget");
  }
  const std::size_t n = values.size();
  HindsightResult res;
  res.selection.assign(n, false);

  std::vector<int> candidates;
  for (std::size_t i = 0; i < n; ++i) {
    if (values[i] - prices[i] > 0.0) candidates.push_back(static_cast<int>(i));
  }
  auto reward = [&](int i) { return values[i] - prices[i]; };
  auto finish = [&]() {
    res.value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (res.selection[i]) res.value += reward(static_cast<int>(i));
    }
  };

  // Exact path: integer costs on the price grid.
  bool aligned = grid > 0.0;
  std::vector<int64_t> units(n, 0);
  for (int i : candidates) {
    if (!aligned) break;
    aligned = GridUnits(prices[i], grid, units[i]);
  }
  if (aligned) {
    const auto capacity = static_cast<int64_t>(std::floor(budget / grid + 1e-9));
    std::map<int64_t, CostClass> by_units;
    int64_t total_units = 0;
    for (int i : candidates) {
      if (units[i] == 0) {
        res.selection[i] = true;
        continue;
      }
      auto& cls = by_units[units[i]];
      cls.units = units[i];
      cls.items.push_back(i);
      total_units += units[i];
    }
    if (total_units <= capacity) {
      for (auto& [u, cls] : by_units) {
        for (int i : cls.items) res.selection[i] = true;
      }
      res.exact = true;
      finish();
      res.upper_bound = res.value;
      return res;
    }
    std::vector<CostClass> classes;
    for (auto& [u, cls] : by_units) {
      std::stable_sort(cls.items.begin(), cls.items.end(), [&](int a, int b) {
        return reward(a) > reward(b);
      });
      cls.prefix.assign(1, 0.0);
      for (int i : cls.items) cls.prefix.push_back(cls.prefix.back() + reward(i));
      classes.push_back(std::move(cls));
    }
    std::vector<int64_t> counts;
    if (SolveClasses(classes, capacity, counts)) {
      for (std::size_t k = 0; k < classes.size(); ++k) {
        for (int64_t j = 0; j < counts[k]; ++j) {
          res.selection[classes[k].items[j]] = true;
        }
      }
      res.exact = true;
      finish();
      res.upper_bound = res.value;
      return res;
    }
    std::fill(res.selection.begin(), res.selection.end(), false);
  }

  // Bracket path: greedy by ratio for the selection, fractional relaxation
  // for the bound. The two differ by at most one item's reward.
  std::vector<int> order;
  double free_value = 0.0;
  for (int i : candidates) {
    if (prices[i] <= 0.0) {
      res.selection[i] = true;
      free_value += reward(i);
    } else {
      order.push_back(i);
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return reward(a) / prices[a] > reward(b) / prices[b];
  });
  double room = budget;
  double upper = free_value;
  bool fractional_done = false;
  for (int i : order) {
    if (!fractional_done) {
      if (prices[i] <= room) {
        upper += reward(i);
      } else {
        upper += reward(i) * (room / prices[i]);
        fractional_done = true;
      }
    }
    if (prices[i] <= room) {
      res.selection[i] = true;
      room -= prices[i];
    }
  }
  // The relaxation's room is tracked separately from the greedy's skips.
  double relax_room = budget;
  upper = free_value;
  for (int i : order) {
    if (prices[i] <= relax_room) {
      upper += reward(i);
      relax_room -= prices[i];
    } else {
      upper += reward(i) * (relax_room / prices[i]);
      break;
    }
  }
  finish();
  res.upper_bound = std::max(upper, res.value);
  res.exact = false;
  return res;
}

HindsightResult HindsightOpt(const Trajectory& trajectory, double budget,
                             double grid) {
  std::vector<double> values, prices;
  values.reserve(trajectory.rounds.size());
  prices.reserve(trajectory.rounds.size());
  for (const RoundOutcome& r : trajectory.rounds) {
    values.push_back(r.value);
    prices.push_back(r.price);
  }
  return HindsightOpt(values, prices, budget, grid);
}

int64_t Thm1RevenueBoundThirds(int64_t third_count, int64_t horizon) {
  if (horizon < 0 || third_count < 0 || third_count > horizon) {
    throw std::invalid_argument("thm1 revenue bound: need 0 <= S <= T");
  }
  if (2 * third_count >= horizon) return third_count + horizon;
  return 2 * third_count + (3 * horizon - 2 * third_count) / 4;
}

double Thm1RevenueBound(int64_t third_count, int64_t horizon) {
  return static_cast<double>(Thm1RevenueBoundThirds(third_count, horizon)) /
         3.0;
}

BigInt Binomial(int64_t n, int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;  // exact: r is C(n-k+i, i) after the division
  }
  return r;
}

Thm1LowerBound Thm1RegretLowerBound(int64_t horizon) {
  if (horizon < 4 || horizon % 4 != 0) {
    throw std::invalid_argument("thm1 lower bound: T must be a positive multiple of 4");
  }
  Thm1LowerBound lb;
  for (int64_t t = 1; t <= horizon / 4; ++t) {
    lb.sum += BigInt(horizon - 4 * (t - 1)) * Binomial(horizon + 1, 2 * t - 1);
  }
  lb.closed_form = (BigInt(1) << static_cast<unsigned>(horizon - 1)) +
                   BigInt(horizon / 2) * Binomial(horizon, horizon / 2);
  lb.regret_bound = static_cast<double>(lb.sum) /
                    std::ldexp(12.0, static_cast<int>(horizon));
  lb.asymptotic_bound = 1.0 / 24.0 + std::sqrt(2.0) / 48.0 *
                                         std::sqrt(static_cast<double>(horizon));
  return lb;
}

double Regret(const Trajectory& trajectory, double opt_per_round) {
  return static_cast<double>(trajectory.horizon()) * opt_per_round -
         trajectory.total_reward;
}

}  // namespace throttlesim
