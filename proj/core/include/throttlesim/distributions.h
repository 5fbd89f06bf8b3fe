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

#ifndef THROTTLESIM_DISTRIBUTIONS_H_
#define THROTTLESIM_DISTRIBUTIONS_H_

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "throttlesim/rng.h"

namespace throttlesim {

struct Atom {
  double point = 0.0;
  double weight = 0.0;
};

// Finite-support distribution on [0, vmax]. Atoms are kept sorted by point
// with distinct points; weights are nonnegative and sum to one (1e-12).
// Used both for value distributions F and price distributions G.
class DiscreteDistribution {
 public:
  static constexpr double kWeightTolerance = 1e-12;

  // Validates and sorts. Throws std::invalid_argument on an empty support,
  // duplicate points, points outside [0, vmax], negative weights, or weights
  // that do not sum to one.
  DiscreteDistribution(std::vector<Atom> atoms, double vmax);

  static DiscreteDistribution PointMass(double point, double vmax);
  // Equal weight on each listed point.
  static DiscreteDistribution Uniform(std::vector<double> points, double vmax);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  double vmax() const { return vmax_; }

  // Pr[X <= x] (right-continuous).
  double Cdf(double x) const;
  double Mean() const;

  // Inverse-CDF draw from one uniform; consumes exactly one engine output.
  double Sample(Rng& rng) const;

  // `point weight` per line, shortest round-trip formatting.
  void WriteText(std::ostream& os) const;
  std::string ToText() const;
  // Parses lines until EOF or a line equal to `end`. Blank lines and lines
  // starting with '#' are skipped.
  static DiscreteDistribution ReadText(std::istream& is, double vmax);

  friend bool operator==(const DiscreteDistribution& a,
                         const DiscreteDistribution& b);

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;  // cumulative_[i] = Pr[X <= atoms_[i]]
  double vmax_;
};

// Interim per-value expectations induced by a price distribution G:
//   r(v) = E[(v - p)^+],  c(v) = E[p * 1[v >= p]].
// A tie v == p counts as a win that pays p.
class InterimCurves {
 public:
  explicit InterimCurves(const DiscreteDistribution& prices);

  double Reward(double value) const;
  double Cost(double value) const;
  // Pr[p <= v]; satisfies Reward(v) + Cost(v) == v * WinProbability(v)
  // up to rounding.
  double WinProbability(double value) const;

 private:
  // Number of atoms with point <= value.
  std::size_t CountAtOrBelow(double value) const;

  std::vector<double> points_;
  std::vector<double> weights_;
  std::vector<double> prefix_mass_;     // Σ_{j<i} w_j
  std::vector<double> prefix_payment_;  // Σ_{j<i} w_j p_j
};

}  // namespace throttlesim

#endif  // THROTTLESIM_DISTRIBUTIONS_H_
