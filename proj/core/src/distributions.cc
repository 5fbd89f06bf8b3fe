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

#include "throttlesim/distributions.h"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "text_util.h"

namespace throttlesim {

DiscreteDistribution::DiscreteDistribution(std::vector<Atom> atoms,
                                           double vmax)
    : atoms_(std::move(atoms)), vmax_(vmax) {
  if (!(vmax_ > 0.0) || !std::isfinite(vmax_)) {
    throw std::invalid_argument("distribution: vmax must be positive");
  }
  if (atoms_.empty()) {
    throw std::invalid_argument("distribution: empty support");
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.point < b.point; });
  double total = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    const Atom& a = atoms_[i];
    if (!(a.point >= 0.0 && a.point <= vmax_)) {
      throw std::invalid_argument("distribution: atom " +
                                  internal::FormatDouble(a.point) +
                                  " outside [0, vmax]");
    }
    if (!(a.weight >= 0.0) || !std::isfinite(a.weight)) {
      throw std::invalid_argument("distribution: negative weight");
    }
    if (i > 0 && atoms_[i - 1].point == a.point) {
      throw std::invalid_argument("distribution: duplicate atom " +
                                  internal::FormatDouble(a.point));
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw std::invalid_argument("distribution: weights sum to " +
                                internal::FormatDouble(total));
  }
  cumulative_.resize(atoms_.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    acc += atoms_[i].weight;
    cumulative_[i] = acc;
  }
}

DiscreteDistribution DiscreteDistribution::PointMass(double point,
                                                     double vmax) {
  return DiscreteDistribution({{point, 1.0}}, vmax);
}

DiscreteDistribution DiscreteDistribution::Uniform(std::vector<double> points,
                                                   double vmax) {
  std::vector<Atom> atoms;
  atoms.reserve(points.size());
  const double w = points.empty() ? 0.0 : 1.0 / points.size();
  for (double p : points) atoms.push_back({p, w});
  return DiscreteDistribution(std::move(atoms), vmax);
}

double DiscreteDistribution::Cdf(double x) const {
  auto it = std::upper_bound(
      atoms_.begin(), atoms_.end(), x,
      [](double v, const Atom& a) { return v < a.point; });
  if (it == atoms_.begin()) return 0.0;
  return std::min(1.0, cumulative_[(it - atoms_.begin()) - 1]);
}

double DiscreteDistribution::Mean() const {
  double m = 0.0;
  for (const Atom& a : atoms_) m += a.weight * a.point;
  return m;
}

double DiscreteDistribution::Sample(Rng& rng) const {
  const double u = rng.Uniform01() * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  // Zero-weight atoms share a cumulative value with their predecessor and are
  // never returned by upper_bound.
  return atoms_[it - cumulative_.begin()].point;
}

void DiscreteDistribution::WriteText(std::ostream& os) const {
  for (const Atom& a : atoms_) {
    os << internal::FormatDouble(a.point) << ' '
       << internal::FormatDouble(a.weight) << '\n';
  }
}

std::string DiscreteDistribution::ToText() const {
  std::ostringstream os;
  WriteText(os);
  return os.str();
}

DiscreteDistribution DiscreteDistribution::ReadText(std::istream& is,
                                                    double vmax) {
  std::vector<Atom> atoms;
  std::string line;
  while (std::getline(is, line)) {
    const std::string_view s = internal::Trim(line);
    if (s.empty() || s.front() == '#') continue;
    if (s == "end") break;
    const auto fields = internal::SplitWhitespace(s);
    if (fields.size() != 2) {
      throw std::invalid_argument("distribution: expected 'point weight', got '" +
                                  std::string(s) + "'");
    }
    atoms.push_back(
        {internal::ParseDouble(fields[0]), internal::ParseDouble(fields[1])});
  }
  return DiscreteDistribution(std::move(atoms), vmax);
}

bool operator==(const DiscreteDistribution& a, const DiscreteDistribution& b) {
  if (a.vmax_ != b.vmax_ || a.atoms_.size() != b.atoms_.size()) return false;
  for (std::size_t i = 0; i < a.atoms_.size(); ++i) {
    if (a.atoms_[i].point != b.atoms_[i].point ||
        a.atoms_[i].weight != b.atoms_[i].weight) {
      return false;
    }
  }
  return true;
}

InterimCurves::InterimCurves(const DiscreteDistribution& prices) {
  const auto atoms = prices.atoms();
  points_.reserve(atoms.size());
  prefix_mass_.assign(1, 0.0);
  prefix_payment_.assign(1, 0.0);
  for (const Atom& a : atoms) {
    points_.push_back(a.point);
    weights_.push_back(a.weight);
    prefix_mass_.push_back(prefix_mass_.back() + a.weight);
    prefix_payment_.push_back(prefix_payment_.back() + a.weight * a.point);
  }
}

std::size_t InterimCurves::CountAtOrBelow(double value) const {
  return std::upper_bound(points_.begin(), points_.end(), value) -
         points_.begin();
}

double InterimCurves::Reward(double value) const {
  const std::size_t k = CountAtOrBelow(value);
  // Σ_{p_j <= v} w_j (v - p_j), summed term by term so that r(v) stays
  // exactly zero below the support and never goes negative through
  // cancellation.
  double r = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    r += weights_[j] * (value - points_[j]);
  }
  return r;
}

double InterimCurves::Cost(double value) const {
  return prefix_payment_[CountAtOrBelow(value)];
}

double InterimCurves::WinProbability(double value) const {
  return prefix_mass_[CountAtOrBelow(value)];
}

}  // namespace throttlesim
