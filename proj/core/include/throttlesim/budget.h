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
#ifndef THROTTLESIM_BUDGET_H_
#define THROTTLESIM_BUDGET_H_

#include <algorithm>

namespace throttlesim {

// Absolute tolerance for budget comparisons. Spend is accumulated in
// floating point, so a remaining budget that is exactly vmax in rational
// arithmetic can come out one ulp low; the stop rule and the spend
// invariant both allow this much slack.
inline double BudgetSlack(double budget) {
  return 1e-9 * std::max(1.0, budget);
}

}  // namespace throttlesim

#endif  // THROTTLESIM_BUDGET_H_
