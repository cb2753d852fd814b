// Copyright 2026 The cbsearch Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CBS_DENSITY_HPP
#define CBS_DENSITY_HPP

#include <optional>
#include <utility>
#include <vector>

#include "cbs/types.hpp"

namespace cbs {

struct VarDensities {
  VarId var = -1;
  // Ascending by value; every value is in the variable's current domain.
  std::vector<std::pair<Value, double>> entries;
  // False when every raw estimate was zero and a uniform split was used.
  bool normalized = true;
};

// Solution densities of one constraint: for each scope variable, the share
// of the constraint's solutions taking each value. The solution count is an
// estimate (or an exact count when `exact`) stored as a natural log.
struct DensityTable {
  int constraint = -1;
  double log_count = kLogZero;
  bool exact = false;
  std::vector<VarDensities> vars;  // scope order

  std::optional<double> density(VarId x, Value v) const;
  const VarDensities* find(VarId x) const;
};

// Turns raw log-weights into densities summing to one. All-zero weights give
// a uniform split and normalized = false.
VarDensities normalize_log_weights(VarId x, const std::vector<Value>& values,
                                   const std::vector<double>& log_weights);

// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

}  // namespace cbs

#endif  // CBS_DENSITY_HPP
