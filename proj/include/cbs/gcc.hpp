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

#ifndef CBS_GCC_HPP
#define CBS_GCC_HPP

#include <vector>

#include "cbs/constraint.hpp"
#include "cbs/flow_filter.hpp"

namespace cbs {

// Upper bound on the solution count of a gcc, split into the lower-bound
// graph part and the residual part. All values are natural logs.
struct GccBound {
  double lower_graph = kLogZero;  // matchings covering the lower-bound copies
  double residual = kLogZero;     // matchings of the remaining K variables
  double divisor = 0.0;           // copy-permutation scaling divided out
  double total = kLogZero;
};

// Values absent from `bounds` get [0, number of variables].
GccBound gcc_bound(const std::vector<std::vector<Value>>& domains, const std::vector<ValueBounds>& bounds);

// Bound after the local probe x_i = d; if d reaches its upper bound it is
// also removed from the other variables.
GccBound gcc_probe(const std::vector<std::vector<Value>>& domains, const std::vector<ValueBounds>& bounds, int i,
                   Value d);

std::vector<VarDensities> gcc_densities(const std::vector<std::vector<Value>>& domains,
                                        const std::vector<ValueBounds>& bounds, const std::vector<VarId>& vars);

class Gcc : public Constraint {
 public:
  Gcc(std::vector<VarId> scope, std::vector<ValueBounds> bounds, Consistency level);

  std::string_view kind() const override { return "gcc"; }
  bool propagate(DomainStore& store) override;
  bool idempotent() const override { return consistency() != Consistency::kForwardChecking; }
  bool is_satisfied(std::span<const Value> tuple) const override;
  bool supports_counting() const override { return true; }
  DensityTable count(const DomainStore& store) const override;
  const std::vector<ValueBounds>& bounds() const { return bounds_; }

 private:
  std::vector<ValueBounds> bounds_;
  FlowFilter flow_;
};

}  // namespace cbs

#endif  // CBS_GCC_HPP
