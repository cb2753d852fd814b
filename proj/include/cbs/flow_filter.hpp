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

#ifndef CBS_FLOW_FILTER_HPP
#define CBS_FLOW_FILTER_HPP

#include <vector>

#include "cbs/domain_store.hpp"
#include "cbs/types.hpp"

namespace cbs {

// Cardinality bounds for one value: between `lower` and `upper` scope
// variables take it. Alldifferent is the special case lower = 0, upper = 1.
struct ValueBounds {
  Value value;
  int lower;
  int upper;
};

// Matching/flow filter shared by alldifferent and gcc. Values appearing in
// domains but absent from the bounds list default to [0, default_upper].
// The last feasible flow is kept as a warm start; it is only a hint, so it
// needs no trailing.
class FlowFilter {
 public:
  FlowFilter(std::vector<VarId> scope, std::vector<ValueBounds> bounds, int default_upper);

  // Domain consistency: removes every value that belongs to no solution.
  bool filter_domain(DomainStore& store);
  // Removes unsupported values from the domain ends only.
  bool filter_bounds(DomainStore& store);
  // Assigned values are removed from the other variables once a value reaches
  // its upper bound; fails when a lower bound can no longer be met.
  bool filter_forward(DomainStore& store);

  // True iff a flow covering all scope variables exists.
  bool feasible(const DomainStore& store);

 private:
  void build(const DomainStore& store);
  bool find_flow();
  bool augment_lower(int value);
  bool augment_var(int var);
  // Marks supported (var, value-index) edges; requires a feasible flow.
  void compute_support();

  std::vector<VarId> scope_;
  std::vector<ValueBounds> declared_;
  int default_upper_;

  // Rebuilt per call.
  std::vector<Value> values_;
  std::vector<int> lower_;
  std::vector<int> upper_;
  std::vector<std::vector<int>> adj_;      // var -> value indices
  std::vector<std::vector<int>> support_;  // var -> supported value indices
  std::vector<int> flow_;                  // value -> matched count
  std::vector<int> match_;                 // var -> value index or -1
  std::vector<Value> hint_;                // var -> last matched value
  std::vector<char> hint_valid_;
};

}  // namespace cbs

#endif  // CBS_FLOW_FILTER_HPP
