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

#ifndef CBS_ALLDIFF_HPP
#define CBS_ALLDIFF_HPP

#include <memory>
#include <vector>

#include "cbs/bounds.hpp"
#include "cbs/constraint.hpp"
#include "cbs/flow_filter.hpp"

namespace cbs {

// Permanent-bound counting state of an alldifferent over explicit domains
// (scope order). Bound variables and their values are eliminated first; the
// remaining unbound rows are padded with all-ones rows up to the number of
// free values.
class AlldiffCounter {
 public:
  explicit AlldiffCounter(const std::vector<std::vector<Value>>& domains);

  double log_count() const { return log_count_; }
  // Bound after the local probe x_i = d with forward checking, computed by
  // updating the unprobed bound over the rows whose sum changes.
  double probe(int i, Value d) const;
  // Same quantity, rebuilt from the probed domains.
  double probe_from_scratch(int i, Value d) const;
  // Normalized densities for every variable (bound ones get density 1).
  std::vector<VarDensities> densities(const std::vector<VarId>& vars) const;

 private:
  int value_index(Value v) const;

  std::vector<std::vector<Value>> domains_;
  std::vector<Value> free_values_;       // U, sorted
  std::vector<std::vector<int>> rows_;   // unbound var -> indices into U
  std::vector<std::vector<int>> holders_;  // U index -> unbound scope positions
  std::vector<int> row_sum_;             // per scope position, -1 when bound
  std::vector<Value> taken_;             // values of bound variables, sorted
  RowHistogram hist_;
  int unbound_ = 0;
  double log_bm_ = kLogZero;  // BM over the real rows only
  double log_count_ = kLogZero;
  bool dead_ = false;
};

class AllDifferent : public Constraint {
 public:
  AllDifferent(std::vector<VarId> scope, Consistency level);

  std::string_view kind() const override { return "alldifferent"; }
  bool propagate(DomainStore& store) override;
  bool idempotent() const override { return consistency() != Consistency::kForwardChecking; }
  bool is_satisfied(std::span<const Value> tuple) const override;
  bool supports_counting() const override { return true; }
  DensityTable count(const DomainStore& store) const override;

 private:
  FlowFilter flow_;
};

// Bound on perfect matchings of the contracted value graph of a
// symmetric_alldifferent: vertex i stands for both x_i and value offset + i.
class SymmetricCounter {
 public:
  SymmetricCounter(const std::vector<std::vector<Value>>& domains, Value offset);

  double log_count() const { return log_count_; }
  // Bound after pairing i with j (both vertices leave the graph).
  double probe(int i, int j) const;
  std::vector<VarDensities> densities(const std::vector<VarId>& vars) const;

 private:
  std::vector<std::vector<Value>> domains_;
  Value offset_;
  std::vector<std::vector<int>> adj_;  // over live vertices
  std::vector<char> live_;
  int live_count_ = 0;
  double sum_ = 0.0;
  double log_count_ = kLogZero;
};

// log of prod_v (deg(v)!)^(1 / (2 deg(v))) over the given degrees; kLogZero
// for an isolated vertex or an odd vertex count.
double log_general_matching_bound(const std::vector<int>& degrees);

// x_i = offset + j iff x_j = offset + i, x_i != offset + i, all different.
class SymmetricAllDifferent : public Constraint {
 public:
  SymmetricAllDifferent(std::vector<VarId> scope, Value offset, Consistency level);

  std::string_view kind() const override { return "symmetric_alldifferent"; }
  bool propagate(DomainStore& store) override;
  bool is_satisfied(std::span<const Value> tuple) const override;
  bool supports_counting() const override { return true; }
  DensityTable count(const DomainStore& store) const override;
  Value offset() const { return offset_; }

 private:
  Value offset_;
  FlowFilter flow_;
};

std::vector<std::vector<Value>> scope_domains(const DomainStore& store, const std::vector<VarId>& scope);

}  // namespace cbs

#endif  // CBS_ALLDIFF_HPP
