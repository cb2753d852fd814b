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

#ifndef CBS_REGULAR_HPP
#define CBS_REGULAR_HPP

#include <span>
#include <utility>
#include <vector>

#include "cbs/constraint.hpp"
#include "cbs/layered_graph.hpp"

namespace cbs {

// Deterministic finite automaton with a partial transition function.
class Automaton {
 public:
  Automaton(int num_states, int initial);

  int num_states() const { return static_cast<int>(delta_.size()); }
  int initial() const { return initial_; }
  bool accepting(int q) const { return accepting_[q] != 0; }
  void set_accepting(int q, bool on = true);
  // Throws Error(kInvalidArgument) when (from, v) already has a target.
  void add_transition(int from, Value v, int to);
  // Target state or -1.
  int next(int q, Value v) const;
  // Outgoing transitions of q, ascending by value.
  const std::vector<std::pair<Value, int>>& transitions(int q) const { return delta_[q]; }
  bool accepts(std::span<const Value> word) const;

 private:
  void check_state(int q) const;

  int initial_;
  std::vector<char> accepting_;
  std::vector<std::vector<std::pair<Value, int>>> delta_;
};

// Word membership of the scope (in order) in the automaton's language.
// Filtering is always domain consistent.
class Regular : public Constraint {
 public:
  Regular(std::vector<VarId> scope, Automaton dfa, Consistency level);

  std::string_view kind() const override { return "regular"; }
  bool propagate(DomainStore& store) override;
  bool idempotent() const override { return true; }
  bool is_satisfied(std::span<const Value> tuple) const override { return dfa_.accepts(tuple); }
  bool supports_counting() const override { return true; }
  DensityTable count(const DomainStore& store) const override;

  const Automaton& automaton() const { return dfa_; }
  // Unrolled graph over the current domains, pruned to accepting paths.
  LayeredGraph build_graph(const DomainStore& store) const;

 private:
  Automaton dfa_;
};

}  // namespace cbs

#endif  // CBS_REGULAR_HPP
