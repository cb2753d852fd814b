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

#include "cbs/regular.hpp"

#include <algorithm>
#include <string>

namespace cbs {

Automaton::Automaton(int num_states, int initial)
    : initial_(initial), accepting_(num_states, 0), delta_(num_states) {
  if (num_states <= 0) throw Error(ErrorKind::kInvalidArgument, "automaton needs at least one state");
  check_state(initial);
}

void Automaton::check_state(int q) const {
  if (q < 0 || q >= num_states()) {
    throw Error(ErrorKind::kInvalidArgument, "automaton state " + std::to_string(q) + " out of range");
  }
}

void Automaton::set_accepting(int q, bool on) {
  check_state(q);
  accepting_[q] = on ? 1 : 0;
}

void Automaton::add_transition(int from, Value v, int to) {
  check_state(from);
  check_state(to);
  auto& row = delta_[from];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const std::pair<Value, int>& t, Value key) { return t.first < key; });
  if (it != row.end() && it->first == v) {
    if (it->second == to) return;
    throw Error(ErrorKind::kInvalidArgument, "nondeterministic transition from state " + std::to_string(from) +
                                                 " on " + std::to_string(v));
  }
  row.insert(it, {v, to});
}

int Automaton::next(int q, Value v) const {
  const auto& row = delta_[q];
  auto it = std::lower_bound(row.begin(), row.end(), v,
                             [](const std::pair<Value, int>& t, Value key) { return t.first < key; });
  return (it != row.end() && it->first == v) ? it->second : -1;
}

bool Automaton::accepts(std::span<const Value> word) const {
  int q = initial_;
  for (Value v : word) {
    q = next(q, v);
    if (q < 0) return false;
  }
  return accepting(q);
}

Regular::Regular(std::vector<VarId> scope, Automaton dfa, Consistency level)
    : Constraint(std::move(scope), level), dfa_(std::move(dfa)) {}

LayeredGraph Regular::build_graph(const DomainStore& store) const {
  const std::vector<VarId>& xs = scope();
  const int k = static_cast<int>(xs.size());
  const int q_count = dfa_.num_states();
  LayeredGraph g(k);
  std::vector<int> here(q_count, -1), there(q_count, -1);
  std::vector<int> states{dfa_.initial()};
  here[dfa_.initial()] = g.add_vertex(0);
  if (k == 0 && !dfa_.accepting(dfa_.initial())) return LayeredGraph(0);
  for (int i = 0; i < k; ++i) {
    std::vector<int> next_states;
    std::fill(there.begin(), there.end(), -1);
    const bool last = i + 1 == k;
    for (int q : states) {
      for (const auto& [v, target] : dfa_.transitions(q)) {
        if (last && !dfa_.accepting(target)) continue;
        if (!store.contains(xs[i], v)) continue;
        if (there[target] < 0) {
          there[target] = g.add_vertex(i + 1);
          next_states.push_back(target);
        }
        g.add_arc(i, here[q], there[target], v);
      }
    }
    std::swap(here, there);
    states.swap(next_states);
  }
  g.prune();
  return g;
}

bool Regular::propagate(DomainStore& store) {
  const std::vector<VarId>& xs = scope();
  LayeredGraph g = build_graph(store);
  const int k = static_cast<int>(xs.size());
  if (k == 0) return g.vertices(0) > 0;
  for (int i = 0; i < k; ++i) {
    if (g.arcs(i).empty()) return false;
  }
  for (int i = 0; i < k; ++i) {
    const std::vector<Value> keep = g.supported_values(i);
    if (static_cast<int>(keep.size()) == store.size(xs[i])) continue;
    if (!store.retain_if(xs[i], [&](Value v) { return std::binary_search(keep.begin(), keep.end(), v); })) {
      return false;
    }
  }
  return true;
}

DensityTable Regular::count(const DomainStore& store) const {
  const std::vector<VarId>& xs = scope();
  const LayeredGraph g = build_graph(store);
  const LayeredGraph::PathCounts pc = g.count_paths();
  DensityTable table;
  table.exact = true;
  table.log_count = pc.log_total;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    VarDensities vd;
    vd.var = xs[i];
    vd.entries = pc.densities[i];
    if (vd.entries.empty()) {
      const std::vector<Value> dom = store.values(xs[i]);
      vd = normalize_log_weights(xs[i], dom, std::vector<double>(dom.size(), kLogZero));
    }
    table.vars.push_back(std::move(vd));
  }
  return table;
}

}  // namespace cbs
