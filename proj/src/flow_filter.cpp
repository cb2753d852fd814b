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

#include "cbs/flow_filter.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace cbs {
namespace {

// Iterative Tarjan over a CSR graph; returns the component id per node.
std::vector<int> strongly_connected(int n, const std::vector<int>& start, const std::vector<int>& edges) {
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack, call;
  std::vector<int> next_edge(n, 0);
  std::vector<char> on_stack(n, 0);
  int counter = 0;
  int components = 0;
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    call.push_back(root);
    while (!call.empty()) {
      const int v = call.back();
      if (index[v] < 0) {
        index[v] = low[v] = counter++;
        next_edge[v] = start[v];
        stack.push_back(v);
        on_stack[v] = 1;
      }
      bool descended = false;
      while (next_edge[v] < start[v + 1]) {
        const int w = edges[next_edge[v]++];
        if (index[w] < 0) {
          call.push_back(w);
          descended = true;
          break;
        }
        if (on_stack[w]) low[v] = std::min(low[v], index[w]);
      }
      if (descended) continue;
      if (low[v] == index[v]) {
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != v);
        ++components;
      }
      call.pop_back();
      if (!call.empty()) {
        const int parent = call.back();
        low[parent] = std::min(low[parent], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

FlowFilter::FlowFilter(std::vector<VarId> scope, std::vector<ValueBounds> bounds, int default_upper)
    : scope_(std::move(scope)),
      declared_(std::move(bounds)),
      default_upper_(default_upper),
      hint_(scope_.size(), 0),
      hint_valid_(scope_.size(), 0) {
  std::sort(declared_.begin(), declared_.end(),
            [](const ValueBounds& a, const ValueBounds& b) { return a.value < b.value; });
  for (const ValueBounds& vb : declared_) {
    if (vb.lower < 0 || vb.upper < vb.lower) {
      throw Error(ErrorKind::kInvalidArgument, "invalid cardinality bounds for value " + std::to_string(vb.value));
    }
  }
}

void FlowFilter::build(const DomainStore& store) {
  values_.clear();
  for (VarId x : scope_) store.for_each(x, [&](Value v) { values_.push_back(v); });
  for (const ValueBounds& vb : declared_) {
    if (vb.lower > 0) values_.push_back(vb.value);
  }
  std::sort(values_.begin(), values_.end());
  values_.erase(std::unique(values_.begin(), values_.end()), values_.end());
  const int m = static_cast<int>(values_.size());
  lower_.assign(m, 0);
  upper_.assign(m, default_upper_);
  std::size_t j = 0;
  for (int a = 0; a < m; ++a) {
    while (j < declared_.size() && declared_[j].value < values_[a]) ++j;
    if (j < declared_.size() && declared_[j].value == values_[a]) {
      lower_[a] = declared_[j].lower;
      upper_[a] = declared_[j].upper;
    }
  }
  const int n = static_cast<int>(scope_.size());
  adj_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    store.for_each(scope_[i], [&](Value v) {
      adj_[i].push_back(static_cast<int>(std::lower_bound(values_.begin(), values_.end(), v) - values_.begin()));
    });
  }
}

bool FlowFilter::augment_lower(int start) {
  const int n = static_cast<int>(scope_.size());
  const int m = static_cast<int>(values_.size());
  std::vector<int> via_value(m, -2), via_var(m, -1);
  std::deque<int> queue{start};
  via_value[start] = -1;
  while (!queue.empty()) {
    const int a = queue.front();
    queue.pop_front();
    for (int x = 0; x < n; ++x) {
      if (match_[x] == a || !std::binary_search(adj_[x].begin(), adj_[x].end(), a)) continue;
      const int b = match_[x];
      if (b < 0 || flow_[b] > lower_[b]) {
        // x moves to a; then walk back along the chain of displaced vars.
        if (b >= 0) --flow_[b];
        match_[x] = a;
        ++flow_[a];
        int cur = a;
        while (cur != start) {
          const int y = via_var[cur];
          const int prev = via_value[cur];
          --flow_[cur];
          match_[y] = prev;
          ++flow_[prev];
          cur = prev;
        }
        return true;
      }
      if (via_value[b] == -2) {
        via_value[b] = a;
        via_var[b] = x;
        queue.push_back(b);
      }
    }
  }
  return false;
}

bool FlowFilter::augment_var(int start) {
  const int n = static_cast<int>(scope_.size());
  const int m = static_cast<int>(values_.size());
  std::vector<std::vector<int>> holders(m);
  for (int x = 0; x < n; ++x) {
    if (match_[x] >= 0) holders[match_[x]].push_back(x);
  }
  std::vector<int> via_var(n, -2), via_value(n, -1);
  std::vector<char> seen_value(m, 0);
  std::deque<int> queue{start};
  via_var[start] = -1;
  while (!queue.empty()) {
    const int y = queue.front();
    queue.pop_front();
    for (int a : adj_[y]) {
      if (a == match_[y]) continue;
      if (flow_[a] < upper_[a]) {
        int cur = y;
        int target = a;
        while (true) {
          const int old = match_[cur];
          match_[cur] = target;
          ++flow_[target];
          if (old >= 0) --flow_[old];
          if (cur == start) break;
          target = via_value[cur];
          cur = via_var[cur];
        }
        return true;
      }
      if (seen_value[a]) continue;
      seen_value[a] = 1;
      for (int z : holders[a]) {
        if (via_var[z] != -2) continue;
        via_var[z] = y;
        via_value[z] = a;
        queue.push_back(z);
      }
    }
  }
  return false;
}

bool FlowFilter::find_flow() {
  const int n = static_cast<int>(scope_.size());
  const int m = static_cast<int>(values_.size());
  flow_.assign(m, 0);
  match_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    if (!hint_valid_[i]) continue;
    auto it = std::lower_bound(values_.begin(), values_.end(), hint_[i]);
    if (it == values_.end() || *it != hint_[i]) continue;
    const int a = static_cast<int>(it - values_.begin());
    if (flow_[a] < upper_[a] && std::binary_search(adj_[i].begin(), adj_[i].end(), a)) {
      match_[i] = a;
      ++flow_[a];
    }
  }
  for (int a = 0; a < m; ++a) {
    while (flow_[a] < lower_[a]) {
      if (!augment_lower(a)) return false;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (match_[i] < 0 && !augment_var(i)) return false;
  }
  for (int i = 0; i < n; ++i) {
    hint_[i] = values_[match_[i]];
    hint_valid_[i] = 1;
  }
  return true;
}

void FlowFilter::compute_support() {
  const int n = static_cast<int>(scope_.size());
  const int m = static_cast<int>(values_.size());
  const int sink = n + m;
  const int nodes = n + m + 1;
  std::vector<std::vector<int>> out(nodes);
  for (int x = 0; x < n; ++x) {
    for (int a : adj_[x]) {
      if (match_[x] == a) {
        out[n + a].push_back(x);
      } else {
        out[x].push_back(n + a);
      }
    }
  }
  for (int a = 0; a < m; ++a) {
    if (flow_[a] < upper_[a]) out[n + a].push_back(sink);
    if (flow_[a] > lower_[a]) out[sink].push_back(n + a);
  }
  std::vector<int> start(nodes + 1, 0), edges;
  for (int v = 0; v < nodes; ++v) {
    start[v + 1] = start[v] + static_cast<int>(out[v].size());
    edges.insert(edges.end(), out[v].begin(), out[v].end());
  }
  const std::vector<int> comp = strongly_connected(nodes, start, edges);
  support_.assign(n, {});
  for (int x = 0; x < n; ++x) {
    for (int a : adj_[x]) {
      if (match_[x] == a || comp[x] == comp[n + a]) support_[x].push_back(a);
    }
  }
}

bool FlowFilter::feasible(const DomainStore& store) {
  build(store);
  return find_flow();
}

bool FlowFilter::filter_domain(DomainStore& store) {
  build(store);
  if (!find_flow()) return false;
  compute_support();
  const int n = static_cast<int>(scope_.size());
  for (int x = 0; x < n; ++x) {
    if (support_[x].size() == adj_[x].size()) continue;
    std::size_t k = 0;
    for (int a : adj_[x]) {
      if (k < support_[x].size() && support_[x][k] == a) {
        ++k;
      } else {
        store.remove(scope_[x], values_[a]);
      }
    }
  }
  return true;
}

bool FlowFilter::filter_bounds(DomainStore& store) {
  build(store);
  if (!find_flow()) return false;
  compute_support();
  const int n = static_cast<int>(scope_.size());
  for (int x = 0; x < n; ++x) {
    const std::vector<int>& sup = support_[x];
    if (sup.empty()) return false;
    store.remove_below(scope_[x], values_[sup.front()]);
    store.remove_above(scope_[x], values_[sup.back()]);
  }
  return true;
}

bool FlowFilter::filter_forward(DomainStore& store) {
  std::unordered_map<Value, int> upper, lower;
  for (const ValueBounds& vb : declared_) {
    upper[vb.value] = vb.upper;
    lower[vb.value] = vb.lower;
  }
  auto upper_of = [&](Value v) {
    auto it = upper.find(v);
    return it == upper.end() ? default_upper_ : it->second;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::unordered_map<Value, int> fixed;
    for (VarId x : scope_) {
      if (store.empty(x)) return false;
      if (store.is_bound(x)) ++fixed[store.value(x)];
    }
    for (const auto& [v, c] : fixed) {
      const int cap = upper_of(v);
      if (c > cap) return false;
      if (c < cap) continue;
      for (VarId x : scope_) {
        if (store.is_bound(x) || !store.contains(x, v)) continue;
        if (!store.remove(x, v)) return false;
        changed = true;
      }
    }
  }
  for (const auto& [v, l] : lower) {
    if (l == 0) continue;
    int possible = 0;
    for (VarId x : scope_) possible += store.contains(x, v) ? 1 : 0;
    if (possible < l) return false;
  }
  return true;
}

}  // namespace cbs
