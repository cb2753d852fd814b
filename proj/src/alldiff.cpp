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

#include "cbs/alldiff.hpp"

#include <algorithm>
#include <cmath>

namespace cbs {

std::vector<std::vector<Value>> scope_domains(const DomainStore& store, const std::vector<VarId>& scope) {
  std::vector<std::vector<Value>> out;
  out.reserve(scope.size());
  for (VarId x : scope) out.push_back(store.values(x));
  return out;
}

AlldiffCounter::AlldiffCounter(const std::vector<std::vector<Value>>& domains) : domains_(domains) {
  const int n = static_cast<int>(domains_.size());
  row_sum_.assign(n, -1);
  rows_.assign(n, {});
  for (const auto& d : domains_) {
    if (d.empty()) dead_ = true;
    if (d.size() == 1) taken_.push_back(d.front());
  }
  std::sort(taken_.begin(), taken_.end());
  if (std::adjacent_find(taken_.begin(), taken_.end()) != taken_.end()) dead_ = true;
  if (dead_) return;

  for (const auto& d : domains_) {
    if (d.size() < 2) continue;
    for (Value v : d) {
      if (!std::binary_search(taken_.begin(), taken_.end(), v)) free_values_.push_back(v);
    }
  }
  std::sort(free_values_.begin(), free_values_.end());
  free_values_.erase(std::unique(free_values_.begin(), free_values_.end()), free_values_.end());
  holders_.assign(free_values_.size(), {});
  for (int k = 0; k < n; ++k) {
    if (domains_[k].size() < 2) continue;
    for (Value v : domains_[k]) {
      const int u = value_index(v);
      if (u < 0) continue;
      rows_[k].push_back(u);
      holders_[u].push_back(k);
    }
    row_sum_[k] = static_cast<int>(rows_[k].size());
    hist_.add(row_sum_[k]);
    ++unbound_;
  }
  log_bm_ = 0.0;
  for (int k = 0; k < n; ++k) {
    if (row_sum_[k] >= 0) log_bm_ += log_bm_factor(row_sum_[k]);
  }
  const int columns = static_cast<int>(free_values_.size());
  log_count_ = log_matching_bound(hist_, columns - unbound_, columns);
}

int AlldiffCounter::value_index(Value v) const {
  auto it = std::lower_bound(free_values_.begin(), free_values_.end(), v);
  if (it == free_values_.end() || *it != v) return -1;
  return static_cast<int>(it - free_values_.begin());
}

double AlldiffCounter::probe(int i, Value d) const {
  if (dead_ || row_sum_[i] < 0) return kLogZero;
  const int u = value_index(d);
  if (u < 0 || !std::binary_search(domains_[i].begin(), domains_[i].end(), d)) return kLogZero;
  int exclusive = 0;
  for (int w : rows_[i]) exclusive += holders_[w].size() == 1 ? 1 : 0;
  const int own = holders_[u].size() == 1 ? 1 : 0;
  const int columns = static_cast<int>(free_values_.size()) - 1 - (exclusive - own);
  const int rows = unbound_ - 1;
  const int padding = columns - rows;
  if (padding < 0) return kLogZero;

  RowHistogram h = hist_;
  h.remove(row_sum_[i]);
  double bm = log_bm_ - log_bm_factor(row_sum_[i]);
  for (int k : holders_[u]) {
    if (k == i) continue;
    const int r = row_sum_[k];
    if (r <= 1) return kLogZero;
    h.remove(r);
    h.add(r - 1);
    bm += log_bm_factor(r - 1) - log_bm_factor(r);
  }
  if (padding > 0) {
    h.add(columns, padding);
    bm += padding * log_bm_factor(columns);
  }
  if (h.rows() == 0) return 0.0;
  const double lb = log_lb_bound(h);
  return std::min(bm, lb) - std::lgamma(static_cast<double>(padding) + 1.0);
}

double AlldiffCounter::probe_from_scratch(int i, Value d) const {
  if (dead_ || row_sum_[i] < 0) return kLogZero;
  if (value_index(d) < 0 || !std::binary_search(domains_[i].begin(), domains_[i].end(), d)) return kLogZero;
  const int n = static_cast<int>(domains_.size());
  // Columns: free values other than d still held by some other unbound row.
  std::vector<Value> columns;
  std::vector<int> sums;
  for (int k = 0; k < n; ++k) {
    if (k == i || row_sum_[k] < 0) continue;
    int r = 0;
    for (Value v : domains_[k]) {
      if (v == d || std::binary_search(taken_.begin(), taken_.end(), v)) continue;
      ++r;
      columns.push_back(v);
    }
    sums.push_back(r);
  }
  std::sort(columns.begin(), columns.end());
  columns.erase(std::unique(columns.begin(), columns.end()), columns.end());
  RowHistogram h;
  for (int r : sums) h.add(r);
  const int width = static_cast<int>(columns.size());
  return log_matching_bound(h, width - static_cast<int>(sums.size()), width);
}

std::vector<VarDensities> AlldiffCounter::densities(const std::vector<VarId>& vars) const {
  std::vector<VarDensities> out;
  out.reserve(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    const std::vector<Value>& dom = domains_[i];
    std::vector<double> weights(dom.size(), kLogZero);
    if (dom.size() == 1) {
      weights[0] = 0.0;
    } else {
      for (std::size_t k = 0; k < dom.size(); ++k) weights[k] = probe(static_cast<int>(i), dom[k]);
    }
    out.push_back(normalize_log_weights(vars[i], dom, weights));
  }
  return out;
}

AllDifferent::AllDifferent(std::vector<VarId> scope, Consistency level)
    : Constraint(scope, level), flow_(std::move(scope), {}, 1) {}

bool AllDifferent::propagate(DomainStore& store) {
  switch (consistency()) {
    case Consistency::kDomain:
      return flow_.filter_domain(store);
    case Consistency::kBounds:
      return flow_.filter_bounds(store);
    case Consistency::kForwardChecking:
      return flow_.filter_forward(store);
  }
  return true;
}

bool AllDifferent::is_satisfied(std::span<const Value> tuple) const {
  std::vector<Value> seen(tuple.begin(), tuple.end());
  std::sort(seen.begin(), seen.end());
  return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

DensityTable AllDifferent::count(const DomainStore& store) const {
  const AlldiffCounter counter(scope_domains(store, scope()));
  DensityTable table;
  table.log_count = counter.log_count();
  table.vars = counter.densities(scope());
  return table;
}

namespace {

double half_bm(int deg) { return std::lgamma(static_cast<double>(deg) + 1.0) / (2.0 * deg); }

}  // namespace

double log_general_matching_bound(const std::vector<int>& degrees) {
  if (degrees.size() % 2 != 0) return kLogZero;
  double total = 0.0;
  for (int d : degrees) {
    if (d <= 0) return kLogZero;
    total += half_bm(d);
  }
  return total;
}

SymmetricCounter::SymmetricCounter(const std::vector<std::vector<Value>>& domains, Value offset)
    : domains_(domains), offset_(offset) {
  const int n = static_cast<int>(domains_.size());
  live_.assign(n, 1);
  adj_.assign(n, {});
  bool dead = false;
  auto has = [&](int a, int b) {
    const Value v = offset_ + b;
    return std::binary_search(domains_[a].begin(), domains_[a].end(), v);
  };
  for (int i = 0; i < n; ++i) {
    if (domains_[i].empty()) dead = true;
    if (domains_[i].size() != 1) continue;
    const long long j = static_cast<long long>(domains_[i].front()) - offset_;
    if (j < 0 || j >= n || j == i || !has(static_cast<int>(j), i)) {
      dead = true;
      continue;
    }
    live_[i] = 0;
    live_[j] = 0;
  }
  for (int i = 0; i < n; ++i) {
    if (!live_[i]) continue;
    for (Value v : domains_[i]) {
      const long long j = static_cast<long long>(v) - offset_;
      if (j < 0 || j >= n || j == i || !live_[j]) continue;
      if (has(static_cast<int>(j), i)) adj_[i].push_back(static_cast<int>(j));
    }
  }
  std::vector<int> degrees;
  for (int i = 0; i < n; ++i) {
    if (live_[i]) degrees.push_back(static_cast<int>(adj_[i].size()));
  }
  live_count_ = static_cast<int>(degrees.size());
  log_count_ = dead ? kLogZero : log_general_matching_bound(degrees);
  sum_ = log_count_;
}

double SymmetricCounter::probe(int i, int j) const {
  if (sum_ == kLogZero || !live_[i] || !live_[j]) return kLogZero;
  if (!std::binary_search(adj_[i].begin(), adj_[i].end(), j)) return kLogZero;
  if (live_count_ == 2) return 0.0;
  std::vector<std::pair<int, int>> loss;
  auto hit = [&](int w) {
    for (auto& [v, c] : loss) {
      if (v == w) {
        ++c;
        return;
      }
    }
    loss.emplace_back(w, 1);
  };
  for (int w : adj_[i]) {
    if (w != j) hit(w);
  }
  for (int w : adj_[j]) {
    if (w != i) hit(w);
  }
  double total = sum_ - half_bm(static_cast<int>(adj_[i].size())) - half_bm(static_cast<int>(adj_[j].size()));
  for (const auto& [w, c] : loss) {
    const int deg = static_cast<int>(adj_[w].size());
    if (deg - c <= 0) return kLogZero;
    total += half_bm(deg - c) - half_bm(deg);
  }
  return total;
}

std::vector<VarDensities> SymmetricCounter::densities(const std::vector<VarId>& vars) const {
  std::vector<VarDensities> out;
  const int n = static_cast<int>(domains_.size());
  for (int i = 0; i < n; ++i) {
    const std::vector<Value>& dom = domains_[i];
    std::vector<double> weights(dom.size(), kLogZero);
    if (dom.size() == 1) {
      weights[0] = 0.0;
    } else {
      for (std::size_t k = 0; k < dom.size(); ++k) {
        const long long j = static_cast<long long>(dom[k]) - offset_;
        if (j >= 0 && j < n) weights[k] = probe(i, static_cast<int>(j));
      }
    }
    out.push_back(normalize_log_weights(vars[i], dom, weights));
  }
  return out;
}

SymmetricAllDifferent::SymmetricAllDifferent(std::vector<VarId> scope, Value offset, Consistency level)
    : Constraint(scope, level), offset_(offset), flow_(std::move(scope), {}, 1) {}

bool SymmetricAllDifferent::propagate(DomainStore& store) {
  const std::vector<VarId>& xs = scope();
  const int n = static_cast<int>(xs.size());
  while (true) {
    long long before = 0;
    for (VarId x : xs) before += store.size(x);
    for (int i = 0; i < n; ++i) {
      const VarId x = xs[i];
      store.remove_below(x, offset_);
      store.remove_above(x, offset_ + n - 1);
      store.remove(x, offset_ + i);
      const bool alive = store.retain_if(x, [&](Value v) { return store.contains(xs[v - offset_], offset_ + i); });
      if (!alive) return false;
    }
    bool ok = true;
    switch (consistency()) {
      case Consistency::kDomain:
        ok = flow_.filter_domain(store);
        break;
      case Consistency::kBounds:
        ok = flow_.filter_bounds(store);
        break;
      case Consistency::kForwardChecking:
        ok = flow_.filter_forward(store);
        break;
    }
    if (!ok) return false;
    long long after = 0;
    for (VarId x : xs) {
      if (store.empty(x)) return false;
      after += store.size(x);
    }
    if (after == before) return true;
  }
}

bool SymmetricAllDifferent::is_satisfied(std::span<const Value> tuple) const {
  const long long n = static_cast<long long>(tuple.size());
  for (long long i = 0; i < n; ++i) {
    const long long j = static_cast<long long>(tuple[i]) - offset_;
    if (j < 0 || j >= n || j == i) return false;
    if (tuple[j] != offset_ + i) return false;
  }
  return true;
}

DensityTable SymmetricAllDifferent::count(const DomainStore& store) const {
  const SymmetricCounter counter(scope_domains(store, scope()), offset_);
  DensityTable table;
  table.log_count = counter.log_count();
  table.vars = counter.densities(scope());
  return table;
}

}  // namespace cbs
