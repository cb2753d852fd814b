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

#include "cbs/gcc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cbs/alldiff.hpp"
#include "cbs/bounds.hpp"

namespace cbs {
namespace {

double log_factorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

double min_bound(RowHistogram rows) {
  if (rows.rows() == 0) return 0.0;
  if (rows.zero_rows() > 0) return kLogZero;
  return std::min(log_bm_bound(rows), log_lb_bound(rows));
}

// Smallest prod_d c_d! / (c_d - k_d)! over usage profiles with k_d <= c_d and
// sum k_d = used.
double min_profile_divisor(const std::vector<int>& copies, int used) {
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(used + 1, inf);
  best[0] = 0.0;
  for (int c : copies) {
    std::vector<double> next(used + 1, inf);
    for (int j = 0; j <= used; ++j) {
      if (best[j] == inf) continue;
      double acc = 0.0;
      for (int k = 0; k <= std::min(c, used - j); ++k) {
        if (k > 0) acc += std::log(static_cast<double>(c - k + 1));
        next[j + k] = std::min(next[j + k], best[j] + acc);
      }
    }
    best.swap(next);
  }
  return best[used];
}

// Variables flagged in `fixed` are eliminated together with one unit of
// their value's bounds; every other variable is a row, even a singleton.
GccBound bound_with_fixed(const std::vector<std::vector<Value>>& domains, const std::vector<ValueBounds>& bounds,
                          const std::vector<char>& fixed) {
  GccBound out;
  const int n = static_cast<int>(domains.size());
  std::map<Value, std::pair<int, int>> residual;  // value -> (l', u')
  for (const auto& d : domains) {
    if (d.empty()) return out;
    for (Value v : d) residual.emplace(v, std::make_pair(0, n));
  }
  for (const ValueBounds& vb : bounds) residual[vb.value] = {vb.lower, vb.upper};
  std::vector<int> unbound;
  for (int i = 0; i < n; ++i) {
    if (fixed[i]) {
      auto& [l, u] = residual[domains[i].front()];
      l = std::max(0, l - 1);
      --u;
    } else {
      unbound.push_back(i);
    }
  }
  int lower_total = 0;
  for (const auto& [v, lu] : residual) {
    if (lu.second < lu.first) return out;
    lower_total += lu.first;
  }
  const int k_rest = static_cast<int>(unbound.size()) - lower_total;
  if (k_rest < 0) return out;

  // Lower-bound graph: rows are variables with at least one lower copy,
  // squared with fake all-ones columns.
  std::vector<int> lower_deg;
  for (int i : unbound) {
    int deg = 0;
    for (Value v : domains[i]) deg += residual[v].first;
    if (deg > 0) lower_deg.push_back(deg);
  }
  const int fake = static_cast<int>(lower_deg.size()) - lower_total;
  if (fake < 0) return out;
  RowHistogram lower_rows;
  for (int deg : lower_deg) lower_rows.add(deg + fake);
  out.lower_graph = min_bound(lower_rows) - log_factorial(fake);

  // Residual graph: the K variables with the largest residual degree, padded
  // with fake all-ones rows.
  std::vector<int> copies;
  int residual_total = 0;
  for (const auto& [v, lu] : residual) {
    if (lu.second > lu.first) {
      copies.push_back(lu.second - lu.first);
      residual_total += lu.second - lu.first;
    }
  }
  if (k_rest > residual_total) return out;
  if (k_rest > 0) {
    std::vector<int> upper_deg;
    for (int i : unbound) {
      int deg = 0;
      for (Value v : domains[i]) deg += residual[v].second - residual[v].first;
      upper_deg.push_back(deg);
    }
    std::partial_sort(upper_deg.begin(), upper_deg.begin() + k_rest, upper_deg.end(), std::greater<int>());
    RowHistogram upper_rows;
    for (int j = 0; j < k_rest; ++j) upper_rows.add(upper_deg[j]);
    const int fake_rows = residual_total - k_rest;
    if (fake_rows > 0) upper_rows.add(residual_total, fake_rows);
    out.residual = min_bound(upper_rows) - log_factorial(fake_rows);
  } else {
    out.residual = 0.0;
  }

  double divisor = min_profile_divisor(copies, k_rest);
  for (const auto& [v, lu] : residual) divisor += log_factorial(lu.first);
  out.divisor = divisor;
  if (out.lower_graph == kLogZero || out.residual == kLogZero) return out;
  out.total = out.lower_graph + out.residual - divisor;
  return out;
}

std::vector<char> singletons(const std::vector<std::vector<Value>>& domains) {
  std::vector<char> fixed(domains.size(), 0);
  for (std::size_t i = 0; i < domains.size(); ++i) fixed[i] = domains[i].size() == 1 ? 1 : 0;
  return fixed;
}

}  // namespace

GccBound gcc_bound(const std::vector<std::vector<Value>>& domains, const std::vector<ValueBounds>& bounds) {
  return bound_with_fixed(domains, bounds, singletons(domains));
}

GccBound gcc_probe(const std::vector<std::vector<Value>>& domains, const std::vector<ValueBounds>& bounds, int i,
                   Value d) {
  std::vector<std::vector<Value>> probed = domains;
  std::vector<char> fixed = singletons(domains);
  probed[i] = {d};
  fixed[i] = 1;
  int upper = static_cast<int>(domains.size());
  for (const ValueBounds& vb : bounds) {
    if (vb.value == d) upper = vb.upper;
  }
  int at_d = 0;
  for (std::size_t k = 0; k < probed.size(); ++k) at_d += (fixed[k] && probed[k].front() == d) ? 1 : 0;
  if (at_d >= upper) {
    for (std::size_t k = 0; k < probed.size(); ++k) {
      if (fixed[k]) continue;
      auto it = std::lower_bound(probed[k].begin(), probed[k].end(), d);
      if (it != probed[k].end() && *it == d) probed[k].erase(it);
      if (probed[k].empty()) return GccBound{};
    }
  }
  return bound_with_fixed(probed, bounds, fixed);
}

std::vector<VarDensities> gcc_densities(const std::vector<std::vector<Value>>& domains,
                                        const std::vector<ValueBounds>& bounds, const std::vector<VarId>& vars) {
  std::vector<VarDensities> out;
  for (std::size_t i = 0; i < domains.size(); ++i) {
    const std::vector<Value>& dom = domains[i];
    std::vector<double> weights(dom.size(), kLogZero);
    if (dom.size() == 1) {
      weights[0] = 0.0;
    } else {
      for (std::size_t k = 0; k < dom.size(); ++k) {
        weights[k] = gcc_probe(domains, bounds, static_cast<int>(i), dom[k]).total;
      }
    }
    out.push_back(normalize_log_weights(vars[i], dom, weights));
  }
  return out;
}

Gcc::Gcc(std::vector<VarId> scope, std::vector<ValueBounds> bounds, Consistency level)
    : Constraint(scope, level),
      bounds_(bounds),
      flow_(scope, std::move(bounds), static_cast<int>(scope.size())) {}

bool Gcc::propagate(DomainStore& store) {
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

bool Gcc::is_satisfied(std::span<const Value> tuple) const {
  std::map<Value, int> used;
  for (Value v : tuple) ++used[v];
  for (const ValueBounds& vb : bounds_) {
    const int c = used.count(vb.value) ? used[vb.value] : 0;
    if (c < vb.lower || c > vb.upper) return false;
  }
  return true;
}

DensityTable Gcc::count(const DomainStore& store) const {
  const auto domains = scope_domains(store, scope());
  DensityTable table;
  table.log_count = gcc_bound(domains, bounds_).total;
  table.vars = gcc_densities(domains, bounds_, scope());
  return table;
}

}  // namespace cbs
