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

#include "cbs/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

namespace cbs {
namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

double normal_cdf(double x, double mean, double variance) {
  return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * variance));
}

// Smallest and largest value of c * x over the domain of x.
std::pair<std::int64_t, std::int64_t> term_range(std::int64_t c, Value lo, Value hi) {
  const std::int64_t a = c * lo;
  const std::int64_t b = c * hi;
  return {std::min(a, b), std::max(a, b)};
}

}  // namespace

std::string_view to_string(KnapsackMode m) { return m == KnapsackMode::kExact ? "exact" : "gaussian"; }

KnapsackMode knapsack_mode_from_string(std::string_view name) {
  if (name == "exact") return KnapsackMode::kExact;
  if (name == "gaussian") return KnapsackMode::kGaussian;
  throw Error(ErrorKind::kUnknownName, "unknown knapsack mode '" + std::string(name) + "' (valid: exact, gaussian)");
}

LinearMoments linear_moments(const std::vector<std::int64_t>& coeffs, const std::vector<std::vector<Value>>& domains,
                             bool exact_moments) {
  LinearMoments out;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const auto& dom = domains[j];
    if (dom.empty()) continue;
    double mu = 0.0;
    double var = 0.0;
    if (exact_moments) {
      double s = 0.0, s2 = 0.0;
      for (Value v : dom) {
        s += v;
        s2 += static_cast<double>(v) * v;
      }
      mu = s / dom.size();
      var = s2 / dom.size() - mu * mu;
    } else {
      const double a = dom.front();
      const double b = dom.back();
      mu = (a + b) / 2.0;
      var = ((b - a + 1.0) * (b - a + 1.0) - 1.0) / 12.0;
    }
    const double c = static_cast<double>(coeffs[j]);
    out.mean += c * mu;
    out.variance += c * c * var;
  }
  return out;
}

Knapsack::Knapsack(std::vector<VarId> scope, std::vector<std::int64_t> coeffs, std::int64_t lower,
                   std::int64_t upper, Consistency level, KnapsackMode mode, bool exact_moments)
    : Constraint(std::move(scope), level),
      coeffs_(std::move(coeffs)),
      lower_(lower),
      upper_(upper),
      mode_(mode),
      exact_moments_(exact_moments) {
  if (coeffs_.size() != this->scope().size()) {
    throw Error(ErrorKind::kInvalidArgument, "knapsack needs one coefficient per variable");
  }
}

bool Knapsack::is_satisfied(std::span<const Value> tuple) const {
  __int128 s = 0;
  for (std::size_t i = 0; i < tuple.size(); ++i) s += static_cast<__int128>(coeffs_[i]) * tuple[i];
  return s >= lower_ && s <= upper_;
}

LayeredGraph Knapsack::build_graph(const DomainStore& store) const {
  const std::vector<VarId>& xs = scope();
  const int k = static_cast<int>(xs.size());
  std::vector<std::int64_t> rest_min(k + 1, 0), rest_max(k + 1, 0);
  for (int i = k - 1; i >= 0; --i) {
    if (store.empty(xs[i])) return LayeredGraph(k);
    const auto [a, b] = term_range(coeffs_[i], store.min(xs[i]), store.max(xs[i]));
    rest_min[i] = rest_min[i + 1] + a;
    rest_max[i] = rest_max[i + 1] + b;
  }
  LayeredGraph g(k);
  std::vector<std::int64_t> sums{0};
  g.add_vertex(0);
  for (int i = 0; i < k; ++i) {
    const std::vector<Value> dom = store.values(xs[i]);
    std::unordered_map<std::int64_t, int> index;
    std::vector<std::int64_t> next_sums;
    for (int from = 0; from < static_cast<int>(sums.size()); ++from) {
      for (Value d : dom) {
        const std::int64_t nb = sums[from] + coeffs_[i] * d;
        if (nb + rest_min[i + 1] > upper_ || nb + rest_max[i + 1] < lower_) continue;
        auto [it, fresh] = index.emplace(nb, 0);
        if (fresh) {
          it->second = g.add_vertex(i + 1);
          next_sums.push_back(nb);
        }
        g.add_arc(i, from, it->second, d);
      }
    }
    sums.swap(next_sums);
  }
  g.prune();
  return g;
}

bool Knapsack::filter_graph(DomainStore& store) const {
  const std::vector<VarId>& xs = scope();
  const int k = static_cast<int>(xs.size());
  const LayeredGraph g = build_graph(store);
  if (k == 0) return lower_ <= 0 && 0 <= upper_;
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

bool Knapsack::filter_interval(DomainStore& store) const {
  const std::vector<VarId>& xs = scope();
  const int k = static_cast<int>(xs.size());
  bool changed = true;
  while (changed) {
    changed = false;
    std::int64_t total_min = 0, total_max = 0;
    for (int i = 0; i < k; ++i) {
      if (store.empty(xs[i])) return false;
      const auto [a, b] = term_range(coeffs_[i], store.min(xs[i]), store.max(xs[i]));
      total_min += a;
      total_max += b;
    }
    if (total_min > upper_ || total_max < lower_) return false;
    for (int i = 0; i < k; ++i) {
      const std::int64_t c = coeffs_[i];
      if (c == 0) continue;
      const auto [a, b] = term_range(c, store.min(xs[i]), store.max(xs[i]));
      const std::int64_t lo_term = lower_ - (total_max - b);  // c * x >= lo_term
      const std::int64_t hi_term = upper_ - (total_min - a);  // c * x <= hi_term
      std::int64_t lo, hi;
      if (c > 0) {
        lo = ceil_div(lo_term, c);
        hi = floor_div(hi_term, c);
      } else {
        lo = ceil_div(hi_term, c);
        hi = floor_div(lo_term, c);
      }
      const int before = store.size(xs[i]);
      if (lo > store.min(xs[i]) && !store.remove_below(xs[i], static_cast<Value>(std::min<std::int64_t>(lo, INT32_MAX)))) {
        return false;
      }
      if (hi < store.max(xs[i]) && !store.remove_above(xs[i], static_cast<Value>(std::max<std::int64_t>(hi, INT32_MIN)))) {
        return false;
      }
      if (store.size(xs[i]) != before) {
        changed = true;
        break;
      }
    }
  }
  return true;
}

bool Knapsack::propagate(DomainStore& store) {
  return consistency() == Consistency::kDomain ? filter_graph(store) : filter_interval(store);
}

Knapsack::Moments Knapsack::moments(const DomainStore& store) const {
  const std::vector<VarId>& xs = scope();
  Moments mo;
  mo.mu.resize(xs.size());
  mo.var.resize(xs.size());
  double sum_mu = 0.0, sum_var = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const LinearMoments one = linear_moments({1}, {store.values(xs[j])}, exact_moments_);
    mo.mu[j] = one.mean;
    mo.var[j] = one.variance;
    const double c = static_cast<double>(coeffs_[j]);
    sum_mu += c * one.mean;
    sum_var += c * c * one.variance;
  }
  const double l = static_cast<double>(lower_);
  const double u = static_cast<double>(upper_);
  mo.big_m = (l + u) / 2.0 - sum_mu;
  mo.big_v = ((u - l + 1.0) * (u - l + 1.0) - 1.0) / 12.0 + sum_var;
  return mo;
}

Knapsack::Residual Knapsack::residual(const Moments& mo, int i) const {
  const double c = static_cast<double>(coeffs_[i]);
  return {(mo.big_m + c * mo.mu[i]) / c, (mo.big_v - c * c * mo.var[i]) / (c * c)};
}

std::vector<Value> Knapsack::residual_feasible(const DomainStore& store, int i) const {
  const std::vector<VarId>& xs = scope();
  std::int64_t rest_min = 0, rest_max = 0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    if (static_cast<int>(j) == i) continue;
    const auto [a, b] = term_range(coeffs_[j], store.min(xs[j]), store.max(xs[j]));
    rest_min += a;
    rest_max += b;
  }
  std::vector<Value> out;
  store.for_each(xs[i], [&](Value k) {
    const std::int64_t t = coeffs_[i] * k;
    if (t + rest_min <= upper_ && t + rest_max >= lower_) out.push_back(k);
  });
  return out;
}

namespace {
constexpr double kMinVariance = 1e-12;
}

GaussianChoice Knapsack::gaussian_best(const DomainStore& store, int i) const {
  const VarId x = scope()[i];
  const std::vector<Value> dom = store.values(x);
  GaussianChoice best;
  if (dom.empty()) return best;
  const Moments mo = moments(store);
  const Residual r = coeffs_[i] == 0 ? Residual{0.0, 0.0} : residual(mo, i);
  if (coeffs_[i] == 0 || r.v <= kMinVariance) {
    const std::vector<Value> ok = residual_feasible(store, i);
    if (ok.empty()) return {dom.front(), 0.0};
    return {ok.front(), 1.0 / static_cast<double>(ok.size())};
  }
  best.value = dom.front();
  double gap = std::abs(dom.front() - r.m);
  for (Value k : dom) {
    const double g = std::abs(k - r.m);
    if (g < gap) {
      gap = g;
      best.value = k;
    }
  }
  const double pdf = std::exp(-(best.value - r.m) * (best.value - r.m) / (2.0 * r.v)) /
                     std::sqrt(2.0 * std::numbers::pi * r.v);
  const double mass = normal_cdf(dom.back() + 0.5, r.m, r.v) - normal_cdf(dom.front() - 0.5, r.m, r.v);
  best.density = mass > 0.0 ? std::min(1.0, pdf / mass) : 1.0;
  return best;
}

DensityTable Knapsack::count_exact(const DomainStore& store) const {
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

DensityTable Knapsack::count_gaussian(const DomainStore& store) const {
  const std::vector<VarId>& xs = scope();
  const Moments mo = moments(store);
  DensityTable table;
  double log_box = 0.0;
  std::vector<std::vector<Value>> domains;
  for (VarId x : xs) {
    domains.push_back(store.values(x));
    log_box += std::log(static_cast<double>(std::max<std::size_t>(domains.back().size(), 1)));
  }
  const LinearMoments total = linear_moments(coeffs_, domains, exact_moments_);
  if (total.variance <= kMinVariance) {
    table.log_count = (total.mean >= lower_ && total.mean <= upper_) ? log_box : kLogZero;
  } else {
    const double p = normal_cdf(upper_ + 0.5, total.mean, total.variance) -
                     normal_cdf(lower_ - 0.5, total.mean, total.variance);
    table.log_count = p > 0.0 ? log_box + std::log(p) : kLogZero;
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const std::vector<Value>& dom = domains[i];
    std::vector<double> weights(dom.size(), kLogZero);
    if (dom.size() == 1) {
      weights[0] = 0.0;
    } else if (coeffs_[i] == 0) {
      std::fill(weights.begin(), weights.end(), 0.0);
    } else {
      const Residual r = residual(mo, static_cast<int>(i));
      if (r.v <= kMinVariance) {
        const std::vector<Value> ok = residual_feasible(store, static_cast<int>(i));
        for (std::size_t k = 0; k < dom.size(); ++k) {
          if (std::binary_search(ok.begin(), ok.end(), dom[k])) weights[k] = 0.0;
        }
      } else {
        for (std::size_t k = 0; k < dom.size(); ++k) {
          const double diff = dom[k] - r.m;
          weights[k] = -diff * diff / (2.0 * r.v);
        }
      }
    }
    table.vars.push_back(normalize_log_weights(xs[i], dom, weights));
  }
  return table;
}

DensityTable Knapsack::count(const DomainStore& store) const {
  return mode_ == KnapsackMode::kExact ? count_exact(store) : count_gaussian(store);
}

}  // namespace cbs
