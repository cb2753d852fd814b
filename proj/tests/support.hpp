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

#ifndef CBS_TESTS_SUPPORT_HPP
#define CBS_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "cbs/domain_store.hpp"
#include "cbs/oracle.hpp"

namespace cbs::testing {

inline DomainStore make_store(const std::vector<std::vector<Value>>& domains) {
  DomainStore s;
  for (const auto& d : domains) s.add_variable(d);
  return s;
}

inline std::vector<VarId> iota_vars(int n) {
  std::vector<VarId> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

// Non-empty random subsets of [lo, hi], each value kept with probability p.
inline std::vector<std::vector<Value>> random_domains(std::mt19937_64& rng, int n, Value lo, Value hi, double p) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<std::vector<Value>> out(n);
  for (auto& d : out) {
    for (Value v = lo; v <= hi; ++v) {
      if (coin(rng) < p) d.push_back(v);
    }
    if (d.empty()) d.push_back(lo + static_cast<Value>(rng() % (hi - lo + 1)));
  }
  return out;
}

inline double to_double(const Rational& r) { return static_cast<double>(r); }

inline std::vector<double> ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> r(xs.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[order[k]] = (i + j) / 2.0;
    i = j + 1;
  }
  return r;
}

// Spearman rank correlation; 0 when either side is constant.
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const std::vector<double> ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(ra.begin(), ra.end(), 0.0) / n;
  const double mb = std::accumulate(rb.begin(), rb.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace cbs::testing

#endif  // CBS_TESTS_SUPPORT_HPP
