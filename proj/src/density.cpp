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

#include "cbs/density.hpp"

#include <algorithm>
#include <cmath>

#include "cbs/constraint.hpp"

namespace cbs {

double log_add(double a, double b) {
  if (a == kLogZero) return b;
  if (b == kLogZero) return a;
  if (a < b) std::swap(a, b);
  return a + std::log1p(std::exp(b - a));
}

const VarDensities* DensityTable::find(VarId x) const {
  for (const VarDensities& vd : vars) {
    if (vd.var == x) return &vd;
  }
  return nullptr;
}

std::optional<double> DensityTable::density(VarId x, Value v) const {
  const VarDensities* vd = find(x);
  if (vd == nullptr) return std::nullopt;
  auto it = std::lower_bound(vd->entries.begin(), vd->entries.end(), v,
                             [](const std::pair<Value, double>& e, Value key) { return e.first < key; });
  if (it == vd->entries.end() || it->first != v) return std::nullopt;
  return it->second;
}

VarDensities normalize_log_weights(VarId x, const std::vector<Value>& values,
                                   const std::vector<double>& log_weights) {
  VarDensities out;
  out.var = x;
  out.entries.reserve(values.size());
  double top = kLogZero;
  for (double w : log_weights) top = std::max(top, w);
  if (values.empty()) return out;
  if (top == kLogZero || !std::isfinite(top)) {
    const double share = 1.0 / static_cast<double>(values.size());
    for (Value v : values) out.entries.emplace_back(v, share);
    out.normalized = false;
    return out;
  }
  double total = 0.0;
  std::vector<double> scaled(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    scaled[i] = log_weights[i] == kLogZero ? 0.0 : std::exp(log_weights[i] - top);
    total += scaled[i];
  }
  for (std::size_t i = 0; i < values.size(); ++i) out.entries.emplace_back(values[i], scaled[i] / total);
  return out;
}

DensityTable Constraint::count(const DomainStore&) const {
  throw Error(ErrorKind::kInvalidArgument,
              "constraint '" + std::string(kind()) + "' has no counting support");
}

}  // namespace cbs
