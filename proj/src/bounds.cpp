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

#include "cbs/bounds.hpp"

#include <algorithm>
#include <cmath>

namespace cbs {
namespace {

double bm_direct(int r) {
  if (r <= 0) return kLogZero;
  return std::lgamma(static_cast<double>(r) + 1.0) / r;
}

double lb_direct(int r, int i) {
  if (r <= 0) return kLogZero;
  const int q = std::min((r + 2) / 2, (i + 1) / 2);
  return std::log(static_cast<double>(q) * static_cast<double>(r - q + 1));
}

constexpr int kTableMax = 256;

const BoundFactors& shared_factors() {
  static const BoundFactors factors(kTableMax);
  return factors;
}

double bm_factor(int r) {
  return r <= kTableMax ? shared_factors().bm(r) : bm_direct(r);
}

double lb_factor(int r, int i) {
  return (r <= kTableMax && i <= kTableMax) ? shared_factors().lb(r, i) : lb_direct(r, i);
}

}  // namespace

double log_bm_factor(int r) { return bm_factor(r); }
double log_lb_factor(int r, int i) { return lb_factor(r, i); }

BoundFactors::BoundFactors(int n_max) : n_max_(n_max) {
  bm_.resize(n_max + 1);
  lb_.resize(static_cast<std::size_t>(n_max + 1) * (n_max + 1));
  for (int r = 0; r <= n_max; ++r) {
    bm_[r] = bm_direct(r);
    for (int i = 0; i <= n_max; ++i) lb_[r * (n_max + 1) + i] = lb_direct(r, std::max(i, 1));
  }
}

double BoundFactors::bm(int r) const { return r <= n_max_ ? bm_[r] : bm_direct(r); }

double BoundFactors::lb(int r, int i) const {
  return (r <= n_max_ && i <= n_max_) ? lb_[r * (n_max_ + 1) + i] : lb_direct(r, i);
}

void RowHistogram::add(int r, int times) {
  if (r >= static_cast<int>(counts_.size())) counts_.resize(r + 1, 0);
  counts_[r] += times;
  rows_ += times;
}

void RowHistogram::remove(int r, int times) {
  counts_[r] -= times;
  rows_ -= times;
}

double log_bm_bound(std::span<const int> rows) {
  RowHistogram h;
  for (int r : rows) h.add(r);
  return log_bm_bound(h);
}

double log_lb_bound(std::span<const int> rows) {
  RowHistogram h;
  for (int r : rows) h.add(r);
  return log_lb_bound(h);
}

double log_lb_bound_ordered(std::span<const int> rows) {
  double total = 0.0;
  int i = 1;
  for (int r : rows) {
    if (r <= 0) return kLogZero;
    total += lb_factor(r, i++);
  }
  return total / 2.0;
}

double log_bm_bound(const RowHistogram& rows) {
  if (rows.zero_rows() > 0) return kLogZero;
  double total = 0.0;
  for (int r = rows.max_row(); r >= 1; --r) {
    const int c = rows.count(r);
    if (c > 0) total += c * bm_factor(r);
  }
  return total;
}

double log_lb_bound(const RowHistogram& rows) {
  if (rows.zero_rows() > 0) return kLogZero;
  double total = 0.0;
  int i = 1;
  for (int r = rows.max_row(); r >= 1; --r) {
    for (int c = rows.count(r); c > 0; --c) total += lb_factor(r, i++);
  }
  return total / 2.0;
}

double log_matching_bound(RowHistogram rows, int padding, int padding_row) {
  if (padding < 0) return kLogZero;
  if (padding > 0) rows.add(padding_row, padding);
  if (rows.zero_rows() > 0) return kLogZero;
  const double bound = std::min(log_bm_bound(rows), log_lb_bound(rows));
  return bound - std::lgamma(static_cast<double>(padding) + 1.0);
}

}  // namespace cbs
