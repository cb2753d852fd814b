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

#ifndef CBS_BOUNDS_HPP
#define CBS_BOUNDS_HPP

#include <span>
#include <vector>

#include "cbs/types.hpp"

namespace cbs {

// Precomputed log factors for the two permanent upper bounds of a 0-1 matrix
// with row sums r:
//   Bregman-Minc: perm(A) <= prod_i (r_i!)^(1/r_i)
//   Liang-Bai:    perm(A)^2 <= prod_i q_i (r_i - q_i + 1),
//                 q_i = min(ceil((r_i + 1) / 2), ceil(i / 2))
// Everything is stored as natural logs; a zero row sum maps to kLogZero.
class BoundFactors {
 public:
  explicit BoundFactors(int n_max);

  int n_max() const { return n_max_; }
  // log (r!)^(1/r); log 1 = 0 for r == 1, kLogZero for r == 0.
  double bm(int r) const;
  // log q (r - q + 1) at row position i (1-based), kLogZero for r == 0.
  double lb(int r, int i) const;

 private:
  int n_max_;
  std::vector<double> bm_;
  std::vector<double> lb_;  // row-major (r, i), both 0..n_max
};

// A multiset of row sums kept as a histogram indexed by row sum, which is
// how the counting routines update rows incrementally.
class RowHistogram {
 public:
  explicit RowHistogram(int max_row = 0) : counts_(max_row + 1, 0) {}

  void add(int r, int times = 1);
  void remove(int r, int times = 1);
  int rows() const { return rows_; }
  int zero_rows() const { return counts_.empty() ? 0 : counts_[0]; }
  int max_row() const { return static_cast<int>(counts_.size()) - 1; }
  int count(int r) const { return r < static_cast<int>(counts_.size()) ? counts_[r] : 0; }

 private:
  std::vector<int> counts_;
  int rows_ = 0;
};

// Shared-table lookups of the two per-row log factors.
double log_bm_factor(int r);
double log_lb_factor(int r, int i);

// log of the Bregman-Minc bound over the given rows (any order).
double log_bm_bound(std::span<const int> rows);
// log of the Liang-Bai bound with rows taken in descending order.
double log_lb_bound(std::span<const int> rows);
// Same bound with rows taken in exactly the given order.
double log_lb_bound_ordered(std::span<const int> rows);

double log_bm_bound(const RowHistogram& rows);
double log_lb_bound(const RowHistogram& rows);

// min(BM, LB) of the matrix formed by `rows` plus `padding` extra rows of
// sum `padding_row`, divided by padding! (the count of matchings covering
// the real rows). kLogZero when a row sum is zero or padding is negative.
double log_matching_bound(RowHistogram rows, int padding, int padding_row);

}  // namespace cbs

#endif  // CBS_BOUNDS_HPP
