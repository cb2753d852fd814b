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

#ifndef CBS_KNAPSACK_HPP
#define CBS_KNAPSACK_HPP

#include <cstdint>
#include <vector>

#include "cbs/constraint.hpp"
#include "cbs/layered_graph.hpp"

namespace cbs {

enum class KnapsackMode { kExact, kGaussian };

std::string_view to_string(KnapsackMode m);
KnapsackMode knapsack_mode_from_string(std::string_view name);

struct LinearMoments {
  double mean = 0.0;
  double variance = 0.0;
};

// Mean and variance of sum_j c_j x_j with each x_j uniform and independent.
// Interval mode uses the covering interval [min, max] of each domain; exact
// mode uses the actual domain values.
LinearMoments linear_moments(const std::vector<std::int64_t>& coeffs, const std::vector<std::vector<Value>>& domains,
                             bool exact_moments);

struct GaussianChoice {
  Value value = 0;
  double density = 0.0;
};

// lower <= sum_i c_i x_i <= upper.
class Knapsack : public Constraint {
 public:
  Knapsack(std::vector<VarId> scope, std::vector<std::int64_t> coeffs, std::int64_t lower, std::int64_t upper,
           Consistency level, KnapsackMode mode = KnapsackMode::kExact, bool exact_moments = false);

  std::string_view kind() const override { return "knapsack"; }
  bool propagate(DomainStore& store) override;
  bool idempotent() const override { return consistency() == Consistency::kDomain; }
  bool is_satisfied(std::span<const Value> tuple) const override;
  bool supports_counting() const override { return true; }
  DensityTable count(const DomainStore& store) const override;

  const std::vector<std::int64_t>& coeffs() const { return coeffs_; }
  std::int64_t lower() const { return lower_; }
  std::int64_t upper() const { return upper_; }
  KnapsackMode mode() const { return mode_; }

  // Layered graph of reachable partial sums, pruned to complete solutions.
  LayeredGraph build_graph(const DomainStore& store) const;
  // Most likely value of scope position i under the normal approximation
  // and its density.
  GaussianChoice gaussian_best(const DomainStore& store, int i) const;

 private:
  struct Residual {
    double m = 0.0;
    double v = 0.0;
  };
  struct Moments {
    std::vector<double> mu, var;
    double big_m = 0.0;
    double big_v = 0.0;
  };
  Moments moments(const DomainStore& store) const;
  Residual residual(const Moments& mo, int i) const;
  // Values of position i compatible with the interval bounds of the others.
  std::vector<Value> residual_feasible(const DomainStore& store, int i) const;
  bool filter_graph(DomainStore& store) const;
  bool filter_interval(DomainStore& store) const;
  DensityTable count_exact(const DomainStore& store) const;
  DensityTable count_gaussian(const DomainStore& store) const;

  std::vector<std::int64_t> coeffs_;
  std::int64_t lower_;
  std::int64_t upper_;
  KnapsackMode mode_;
  bool exact_moments_;
};

}  // namespace cbs

#endif  // CBS_KNAPSACK_HPP
