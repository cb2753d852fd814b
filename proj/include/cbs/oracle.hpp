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

#ifndef CBS_ORACLE_HPP
#define CBS_ORACLE_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "cbs/constraint.hpp"
#include "cbs/engine.hpp"

namespace cbs {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr std::uint64_t kDefaultOracleCap = 1000000;

// Permanent of a square 0-1 matrix by expansion along the first row,
// memoized on the set of used columns. At most 12 rows.
std::uint64_t exact_permanent(const std::vector<std::vector<int>>& matrix);

struct ExactVarDensities {
  VarId var = -1;
  std::vector<std::pair<Value, Rational>> entries;  // every domain value, ascending
};

struct ExactTable {
  BigInt count = 0;
  std::vector<ExactVarDensities> vars;  // scope order; all zero when count == 0
};

// Enumerates the scope's domains (scope order). Throws Error(kCapExceeded)
// when the product of domain sizes exceeds `cap`.
ExactTable exact_count_densities(const Constraint& c, const std::vector<std::vector<Value>>& domains,
                                 std::uint64_t cap = kDefaultOracleCap);
ExactTable exact_count_densities(const Constraint& c, const DomainStore& store,
                                 std::uint64_t cap = kDefaultOracleCap);

struct ExactSolveResult {
  bool sat = false;
  BigInt solutions = 0;
  std::vector<Value> first;  // first solution in lexicographic order
  std::vector<std::vector<Value>> all;  // filled only when requested
};

// Exhaustive verdict over the engine's current domains and every posted
// constraint. Throws Error(kCapExceeded) above `cap` candidate tuples.
ExactSolveResult exact_solve(const Engine& engine, bool keep_all = false, std::uint64_t cap = kDefaultOracleCap);

// Number of candidate tuples, saturating at UINT64_MAX.
std::uint64_t tuple_count(const std::vector<std::vector<Value>>& domains);

}  // namespace cbs

#endif  // CBS_ORACLE_HPP
