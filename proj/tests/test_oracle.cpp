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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cbs/alldiff.hpp"
#include "cbs/engine.hpp"
#include "cbs/knapsack.hpp"
#include "cbs/oracle.hpp"
#include "support.hpp"

using namespace cbs;
using namespace cbs::testing;

TEST_CASE("permanent of small matrices") {
  CHECK(exact_permanent({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == 1);
  CHECK(exact_permanent({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}) == 6);
  CHECK(exact_permanent({{1, 1}, {0, 0}}) == 0);
  std::vector<std::vector<int>> ones(8, std::vector<int>(8, 1));
  CHECK(exact_permanent(ones) == 40320);
}

TEST_CASE("tuple counts saturate") {
  CHECK(tuple_count({{1, 2}, {1, 2, 3}}) == 6);
  std::vector<std::vector<Value>> big(70, std::vector<Value>{0, 1});
  CHECK(tuple_count(big) == UINT64_MAX);
}

TEST_CASE("constraint enumeration") {
  AllDifferent ad({0, 1, 2}, Consistency::kDomain);
  const ExactTable t = exact_count_densities(ad, {{1, 2}, {1, 2}, {1, 2, 3}});
  CHECK(t.count == 2);
  CHECK(t.vars[2].entries.size() == 3);
  CHECK(t.vars[2].entries[2].second == Rational(1));
  CHECK(t.vars[0].entries[0].second == Rational(1, 2));
  CHECK_THROWS_AS(exact_count_densities(ad, {{1, 2}, {1, 2}, {1, 2, 3}}, 5), Error);
}

TEST_CASE("engine enumeration") {
  Engine e;
  for (int i = 0; i < 3; ++i) e.add_var({1, 2, 3});
  e.post(std::make_unique<AllDifferent>(iota_vars(3), Consistency::kForwardChecking));
  e.post(std::make_unique<Knapsack>(std::vector<VarId>{0, 1}, std::vector<std::int64_t>{1, 1}, 3, 4,
                                    Consistency::kDomain));
  const ExactSolveResult r = exact_solve(e, true);
  CHECK(r.sat);
  // x0 + x1 in [3, 4] with all different: (1,2,3) (2,1,3) (1,3,2) (3,1,2).
  CHECK(r.solutions == 4);
  CHECK(r.first == std::vector<Value>{1, 2, 3});
  CHECK(r.all.size() == 4);
  CHECK_THROWS_AS(exact_solve(e, false, 10), Error);
}

TEST_CASE("unsatisfiable engine") {
  Engine e;
  for (int i = 0; i < 3; ++i) e.add_var({1, 2});
  e.post(std::make_unique<AllDifferent>(iota_vars(3), Consistency::kForwardChecking));
  const ExactSolveResult r = exact_solve(e);
  CHECK_FALSE(r.sat);
  CHECK(r.solutions == 0);
  CHECK(r.first.empty());
}
