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

#include <random>

#include "cbs/alldiff.hpp"
#include "cbs/knapsack.hpp"
#include "cbs/oracle.hpp"
#include "cbs/search.hpp"
#include "support.hpp"

using namespace cbs;
using namespace cbs::testing;

namespace {

// Accepts one tuple and only checks it once every variable is bound.
class OnlyTuple : public Constraint {
 public:
  OnlyTuple(std::vector<VarId> scope, std::vector<Value> tuple)
      : Constraint(std::move(scope), Consistency::kForwardChecking), tuple_(std::move(tuple)) {}
  std::string_view kind() const override { return "only-tuple"; }
  bool propagate(DomainStore& store) override {
    std::vector<Value> t;
    for (VarId x : scope()) {
      if (!store.is_bound(x)) return true;
      t.push_back(store.value(x));
    }
    if (t == tuple_) return true;
    for (VarId x : scope()) store.remove(x, store.value(x));
    return false;
  }
  bool is_satisfied(std::span<const Value> t) const override {
    return std::vector<Value>(t.begin(), t.end()) == tuple_;
  }

 private:
  std::vector<Value> tuple_;
};

void latin_square(Engine& e, int n, Consistency level = Consistency::kDomain) {
  std::vector<Value> vals(n);
  for (int i = 0; i < n; ++i) vals[i] = i + 1;
  for (int i = 0; i < n * n; ++i) e.add_var(vals);
  for (int r = 0; r < n; ++r) {
    std::vector<VarId> row, col;
    for (int c = 0; c < n; ++c) {
      row.push_back(r * n + c);
      col.push_back(c * n + r);
    }
    e.post(std::make_unique<AllDifferent>(row, level));
    e.post(std::make_unique<AllDifferent>(col, level));
  }
}

bool satisfies_all(const Engine& e, const std::vector<Value>& sol) {
  for (int c = 0; c < e.num_constraints(); ++c) {
    std::vector<Value> t;
    for (VarId x : e.constraint(c).scope()) t.push_back(sol[x]);
    if (!e.constraint(c).is_satisfied(t)) return false;
  }
  return true;
}

void random_model(std::mt19937_64& rng, Engine& e) {
  const int n = 3 + static_cast<int>(rng() % 4);
  for (const auto& d : random_domains(rng, n, 0, 3, 0.7)) e.add_var(d);
  const Consistency levels[] = {Consistency::kForwardChecking, Consistency::kBounds, Consistency::kDomain};
  std::vector<VarId> scope;
  for (VarId x = 0; x < n; ++x) {
    if (rng() % 3 != 0) scope.push_back(x);
  }
  if (scope.size() >= 2) e.post(std::make_unique<AllDifferent>(scope, levels[rng() % 3]));
  std::vector<std::int64_t> coeffs(n);
  for (auto& c : coeffs) c = 1 + static_cast<std::int64_t>(rng() % 3);
  const std::int64_t lo = static_cast<std::int64_t>(rng() % 12);
  e.post(std::make_unique<Knapsack>(iota_vars(n), coeffs, lo, lo + static_cast<std::int64_t>(rng() % 3),
                                    rng() % 2 ? Consistency::kDomain : Consistency::kBounds));
}

}  // namespace

TEST_CASE("traversal and status names") {
  CHECK(traversal_from_string("lds") == Traversal::kLds);
  CHECK(to_string(Traversal::kRestart) == "restart");
  CHECK(to_string(SearchStatus::kUnsat) == "unsat");
  CHECK_THROWS_AS(traversal_from_string("bfs"), Error);
}

TEST_CASE("model solved at the root") {
  Engine e;
  e.add_var({1});
  e.add_var({2});
  e.post(std::make_unique<AllDifferent>(iota_vars(2), Consistency::kDomain));
  Heuristic h(HeuristicKind::kMaxSD);
  const SearchStats s = solve(e, h, {});
  CHECK(s.status == SearchStatus::kSat);
  CHECK(s.backtracks == 0);
  CHECK(s.solution == std::vector<Value>{1, 2});
}

TEST_CASE("root wipeout is unsat") {
  Engine e;
  for (int i = 0; i < 3; ++i) e.add_var({1, 2});
  e.post(std::make_unique<AllDifferent>(iota_vars(3), Consistency::kDomain));
  Heuristic h(HeuristicKind::kMaxSD);
  const SearchStats s = solve(e, h, {});
  CHECK(s.status == SearchStatus::kUnsat);
  CHECK(s.backtracks == 0);
}

TEST_CASE("latin square of order 4") {
  Engine e;
  latin_square(e, 4);
  Heuristic h(HeuristicKind::kMaxSD);
  const SearchStats s = solve(e, h, {});
  REQUIRE(s.status == SearchStatus::kSat);
  CHECK(satisfies_all(e, s.solution));
  CHECK(e.level() == 0);
  MESSAGE("order-4 latin square backtracks " << s.backtracks);
}

TEST_CASE("complete traversals agree with enumeration") {
  std::mt19937_64 rng(17);
  const HeuristicKind kinds[] = {HeuristicKind::kMaxSD,      HeuristicKind::kAAvgSD,   HeuristicKind::kMinSCMaxSD,
                                 HeuristicKind::kDom,        HeuristicKind::kDomWDeg,  HeuristicKind::kIbs,
                                 HeuristicKind::kMaxSDRandom, HeuristicKind::kWSCAvg};
  for (int trial = 0; trial < 120; ++trial) {
    const std::uint64_t model_seed = rng();
    std::mt19937_64 m(model_seed);
    Engine oracle_engine;
    random_model(m, oracle_engine);
    const bool sat = exact_solve(oracle_engine).sat;
    for (HeuristicKind k : kinds) {
      for (Traversal t : {Traversal::kDfs, Traversal::kLds}) {
        std::mt19937_64 again(model_seed);
        Engine e;
        random_model(again, e);
        Heuristic h(k);
        SearchOptions opt;
        opt.traversal = t;
        opt.seed = trial;
        const SearchStats s = solve(e, h, opt);
        CHECK(s.status == (sat ? SearchStatus::kSat : SearchStatus::kUnsat));
        if (s.status == SearchStatus::kSat) CHECK(satisfies_all(e, s.solution));
      }
    }
  }
}

TEST_CASE("unbounded restarts trace dfs") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    SearchStats runs[2];
    for (int i = 0; i < 2; ++i) {
      Engine e;
      latin_square(e, 5, Consistency::kForwardChecking);
      Heuristic h(HeuristicKind::kMaxSD);
      SearchOptions opt;
      opt.seed = seed;
      if (i == 0) {
        h.set_randomize_top2(true);
      } else {
        opt.traversal = Traversal::kRestart;
        opt.restart_scale = std::numeric_limits<double>::infinity();
      }
      runs[i] = solve(e, h, opt);
    }
    CHECK(runs[0].status == runs[1].status);
    CHECK(runs[0].backtracks == runs[1].backtracks);
    CHECK(runs[0].nodes == runs[1].nodes);
    CHECK(runs[0].solution == runs[1].solution);
    CHECK(runs[1].restarts == 0);
  }
}

TEST_CASE("restarts on an easy model") {
  Engine e;
  latin_square(e, 3);
  Heuristic h(HeuristicKind::kMaxSD);
  SearchOptions opt;
  opt.traversal = Traversal::kRestart;
  opt.restart_scale = 1;
  const SearchStats s = solve(e, h, opt);
  CHECK(s.status == SearchStatus::kSat);
  CHECK(s.restarts == 0);
}

TEST_CASE("restarts prove unsat once a run completes") {
  // Seven pigeons in six holes: forward checking needs search to refute.
  Engine e;
  for (int i = 0; i < 7; ++i) e.add_var({1, 2, 3, 4, 5, 6});
  e.post(std::make_unique<AllDifferent>(iota_vars(7), Consistency::kForwardChecking));
  Heuristic h(HeuristicKind::kDomWDeg);
  SearchOptions opt;
  opt.traversal = Traversal::kRestart;
  opt.restart_scale = 2;
  const SearchStats s = solve(e, h, opt);
  CHECK(s.status == SearchStatus::kUnsat);
  CHECK(s.restarts > 0);
}

TEST_CASE("restart runs are reproducible") {
  SearchStats runs[2];
  for (auto& r : runs) {
    Engine e;
    latin_square(e, 6, Consistency::kForwardChecking);
    Heuristic h(HeuristicKind::kDomWDegMaxSD);
    SearchOptions opt;
    opt.traversal = Traversal::kRestart;
    opt.restart_scale = 3;
    opt.seed = 42;
    r = solve(e, h, opt);
  }
  CHECK(runs[0].status == runs[1].status);
  CHECK(runs[0].backtracks == runs[1].backtracks);
  CHECK(runs[0].restarts == runs[1].restarts);
  CHECK(runs[0].solution == runs[1].solution);
}

TEST_CASE("discrepancy waves") {
  // Value order tries 0 first, so (1, 1, 0, 0) needs exactly two right branches.
  auto model = [](Engine& e) {
    for (int i = 0; i < 4; ++i) e.add_var({0, 1});
    e.post(std::make_unique<OnlyTuple>(iota_vars(4), std::vector<Value>{1, 1, 0, 0}));
  };
  for (int skip : {1, 2, 4}) {
    Engine e;
    model(e);
    Heuristic h(HeuristicKind::kDomWDeg);
    SearchOptions opt;
    opt.traversal = Traversal::kLds;
    opt.lds_skip = skip;
    const SearchStats s = solve(e, h, opt);
    REQUIRE(s.status == SearchStatus::kSat);
    CHECK(s.discrepancies == 2);
    CHECK(s.waves == 2 / skip + 1);
    CHECK(s.solution == std::vector<Value>{1, 1, 0, 0});
  }
  // A greedy solution is found in the first wave.
  Engine e;
  for (int i = 0; i < 4; ++i) e.add_var({0, 1});
  e.post(std::make_unique<OnlyTuple>(iota_vars(4), std::vector<Value>{0, 0, 0, 0}));
  Heuristic h(HeuristicKind::kDomWDeg);
  SearchOptions opt;
  opt.traversal = Traversal::kLds;
  const SearchStats s = solve(e, h, opt);
  CHECK(s.waves == 1);
  CHECK(s.discrepancies == 0);
}

TEST_CASE("one wide wave equals dfs") {
  for (HeuristicKind k : {HeuristicKind::kMaxSD, HeuristicKind::kDomWDeg}) {
    SearchStats runs[2];
    for (int i = 0; i < 2; ++i) {
      Engine e;
      latin_square(e, 5, Consistency::kForwardChecking);
      Heuristic h(k);
      SearchOptions opt;
      if (i == 1) {
        opt.traversal = Traversal::kLds;
        opt.lds_skip = 1 << 20;
      }
      runs[i] = solve(e, h, opt);
    }
    CHECK(runs[1].waves == 1);
    CHECK(runs[0].backtracks == runs[1].backtracks);
    CHECK(runs[0].solution == runs[1].solution);
  }
}

TEST_CASE("backtrack budget stops the search") {
  Engine e;
  for (int i = 0; i < 9; ++i) e.add_var({1, 2, 3, 4, 5, 6, 7, 8});
  e.post(std::make_unique<AllDifferent>(iota_vars(9), Consistency::kForwardChecking));
  Heuristic h(HeuristicKind::kDomWDeg);
  SearchOptions opt;
  opt.max_backtracks = 50;
  const SearchStats s = solve(e, h, opt);
  CHECK(s.status == SearchStatus::kTimeout);
  CHECK(s.backtracks == 50);
  CHECK(e.level() == 0);
}

TEST_CASE("timeout is a status") {
  Engine e;
  for (int i = 0; i < 12; ++i) e.add_var({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11});
  e.post(std::make_unique<AllDifferent>(iota_vars(12), Consistency::kForwardChecking));
  Heuristic h(HeuristicKind::kDomWDeg);
  SearchOptions opt;
  opt.timeout_s = 0.05;
  const SearchStats s = solve(e, h, opt);
  CHECK(s.status == SearchStatus::kTimeout);
  CHECK(s.time_ms < 2000);
}
