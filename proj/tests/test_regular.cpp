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

#include <cmath>
#include <random>

#include "cbs/oracle.hpp"
#include "cbs/regular.hpp"
#include "support.hpp"

using namespace cbs;
using namespace cbs::testing;

namespace {

Automaton accept_all(std::vector<Value> alphabet) {
  Automaton a(1, 0);
  a.set_accepting(0);
  for (Value v : alphabet) a.add_transition(0, v, 0);
  return a;
}

// Exactly one 1 among binary cells.
Automaton single_one() {
  Automaton a(2, 0);
  a.add_transition(0, 0, 0);
  a.add_transition(0, 1, 1);
  a.add_transition(1, 0, 1);
  a.set_accepting(1);
  return a;
}

Automaton random_dfa(std::mt19937_64& rng, int states, int letters) {
  Automaton a(states, 0);
  for (int q = 0; q < states; ++q) {
    if (rng() % 3 != 0) a.set_accepting(q);
    for (Value v = 0; v < letters; ++v) {
      if (rng() % 4 != 0) a.add_transition(q, v, static_cast<int>(rng() % states));
    }
  }
  return a;
}

}  // namespace

TEST_CASE("automaton basics") {
  Automaton a(2, 0);
  a.add_transition(0, 7, 1);
  a.set_accepting(1);
  CHECK(a.accepts(std::vector<Value>{7}));
  CHECK_FALSE(a.accepts(std::vector<Value>{7, 7}));
  CHECK_THROWS_AS(a.add_transition(0, 7, 0), Error);
  CHECK_THROWS_AS(a.add_transition(0, 1, 5), Error);
}

TEST_CASE("accept-all automaton prunes nothing") {
  DomainStore s = make_store({{0, 1}, {0, 1}});
  Regular r({0, 1}, accept_all({0, 1}), Consistency::kDomain);
  REQUIRE(r.propagate(s));
  CHECK(s.size(0) == 2);
  CHECK(s.size(1) == 2);
  const DensityTable t = r.count(s);
  CHECK(std::exp(t.log_count) == doctest::Approx(4.0));
  for (const auto& vd : t.vars) {
    for (const auto& e : vd.entries) CHECK(e.second == doctest::Approx(0.5));
  }
}

TEST_CASE("single-word automaton fixes every variable") {
  const Value a = 'a', b = 'b';
  Automaton dfa(3, 0);
  dfa.add_transition(0, a, 1);
  dfa.add_transition(1, b, 2);
  dfa.set_accepting(2);
  DomainStore s = make_store({{a, b}, {a, b}});
  Regular r({0, 1}, dfa, Consistency::kDomain);
  REQUIRE(r.propagate(s));
  CHECK(s.values(0) == std::vector<Value>{a});
  CHECK(s.values(1) == std::vector<Value>{b});
}

TEST_CASE("one filled cell among three") {
  DomainStore s = make_store({{0, 1}, {0, 1}, {0, 1}});
  Regular r({0, 1, 2}, single_one(), Consistency::kDomain);
  REQUIRE(r.propagate(s));
  for (int i = 0; i < 3; ++i) CHECK(s.size(i) == 2);
  const DensityTable t = r.count(s);
  CHECK(t.exact);
  CHECK(std::exp(t.log_count) == doctest::Approx(3.0));
  CHECK(*t.density(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(*t.density(0, 0) == doctest::Approx(2.0 / 3.0));
  const ExactTable e = exact_count_densities(r, s);
  CHECK(e.count == 3);
}

TEST_CASE("no accepting path wipes out") {
  DomainStore s = make_store({{0}, {0}});
  Regular r({0, 1}, single_one(), Consistency::kDomain);
  CHECK_FALSE(r.propagate(s));
}

TEST_CASE("regular counting equals enumeration") {
  std::mt19937_64 rng(61);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 7);
    const int letters = 2 + static_cast<int>(rng() % 3);
    const Automaton dfa = random_dfa(rng, 2 + static_cast<int>(rng() % 4), letters);
    const auto domains = random_domains(rng, k, 0, letters - 1, 0.7);
    Regular r(iota_vars(k), dfa, Consistency::kDomain);
    const ExactTable exact = exact_count_densities(r, domains);
    DomainStore s = make_store(domains);
    const bool ok = r.propagate(s);
    CHECK(ok == (exact.count > 0));
    if (!ok) continue;
    ++checked;
    // Filtering keeps exactly the supported values.
    for (int i = 0; i < k; ++i) {
      for (const auto& [v, dens] : exact.vars[i].entries) CHECK(s.contains(i, v) == (dens > 0));
    }
    const DensityTable t = r.count(s);
    CHECK(std::exp(t.log_count) == doctest::Approx(static_cast<double>(exact.count)));
    for (int i = 0; i < k; ++i) {
      double sum = 0.0;
      for (const auto& [v, dens] : exact.vars[i].entries) {
        if (dens == 0) continue;
        CHECK(*t.density(i, v) == doctest::Approx(to_double(dens)).epsilon(1e-12));
        sum += *t.density(i, v);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("path mass is conserved across layers") {
  std::mt19937_64 rng(67);
  for (int trial = 0; trial < 100; ++trial) {
    const int k = 2 + static_cast<int>(rng() % 6);
    const Automaton dfa = random_dfa(rng, 4, 3);
    DomainStore s = make_store(random_domains(rng, k, 0, 2, 0.8));
    Regular r(iota_vars(k), dfa, Consistency::kDomain);
    if (!r.propagate(s)) continue;
    const LayeredGraph g = r.build_graph(s);
    const auto pc = g.count_paths();
    for (int i = 0; i < k; ++i) {
      double mass = -std::numeric_limits<double>::infinity();
      for (const auto& arc : g.arcs(i)) mass = log_add(mass, pc.log_in[i][arc.from] + pc.log_out[i + 1][arc.to]);
      CHECK(mass == doctest::Approx(pc.log_total).epsilon(1e-12));
    }
  }
}

TEST_CASE("long words fall back to log-space counts") {
  const int k = 70;
  DomainStore s;
  for (int i = 0; i < k; ++i) s.add_variable({0, 1});
  Regular r(iota_vars(k), accept_all({0, 1}), Consistency::kDomain);
  const auto pc = r.build_graph(s).count_paths();
  CHECK(pc.overflow);
  CHECK(pc.log_total == doctest::Approx(k * std::log(2.0)));
  const DensityTable t = r.count(s);
  CHECK(*t.density(33, 1) == doctest::Approx(0.5));
}
