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

#include "cbs/alldiff.hpp"
#include "cbs/bounds.hpp"
#include "cbs/oracle.hpp"
#include "support.hpp"

using namespace cbs;
using namespace cbs::testing;

namespace {

std::vector<std::vector<Value>> zero_diagonal(int n) {
  std::vector<std::vector<Value>> d(n);
  for (int i = 0; i < n; ++i) {
    for (int v = 1; v <= n; ++v) {
      if (v != i + 1) d[i].push_back(v);
    }
  }
  return d;
}

std::vector<std::vector<int>> to_matrix(const std::vector<std::vector<Value>>& domains, int width) {
  std::vector<std::vector<int>> m(domains.size(), std::vector<int>(width, 0));
  for (std::size_t i = 0; i < domains.size(); ++i) {
    for (Value v : domains[i]) m[i][v - 1] = 1;
  }
  return m;
}

}  // namespace

TEST_CASE("bound factor tables") {
  const BoundFactors f(40);
  CHECK(f.bm(1) == doctest::Approx(0.0));
  CHECK(f.bm(0) == kLogZero);
  for (int r = 2; r <= 40; ++r) CHECK(f.bm(r) >= f.bm(r - 1));
  for (int r = 1; r <= 40; ++r) {
    for (int i = 1; i <= 40; ++i) CHECK(f.lb(r, i) >= 0.0);
  }
}

TEST_CASE("Bregman-Minc bound examples") {
  const std::vector<int> six_fives(6, 5);
  CHECK(std::exp(log_bm_bound(six_fives)) == doctest::Approx(312.62).epsilon(1e-4));
  const std::vector<int> ones(7, 1);
  CHECK(std::exp(log_bm_bound(ones)) == doctest::Approx(1.0));
  const std::vector<int> threes(3, 3);
  CHECK(std::exp(log_bm_bound(threes)) == doctest::Approx(6.0));
  const std::vector<int> with_zero{3, 0, 2};
  CHECK(log_bm_bound(with_zero) == kLogZero);
}

TEST_CASE("Liang-Bai bound examples") {
  const std::vector<int> threes(3, 3);
  CHECK(std::exp(log_lb_bound_ordered(threes)) == doctest::Approx(6.0));
  CHECK(std::exp(log_lb_bound(threes)) == doctest::Approx(6.0));
  const std::vector<int> ones(5, 1);
  CHECK(std::exp(log_lb_bound(ones)) == doctest::Approx(1.0));
}

TEST_CASE("both bounds dominate the permanent of random 0-1 matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 5);
    auto domains = random_domains(rng, n, 1, n, 0.6);
    const double perm = static_cast<double>(exact_permanent(to_matrix(domains, n)));
    std::vector<int> rows;
    for (const auto& d : domains) rows.push_back(static_cast<int>(d.size()));
    CHECK(std::exp(log_lb_bound(rows)) >= perm * (1 - 1e-9));
    CHECK(std::exp(log_bm_bound(rows)) >= perm * (1 - 1e-9));
  }
}

TEST_CASE("alldifferent count examples") {
  CHECK(std::exp(AlldiffCounter({{1, 2}, {1, 2}}).log_count()) == doctest::Approx(2.0));
  CHECK(std::exp(AlldiffCounter({{3}, {1}, {2}}).log_count()) == doctest::Approx(1.0));
  const AlldiffCounter six(zero_diagonal(6));
  CHECK(std::exp(six.log_count()) == doctest::Approx(312.62).epsilon(1e-4));
  CHECK(exact_permanent(to_matrix(zero_diagonal(6), 6)) == 265);
}

TEST_CASE("alldifferent densities examples") {
  const std::vector<VarId> xy{0, 1};
  auto sym = AlldiffCounter({{1, 2}, {1, 2}}).densities(xy);
  CHECK(sym[0].entries[0].second == doctest::Approx(0.5));
  CHECK(sym[0].entries[1].second == doctest::Approx(0.5));

  auto cyc = AlldiffCounter({{1, 2}, {2, 3}, {1, 3}}).densities({0, 1, 2});
  for (const auto& vd : cyc) {
    REQUIRE(vd.entries.size() == 2);
    CHECK(vd.entries[0].second == doctest::Approx(0.5));
    CHECK(vd.entries[1].second == doctest::Approx(0.5));
  }
  AllDifferent c({0, 1, 2}, Consistency::kDomain);
  const ExactTable exact = exact_count_densities(c, std::vector<std::vector<Value>>{{1, 2}, {2, 3}, {1, 3}});
  CHECK(exact.count == 2);
  CHECK(exact.vars[0].entries[0].second == Rational(1, 2));
}

TEST_CASE("padding with more values than variables") {
  // Two variables over three values: 6 injective assignments.
  const AlldiffCounter c({{1, 2, 3}, {1, 2, 3}});
  CHECK(std::exp(c.log_count()) >= 6.0 - 1e-9);
  AllDifferent con({0, 1}, Consistency::kDomain);
  CHECK(exact_count_densities(con, std::vector<std::vector<Value>>{{1, 2, 3}, {1, 2, 3}}).count == 6);
}

TEST_CASE("alldifferent bound is sound on random instances") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 7);
    const int width = n + static_cast<int>(rng() % 3);
    auto domains = random_domains(rng, n, 1, width, 0.55);
    AllDifferent con(iota_vars(n), Consistency::kDomain);
    const ExactTable exact = exact_count_densities(con, domains);
    const double bound = std::exp(AlldiffCounter(domains).log_count());
    CHECK(bound >= static_cast<double>(exact.count) * (1 - 1e-9));
  }
}

TEST_CASE("incremental probe equals the from-scratch bound") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const int width = n + static_cast<int>(rng() % 3);
    auto domains = random_domains(rng, n, 1, width, 0.6);
    const AlldiffCounter c(domains);
    for (int i = 0; i < n; ++i) {
      if (domains[i].size() < 2) continue;
      for (Value d : domains[i]) {
        const double inc = c.probe(i, d);
        const double scratch = c.probe_from_scratch(i, d);
        if (scratch == kLogZero) {
          CHECK(inc == kLogZero);
        } else {
          CHECK(inc == doctest::Approx(scratch).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("alldifferent densities normalize and correlate with exact densities") {
  std::mt19937_64 rng(23);
  double total_rho = 0.0;
  int samples = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 5);
    auto domains = random_domains(rng, n, 1, n, 0.6);
    AllDifferent con(iota_vars(n), Consistency::kDomain);
    DomainStore store = make_store(domains);
    if (!con.propagate(store)) continue;
    const DensityTable t = con.count(store);
    const ExactTable exact = exact_count_densities(con, store);
    std::vector<double> approx_d, exact_d;
    for (std::size_t i = 0; i < t.vars.size(); ++i) {
      double sum = 0.0;
      for (std::size_t k = 0; k < t.vars[i].entries.size(); ++k) {
        sum += t.vars[i].entries[k].second;
        if (store.size(t.vars[i].var) > 1) {
          approx_d.push_back(t.vars[i].entries[k].second);
          exact_d.push_back(to_double(exact.vars[i].entries[k].second));
        }
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    if (approx_d.size() > 2) {
      total_rho += spearman(approx_d, exact_d);
      ++samples;
    }
  }
  REQUIRE(samples > 50);
  CHECK(total_rho / samples > 0.0);
}

TEST_CASE("symmetric alldifferent counting") {
  std::vector<std::vector<Value>> k6(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j) k6[i].push_back(j + 1);
    }
  }
  const SymmetricCounter c(k6, 1);
  CHECK(std::exp(c.log_count()) == doctest::Approx(17.68).epsilon(1e-3));
  SymmetricAllDifferent con(iota_vars(6), 1, Consistency::kDomain);
  CHECK(exact_count_densities(con, k6).count == 15);

  CHECK(std::exp(SymmetricCounter({{2}, {1}}, 1).log_count()) == doctest::Approx(1.0));
  CHECK(std::exp(SymmetricCounter({{1, 2}, {0, 2}, {0, 1}}, 0).log_count()) == 0.0);

  std::vector<std::vector<Value>> k4(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) k4[i].push_back(j);
    }
  }
  CHECK(std::exp(SymmetricCounter(k4, 0).log_count()) == doctest::Approx(3.3019).epsilon(1e-3));
  SymmetricAllDifferent con4(iota_vars(4), 0, Consistency::kDomain);
  CHECK(exact_count_densities(con4, k4).count == 3);

  const auto dens = SymmetricCounter(k6, 1).densities(iota_vars(6));
  for (const auto& vd : dens) {
    for (const auto& e : vd.entries) CHECK(e.second == doctest::Approx(0.2));
  }
}

TEST_CASE("symmetric bound reduces to Bregman-Minc on bipartite graphs") {
  // Vertices 0..h-1 on one side, h..2h-1 on the other; edges only across.
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const int h = 2 + static_cast<int>(rng() % 4);
    std::vector<std::vector<int>> adj(h, std::vector<int>(h, 0));
    for (auto& row : adj) {
      for (int& e : row) e = (rng() % 3) != 0;
    }
    std::vector<std::vector<Value>> domains(2 * h);
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < h; ++j) {
        if (adj[i][j]) {
          domains[i].push_back(h + j);
          domains[h + j].push_back(i);
        }
      }
    }
    std::vector<int> rows, cols(h, 0);
    for (int i = 0; i < h; ++i) {
      int r = 0;
      for (int j = 0; j < h; ++j) {
        r += adj[i][j];
        cols[j] += adj[i][j];
      }
      rows.push_back(r);
    }
    // Degree-one vertices are forced pairs, which the counter eliminates.
    bool thin = false;
    for (auto& d : domains) thin = thin || d.size() < 2;
    if (thin) continue;
    const double sym = SymmetricCounter(domains, 0).log_count();
    const double bm = (log_bm_bound(rows) + log_bm_bound(cols)) / 2.0;
    CHECK(sym == doctest::Approx(bm).epsilon(1e-12));
  }
}

TEST_CASE("symmetric alldifferent filtering") {
  DomainStore s = make_store({{1, 2, 3}, {0, 2}, {0, 1, 3}, {0, 1}});
  SymmetricAllDifferent con(iota_vars(4), 0, Consistency::kDomain);
  REQUIRE(con.propagate(s));
  // x1 = 2 forces x2 = 1 and so on; every value pair must be mutual.
  for (int i = 0; i < 4; ++i) {
    for (Value v : s.values(i)) CHECK(s.contains(v, i));
  }
  CHECK(con.is_satisfied(std::vector<Value>{1, 0, 3, 2}));
  CHECK_FALSE(con.is_satisfied(std::vector<Value>{1, 2, 3, 0}));
}
