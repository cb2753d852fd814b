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

// Acceptance gate: runs criteria 1-11 and prints one PASS/FAIL line each.
// Usage: acceptance [--cli PATH] [--allow-fail N[,N...]]
// The exit status is nonzero when a criterion fails that is not listed in
// --allow-fail.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cbs/alldiff.hpp"
#include "cbs/bench.hpp"
#include "cbs/bounds.hpp"
#include "cbs/gcc.hpp"
#include "cbs/heuristics.hpp"
#include "cbs/knapsack.hpp"
#include "cbs/oracle.hpp"
#include "cbs/regular.hpp"
#include "cbs/search.hpp"
#include "support.hpp"

using namespace cbs;
using namespace cbs::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (pass) detail.clear();
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
  void note(const std::string& what) {
    if (pass) detail += (detail.empty() ? "" : "; ") + what;
  }
};

std::string fmt(double v, int precision = 4) {
  std::ostringstream out;
  out.precision(precision);
  out << std::fixed << v;
  return out.str();
}

bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

// ---- 1 ----

Verdict knapsack_table() {
  Verdict v;
  const std::vector<std::vector<Value>> domains = {{0, 1, 2}, {0, 1, 3}, {0, 1, 2}, {1, 2}};
  const std::vector<std::vector<int>> table = {{9, 10, 3}, {8, 8, 6}, {9, 7, 6}, {11, 11}};
  Knapsack k(iota_vars(4), {3, 1, 2, 1}, 5, 8, Consistency::kDomain);
  DomainStore s = make_store(domains);
  v.require(k.propagate(s), "filtering failed");
  k.count(s);  // warm-up
  const auto t0 = Clock::now();
  const DensityTable t = k.count(s);
  const double ms = seconds_since(t0) * 1e3;
  const ExactTable exact = exact_count_densities(k, domains);
  v.require(exact.count == 22, "oracle count " + exact.count.str());
  v.require(std::abs(std::exp(t.log_count) - 22.0) < 1e-9, "solver count " + fmt(std::exp(t.log_count)));
  int pairs = 0;
  for (int i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < table[i].size(); ++j) {
      const Value val = domains[i][j];
      const Rational want(table[i][j], 22);
      v.require(exact.vars[i].entries[j].first == val && exact.vars[i].entries[j].second == want,
                "oracle density x" + std::to_string(i) + "=" + std::to_string(val));
      const auto got = t.density(i, val);
      v.require(got && std::abs(*got - static_cast<double>(want)) <= 1e-12,
                "solver density x" + std::to_string(i) + "=" + std::to_string(val));
      ++pairs;
    }
  }
  v.require(pairs == 11, "expected eleven densities");
  v.require(ms < 1.0, "count took " + fmt(ms, 3) + " ms");
  v.note("count 22, 11 densities exact, " + fmt(ms, 3) + " ms");
  return v;
}

// ---- 2 ----

Verdict permanent_bounds() {
  Verdict v;
  const double bm = std::exp(log_bm_bound(std::vector<int>(6, 5)));
  std::vector<std::vector<Value>> k6(6);
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      if (i != j) k6[i].push_back(j);
    }
  }
  const double friedland = std::exp(SymmetricCounter(k6, 0).log_count());
  SymmetricAllDifferent con(iota_vars(6), 0, Consistency::kDomain);
  const BigInt matchings = exact_count_densities(con, k6).count;
  v.require(std::abs(bm - 312.62) <= 0.01, "Bregman-Minc " + fmt(bm));
  v.require(std::abs(friedland - 17.68) <= 0.01, "Friedland " + fmt(friedland));
  v.require(matchings == 15, "perfect matchings " + matchings.str());
  v.note("BM " + fmt(bm) + ", Friedland " + fmt(friedland) + ", matchings " + matchings.str());
  return v;
}

// ---- 3 ----

Verdict gcc_pipeline() {
  Verdict v;
  const std::vector<std::vector<Value>> domains{{1, 2, 3}, {2}, {1, 2}, {1, 2, 3}, {1, 2}, {1, 3}};
  const std::vector<ValueBounds> bounds{{1, 1, 2}, {2, 3, 3}, {3, 0, 2}};
  const GccBound b = gcc_bound(domains, bounds);
  const double lower = std::exp(b.lower_graph), residual = std::exp(b.residual), total = std::exp(b.total);
  const GccBound probe = gcc_probe(domains, bounds, 0, 1);
  const auto dens = gcc_densities(domains, bounds, iota_vars(6));
  const double d11 = dens[0].entries[0].second;
  Gcc c(iota_vars(6), bounds, Consistency::kDomain);
  const ExactTable exact = exact_count_densities(c, domains);

  v.require(std::abs(lower - 35.0) < 1e-6, "lower graph " + fmt(lower, 2) + " (expected 35)");
  v.require(std::abs(residual - 6.0) < 1e-6, "residual " + fmt(residual, 2) + " (expected 6)");
  v.require(std::abs(std::floor(total + 1e-9) - 52.0) < 1e-6, "total " + fmt(total, 2) + " (expected 52)");
  v.require(std::abs(std::exp(probe.total) - 9.0) < 1e-6, "probe x1=1 " + fmt(std::exp(probe.total), 2));
  v.require(std::abs(d11 - 0.18) <= 0.01, "density " + fmt(d11, 4));
  v.require(exact.count == 19, "oracle count " + exact.count.str());
  v.require(exact.vars[0].entries[0].second == Rational(5, 19), "oracle density");
  v.note("35, 6, 52, 9, " + fmt(d11, 3) + ", 19, 5/19");
  return v;
}

// ---- 4 ----

Verdict gaussian_moments() {
  Verdict v;
  const std::vector<Value> d = {0, 1, 2, 3, 4, 5};
  const LinearMoments m = linear_moments({3, 4, 2}, {d, d, d}, false);
  v.require(m.mean == 22.5, "mean " + fmt(m.mean, 6));
  v.require(std::abs(m.variance - 84.583) <= 0.001, "variance " + fmt(m.variance, 6));
  v.note("mean " + fmt(m.mean, 1) + ", variance " + fmt(m.variance, 3));
  return v;
}

// ---- 5 ----

std::vector<std::vector<int>> to_matrix(const std::vector<std::vector<Value>>& domains, int n) {
  std::vector<std::vector<int>> m(domains.size(), std::vector<int>(n, 0));
  for (std::size_t i = 0; i < domains.size(); ++i) {
    for (Value val : domains[i]) m[i][val - 1] = 1;
  }
  return m;
}

// Bound of the constraint's count after root propagation; -1 on wipeout.
double bound_after_propagation(std::unique_ptr<Constraint> c, const std::vector<std::vector<Value>>& domains) {
  Engine e;
  for (const auto& d : domains) e.add_var(d);
  e.post(std::move(c));
  if (e.propagate() == PropStatus::kWipeout) return -1.0;
  return std::exp(e.collect_densities().front()->log_count);
}

Verdict bound_soundness() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(2024);
  const double slack = 1e-9;
  int alldiff = 0, gcc = 0, matrices = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 6);
    const auto domains = random_domains(rng, n, 1, n + static_cast<int>(rng() % 2), 0.6);
    Engine tmp;
    for (const auto& d : domains) tmp.add_var(d);
    tmp.post(std::make_unique<AllDifferent>(iota_vars(n), Consistency::kDomain));
    const double exact = static_cast<double>(exact_solve(tmp).solutions);
    const double bound =
        bound_after_propagation(std::make_unique<AllDifferent>(iota_vars(n), Consistency::kDomain), domains);
    v.require(bound < 0 ? exact == 0 : bound >= exact * (1 - slack),
              "alldifferent trial " + std::to_string(trial));
    ++alldiff;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const int values = 2 + static_cast<int>(rng() % 3);
    const auto domains = random_domains(rng, n, 1, values, 0.6);
    std::vector<ValueBounds> b;
    for (Value d = 1; d <= values; ++d) {
      const int lo = static_cast<int>(rng() % 2);
      b.push_back({d, lo, lo + static_cast<int>(rng() % 3)});
    }
    Gcc plain(iota_vars(n), b, Consistency::kDomain);
    const double exact = static_cast<double>(exact_count_densities(plain, domains).count);
    const double bound = bound_after_propagation(std::make_unique<Gcc>(iota_vars(n), b, Consistency::kDomain), domains);
    v.require(bound < 0 ? exact == 0 : bound >= exact * (1 - slack), "gcc trial " + std::to_string(trial));
    const double raw = std::exp(gcc_bound(domains, b).total);
    v.require(raw >= exact * (1 - slack), "gcc raw bound trial " + std::to_string(trial));
    ++gcc;
  }
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    const auto domains = random_domains(rng, n, 1, n, 0.5);
    const double perm = static_cast<double>(exact_permanent(to_matrix(domains, n)));
    std::vector<int> rows;
    for (const auto& d : domains) rows.push_back(static_cast<int>(d.size()));
    v.require(std::exp(log_bm_bound(rows)) >= perm * (1 - slack), "BM matrix trial " + std::to_string(trial));
    v.require(std::exp(log_lb_bound(rows)) >= perm * (1 - slack), "LB matrix trial " + std::to_string(trial));
    ++matrices;
  }
  const double s = seconds_since(t0);
  v.require(s < 60.0, "took " + fmt(s, 1) + " s");
  v.note(std::to_string(alldiff) + " alldifferent, " + std::to_string(gcc) + " gcc, " + std::to_string(matrices) +
         " matrices, " + fmt(s, 2) + " s");
  return v;
}

// ---- 6 ----

Automaton random_dfa(std::mt19937_64& rng, int states, int letters) {
  Automaton a(states, 0);
  for (int q = 0; q < states; ++q) {
    if (rng() % 3 != 0) a.set_accepting(q);
    for (Value val = 0; val < letters; ++val) {
      if (rng() % 4 != 0) a.add_transition(q, val, static_cast<int>(rng() % states));
    }
  }
  return a;
}

// Compares solver counts with the oracle on the propagated domains.
bool agrees_with_oracle(const Constraint& c, const std::vector<std::vector<Value>>& domains) {
  const ExactTable exact = exact_count_densities(c, domains);
  DomainStore s = make_store(domains);
  Constraint& mut = const_cast<Constraint&>(c);
  const bool ok = mut.propagate(s);
  if (!ok) return exact.count == 0;
  if (exact.count == 0) return false;
  const DensityTable t = c.count(s);
  if (!close_rel(std::exp(t.log_count), static_cast<double>(exact.count), 1e-9)) return false;
  for (std::size_t i = 0; i < exact.vars.size(); ++i) {
    for (const auto& [val, q] : exact.vars[i].entries) {
      const auto got = t.density(exact.vars[i].var, val);
      const double want = static_cast<double>(q);
      if (got ? std::abs(*got - want) > 1e-9 : want != 0.0) return false;
    }
  }
  return true;
}

Verdict exact_counting() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(77);
  int regular = 0, knapsack = 0;
  while (regular < 500) {
    const int k = 1 + static_cast<int>(rng() % 8);
    const int letters = 2 + static_cast<int>(rng() % 3);
    const auto domains = random_domains(rng, k, 0, letters - 1, 0.7);
    if (tuple_count(domains) > 100000) continue;
    Regular r(iota_vars(k), random_dfa(rng, 2 + static_cast<int>(rng() % 4), letters), Consistency::kDomain);
    v.require(agrees_with_oracle(r, domains), "regular instance " + std::to_string(regular));
    ++regular;
  }
  while (knapsack < 500) {
    const int k = 1 + static_cast<int>(rng() % 6);
    const auto domains = random_domains(rng, k, -2, 5, 0.6);
    if (tuple_count(domains) > 100000) continue;
    std::vector<std::int64_t> coeffs(k);
    for (auto& c : coeffs) c = static_cast<std::int64_t>(rng() % 9) - 3;
    const std::int64_t lo = static_cast<std::int64_t>(rng() % 21) - 6;
    Knapsack ks(iota_vars(k), coeffs, lo, lo + static_cast<std::int64_t>(rng() % 6), Consistency::kDomain);
    v.require(agrees_with_oracle(ks, domains), "knapsack instance " + std::to_string(knapsack));
    ++knapsack;
  }
  const double s = seconds_since(t0);
  v.require(s < 60.0, "took " + fmt(s, 1) + " s");
  v.note(std::to_string(regular) + " regular, " + std::to_string(knapsack) + " knapsack, " + fmt(s, 2) + " s");
  return v;
}

// ---- 7 ----

// Random dives with restarts on generated micro-models and benchmark models,
// checking every table the engine hands out.
Verdict normalization() {
  Verdict v;
  std::mt19937_64 rng(99);
  std::uint64_t tables = 0;
  auto check_engine = [&](Engine& e, int dives) {
    if (e.propagate() == PropStatus::kWipeout) return;
    for (int dive = 0; dive < dives; ++dive) {
      for (int guard = 0; guard < 500 && !e.all_bound(); ++guard) {
        for (const auto& t : e.collect_densities()) {
          ++tables;
          for (const auto& vd : t->vars) {
            if (e.domains().is_bound(vd.var)) continue;
            double sum = 0;
            for (const auto& [val, p] : vd.entries) sum += p;
            if (std::abs(sum - 1.0) > 1e-9) {
              v.require(false, std::string(e.constraint(t->constraint).kind()) + " table sums to " + fmt(sum, 12));
              return;
            }
          }
        }
        std::vector<VarId> open;
        for (VarId x = 0; x < e.num_vars(); ++x) {
          if (!e.domains().is_bound(x)) open.push_back(x);
        }
        const VarId x = open[uniform_below(rng, open.size())];
        const auto vals = e.domains().values(x);
        const Value val = vals[uniform_below(rng, vals.size())];
        const Decision d = rng() % 3 == 0 ? Decision::refute(x, val) : Decision::assign(x, val);
        if (e.push_decision(d) == PropStatus::kWipeout) {
          e.backtrack_to(e.level() - 1);
          if (e.level() == 0) break;
          e.backtrack_to(e.level() - 1);
        }
      }
      e.backtrack_to(0);
    }
  };
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    Engine e;
    build_model(generate_instance(ProblemKind::kCsp, {.n = 6}, seed), e);
    check_engine(e, 5);
  }
  const std::vector<std::pair<ProblemKind, GenerateParams>> kinds = {
      {ProblemKind::kQwh, {.n = 8}},          {ProblemKind::kMagic, {.n = 4, .prefill = 0.2}},
      {ProblemKind::kNonogram, {.n = 8}},     {ProblemKind::kMultiknap, {.n = 10, .m = 3}},
      {ProblemKind::kRostering, {.n = 6}},    {ProblemKind::kKpRostering, {.m = 5, .forbidden = 3}},
      {ProblemKind::kTtppv, {.n = 6}},
  };
  for (const auto& [kind, params] : kinds) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      for (KnapsackMode mode : {KnapsackMode::kExact, KnapsackMode::kGaussian}) {
        ModelOptions o;
        o.knapsack_mode = mode;
        if (mode == KnapsackMode::kGaussian) o.consistency = Consistency::kBounds;
        Engine e;
        build_model(generate_instance(kind, params, seed), e, o);
        check_engine(e, 3);
      }
    }
  }
  v.note(std::to_string(tables) + " tables checked");
  return v;
}

// ---- 8 ----

Verdict third_moment() {
  Verdict v;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(8);
  double worst = 0.0;
  const int trials = 10000;
  for (int trial = 0; trial < trials; ++trial) {
    const double k = 1 + static_cast<double>(rng() % 20);
    const int a = static_cast<int>(rng() % 41) - 20;
    const int b = a + static_cast<int>(rng() % 15);
    std::uniform_int_distribution<int> x(a, b);
    const int samples = 200;
    std::vector<double> xs(samples);
    double mean = 0;
    for (auto& s : xs) {
      s = k * x(rng);
      mean += s / samples;
    }
    double m3 = 0;
    for (double s : xs) m3 += std::abs(std::pow(s - mean, 3)) / samples;
    const double cap = k * k * k * std::pow(b - a, 3);
    if (cap > 0) worst = std::max(worst, m3 / cap);
    v.require(m3 <= cap + 1e-9, "trial " + std::to_string(trial));
  }
  const double s = seconds_since(t0);
  v.require(s < 10.0, "took " + fmt(s, 1) + " s");
  v.note(std::to_string(trials) + " draws, largest ratio " + fmt(worst, 4) + ", " + fmt(s, 2) + " s");
  return v;
}

// ---- 9 ----

struct Sweep {
  int solved = 0;
  double median = 0;
};

Sweep run_sweep(const std::vector<Instance>& insts, HeuristicKind k) {
  std::vector<double> bt;
  Sweep out;
  for (std::size_t i = 0; i < insts.size(); ++i) {
    Engine e;
    build_model(insts[i], e);
    Heuristic h(k);
    SearchOptions opt;
    opt.max_backtracks = 100000;
    opt.timeout_s = 25.0;
    opt.seed = i;
    const SearchStats s = solve(e, h, opt);
    const bool solved = s.status == SearchStatus::kSat && check_solution(insts[i], s.solution);
    if (solved) ++out.solved;
    // Unsolved runs count as the full budget.
    bt.push_back(solved ? static_cast<double>(s.backtracks) : static_cast<double>(opt.max_backtracks));
  }
  std::sort(bt.begin(), bt.end());
  out.median = (bt[bt.size() / 2] + bt[(bt.size() - 1) / 2]) / 2.0;
  return out;
}

Verdict directionality() {
  Verdict v;
  const auto t0 = Clock::now();
  std::vector<Instance> qwh, nono;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    qwh.push_back(generate_instance(ProblemKind::kQwh, {.n = 12, .holes = 0.42}, seed));
    nono.push_back(generate_instance(ProblemKind::kNonogram, {.n = 16, .m = 16}, seed));
  }
  const Sweep qs = run_sweep(qwh, HeuristicKind::kMaxSD), qd = run_sweep(qwh, HeuristicKind::kDom);
  const Sweep ns = run_sweep(nono, HeuristicKind::kMaxSD), nd = run_sweep(nono, HeuristicKind::kDom);
  v.require(qs.solved >= qd.solved, "qwh solved maxSD " + std::to_string(qs.solved) + " < dom " + std::to_string(qd.solved));
  v.require(qs.median <= qd.median, "qwh median maxSD " + fmt(qs.median, 1) + " > dom " + fmt(qd.median, 1));
  v.require(ns.solved >= nd.solved,
            "nonogram solved maxSD " + std::to_string(ns.solved) + " < dom " + std::to_string(nd.solved));
  v.require(ns.median <= nd.median, "nonogram median maxSD " + fmt(ns.median, 1) + " > dom " + fmt(nd.median, 1));
  const double s = seconds_since(t0);
  v.require(s < 600.0, "took " + fmt(s, 1) + " s");
  std::ostringstream out;
  out << "qwh solved " << qs.solved << "/" << qd.solved << " median " << qs.median << "/" << qd.median
      << ", nonogram solved " << ns.solved << "/" << nd.solved << " median " << ns.median << "/" << nd.median
      << " (maxSD/dom), " << fmt(s, 1) << " s";
  v.note(out.str());
  return v;
}

// ---- 10 ----

Verdict completeness() {
  Verdict v;
  const auto t0 = Clock::now();
  int models = 0, sat = 0;
  for (std::uint64_t seed = 0; models < 100; ++seed) {
    const Instance inst = generate_instance(ProblemKind::kCsp, {.n = 3 + static_cast<int>(seed % 5)}, seed);
    Engine oracle;
    build_model(inst, oracle);
    if (tuple_count([&] {
          std::vector<std::vector<Value>> d;
          for (VarId x = 0; x < oracle.num_vars(); ++x) d.push_back(oracle.domains().values(x));
          return d;
        }()) > 1000000) {
      continue;
    }
    const bool truth = exact_solve(oracle).sat;
    sat += truth ? 1 : 0;
    for (Traversal t : {Traversal::kDfs, Traversal::kLds}) {
      Engine e;
      build_model(inst, e);
      Heuristic h(HeuristicKind::kMaxSD);
      SearchOptions opt;
      opt.traversal = t;
      opt.seed = seed;
      const SearchStats s = solve(e, h, opt);
      v.require(s.status == (truth ? SearchStatus::kSat : SearchStatus::kUnsat),
                std::string(to_string(t)) + " disagrees on model " + std::to_string(seed));
      if (s.status == SearchStatus::kSat) {
        v.require(check_solution(inst, s.solution), "invalid solution on model " + std::to_string(seed));
      }
    }
    ++models;
  }
  const double s = seconds_since(t0);
  v.require(s < 60.0, "took " + fmt(s, 1) + " s");
  v.note(std::to_string(models) + " models (" + std::to_string(sat) + " sat), " + fmt(s, 2) + " s");
  return v;
}

// ---- 11 ----

int shell(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_all(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string drop_time_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string out;
  for (std::string line; std::getline(in, line);) {
    std::istringstream fields(line);
    int col = 0;
    for (std::string f; std::getline(fields, f, ','); ++col) {
      if (col != 7) out += f + ",";
    }
    out += "\n";
  }
  return out;
}

Verdict determinism(const std::string& cli) {
  Verdict v;
  if (cli.empty()) {
    v.require(false, "no --cli path given");
    return v;
  }
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("cbsearch_acceptance_" + std::to_string(getpid()));
  fs::create_directories(dir);
  const std::string q = "'" + cli + "'";
  v.require(shell(q + " generate qwh -n 10 --count 4 --seed 1 --out '" + (dir / "inst").string() + "' > /dev/null") == 0,
            "generate failed");
  v.require(shell(q + " generate nonogram -n 8 --count 2 --seed 5 --out '" + (dir / "inst").string() +
                  "' > /dev/null") == 0,
            "generate failed");
  const std::string sweep = q + " bench '" + (dir / "inst").string() +
                            "' --heuristics maxSD,dom,ibs,maxSD+random,domWDeg --traversals dfs,restart,lds"
                            " --seeds 1-3 --restart-scale 5 --max-backtracks 20000";
  v.require(shell(sweep + " --jobs 4 --out '" + (dir / "a.csv").string() + "' 2> /dev/null") == 0, "sweep failed");
  v.require(shell(sweep + " --jobs 2 --out '" + (dir / "b.csv").string() + "' 2> /dev/null") == 0, "rerun failed");
  const std::string a = read_all(dir / "a.csv"), b = read_all(dir / "b.csv");
  const auto rows = static_cast<int>(std::count(a.begin(), a.end(), '\n')) - 1;
  v.require(rows > 0, "empty sweep");
  v.require(drop_time_column(a) == drop_time_column(b), "CSV differs between reruns");
  fs::remove_all(dir);
  v.note(std::to_string(rows) + " rows identical apart from time_ms");
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli;
  std::set<int> allowed;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else if (arg == "--allow-fail" && i + 1 < argc) {
      std::istringstream in(argv[++i]);
      for (std::string n; std::getline(in, n, ',');) allowed.insert(std::stoi(n));
    } else {
      std::cerr << "usage: acceptance [--cli PATH] [--allow-fail N[,N...]]\n";
      return 2;
    }
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"knapsack density table", knapsack_table},
      {"permanent bounds", permanent_bounds},
      {"gcc bound pipeline", gcc_pipeline},
      {"gaussian moments", gaussian_moments},
      {"bound soundness", bound_soundness},
      {"exact counting equivalence", exact_counting},
      {"density normalization", normalization},
      {"third moment", third_moment},
      {"heuristic directionality", directionality},
      {"search completeness", completeness},
      {"sweep determinism", [&] { return determinism(cli); }},
  };

  int unexpected = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.require(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << id << " " << (v.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
              << v.detail << std::endl;
    if (!v.pass && !allowed.count(id)) ++unexpected;
  }
  return unexpected == 0 ? 0 : 1;
}
