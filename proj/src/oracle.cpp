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

#include "cbs/oracle.hpp"

#include <limits>
#include <string>
#include <unordered_map>

#include "cbs/alldiff.hpp"

namespace cbs {
namespace {

constexpr int kPermanentMax = 12;

std::uint64_t permanent_rec(const std::vector<std::vector<int>>& m, int row, std::uint32_t used,
                            std::unordered_map<std::uint32_t, std::uint64_t>& memo) {
  const int n = static_cast<int>(m.size());
  if (row == n) return 1;
  auto it = memo.find(used);
  if (it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (int c = 0; c < n; ++c) {
    if (m[row][c] == 0 || (used >> c) & 1U) continue;
    total += permanent_rec(m, row + 1, used | (1U << c), memo);
  }
  memo.emplace(used, total);
  return total;
}

// Calls f(tuple) for every element of the cartesian product.
template <class F>
void for_each_tuple(const std::vector<std::vector<Value>>& domains, F&& f) {
  const std::size_t n = domains.size();
  for (const auto& d : domains) {
    if (d.empty()) return;
  }
  std::vector<std::size_t> idx(n, 0);
  std::vector<Value> tuple(n);
  for (std::size_t i = 0; i < n; ++i) tuple[i] = domains[i][0];
  while (true) {
    f(tuple);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++idx[i] < domains[i].size()) {
        tuple[i] = domains[i][idx[i]];
        break;
      }
      idx[i] = 0;
      tuple[i] = domains[i][0];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

void check_cap(const std::vector<std::vector<Value>>& domains, std::uint64_t cap) {
  const std::uint64_t tuples = tuple_count(domains);
  if (tuples > cap) {
    throw Error(ErrorKind::kCapExceeded,
                "enumeration of " + std::to_string(tuples) + " tuples exceeds the cap of " + std::to_string(cap));
  }
}

}  // namespace

std::uint64_t tuple_count(const std::vector<std::vector<Value>>& domains) {
  std::uint64_t total = 1;
  for (const auto& d : domains) {
    if (d.empty()) return 0;
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(d.size()), &total)) {
      return std::numeric_limits<std::uint64_t>::max();
    }
  }
  return total;
}

std::uint64_t exact_permanent(const std::vector<std::vector<int>>& matrix) {
  const int n = static_cast<int>(matrix.size());
  if (n > kPermanentMax) {
    throw Error(ErrorKind::kCapExceeded, "permanent oracle limited to " + std::to_string(kPermanentMax) + " rows");
  }
  for (const auto& row : matrix) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorKind::kInvalidArgument, "matrix is not square");
  }
  std::unordered_map<std::uint32_t, std::uint64_t> memo;
  return permanent_rec(matrix, 0, 0, memo);
}

ExactTable exact_count_densities(const Constraint& c, const std::vector<std::vector<Value>>& domains,
                                 std::uint64_t cap) {
  if (domains.size() != c.scope().size()) {
    throw Error(ErrorKind::kInvalidArgument, "one domain per scope variable expected");
  }
  check_cap(domains, cap);
  std::vector<std::vector<BigInt>> hits(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) hits[i].assign(domains[i].size(), 0);
  std::vector<std::unordered_map<Value, std::size_t>> pos(domains.size());
  for (std::size_t i = 0; i < domains.size(); ++i) {
    for (std::size_t k = 0; k < domains[i].size(); ++k) pos[i][domains[i][k]] = k;
  }
  ExactTable out;
  for_each_tuple(domains, [&](const std::vector<Value>& t) {
    if (!c.is_satisfied(t)) return;
    ++out.count;
    for (std::size_t i = 0; i < t.size(); ++i) ++hits[i][pos[i][t[i]]];
  });
  for (std::size_t i = 0; i < domains.size(); ++i) {
    ExactVarDensities vd;
    vd.var = c.scope()[i];
    for (std::size_t k = 0; k < domains[i].size(); ++k) {
      vd.entries.emplace_back(domains[i][k], out.count == 0 ? Rational(0) : Rational(hits[i][k], out.count));
    }
    out.vars.push_back(std::move(vd));
  }
  return out;
}

ExactTable exact_count_densities(const Constraint& c, const DomainStore& store, std::uint64_t cap) {
  return exact_count_densities(c, scope_domains(store, c.scope()), cap);
}

ExactSolveResult exact_solve(const Engine& engine, bool keep_all, std::uint64_t cap) {
  std::vector<std::vector<Value>> domains;
  for (VarId x = 0; x < engine.num_vars(); ++x) domains.push_back(engine.domains().values(x));
  check_cap(domains, cap);
  ExactSolveResult out;
  std::vector<Value> sub;
  for_each_tuple(domains, [&](const std::vector<Value>& t) {
    for (int c = 0; c < engine.num_constraints(); ++c) {
      const Constraint& con = engine.constraint(c);
      sub.clear();
      for (VarId x : con.scope()) sub.push_back(t[x]);
      if (!con.is_satisfied(sub)) return;
    }
    if (!out.sat) out.first = t;
    out.sat = true;
    ++out.solutions;
    if (keep_all) out.all.push_back(t);
  });
  return out;
}

}  // namespace cbs
