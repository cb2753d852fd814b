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

#include <algorithm>
#include <numeric>

#include "cbs/alldiff.hpp"
#include "cbs/bench.hpp"
#include "cbs/gcc.hpp"

namespace cbs {

namespace {

std::vector<Value> range(Value lo, Value hi) {
  std::vector<Value> out;
  for (Value v = lo; v <= hi; ++v) out.push_back(v);
  return out;
}

std::vector<VarId> row_scope(int row, int width) {
  std::vector<VarId> s(width);
  std::iota(s.begin(), s.end(), row * width);
  return s;
}

std::vector<VarId> col_scope(int col, int height, int width) {
  std::vector<VarId> s(height);
  for (int r = 0; r < height; ++r) s[r] = r * width + col;
  return s;
}

std::vector<int> runs_of(const std::vector<Value>& line) {
  std::vector<int> out;
  int run = 0;
  for (Value v : line) {
    if (v == 1) {
      ++run;
    } else if (run > 0) {
      out.push_back(run);
      run = 0;
    }
  }
  if (run > 0) out.push_back(run);
  return out;
}

bool is_permutation_of(std::vector<Value> xs, Value lo) {
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] != lo + static_cast<Value>(i)) return false;
  }
  return true;
}

void post_knapsack(Engine& e, std::vector<VarId> scope, std::vector<std::int64_t> coeffs, std::int64_t lo,
                   std::int64_t hi, const ModelOptions& o) {
  e.post(std::make_unique<Knapsack>(std::move(scope), std::move(coeffs), lo, hi, o.consistency, o.knapsack_mode,
                                    o.exact_moments));
}

void build_grid_latin(const GridData& d, Engine& e, const ModelOptions& o) {
  for (int cell : d.cells) e.add_var(cell > 0 ? std::vector<Value>{cell} : range(1, d.n));
  for (int i = 0; i < d.n; ++i) {
    e.post(std::make_unique<AllDifferent>(row_scope(i, d.n), o.consistency));
    e.post(std::make_unique<AllDifferent>(col_scope(i, d.n, d.n), o.consistency));
  }
}

void build_magic(const GridData& d, Engine& e, const ModelOptions& o) {
  const int n = d.n;
  for (int cell : d.cells) e.add_var(cell > 0 ? std::vector<Value>{cell} : range(1, n * n));
  std::vector<VarId> all(n * n);
  std::iota(all.begin(), all.end(), 0);
  e.post(std::make_unique<AllDifferent>(all, o.consistency));
  const std::int64_t sum = static_cast<std::int64_t>(n) * (static_cast<std::int64_t>(n) * n + 1) / 2;
  const std::vector<std::int64_t> ones(n, 1);
  for (int i = 0; i < n; ++i) {
    post_knapsack(e, row_scope(i, n), ones, sum, sum, o);
    post_knapsack(e, col_scope(i, n, n), ones, sum, sum, o);
  }
  std::vector<VarId> diag, anti;
  for (int i = 0; i < n; ++i) {
    diag.push_back(i * n + i);
    anti.push_back(i * n + (n - 1 - i));
  }
  post_knapsack(e, diag, ones, sum, sum, o);
  post_knapsack(e, anti, ones, sum, sum, o);
}

void build_nonogram(const NonogramData& d, Engine& e, const ModelOptions& o) {
  for (int i = 0; i < d.rows * d.cols; ++i) e.add_var({0, 1});
  for (int r = 0; r < d.rows; ++r) {
    e.post(std::make_unique<Regular>(row_scope(r, d.cols), nonogram_automaton(d.row_clues[r]), o.consistency));
  }
  for (int c = 0; c < d.cols; ++c) {
    e.post(std::make_unique<Regular>(col_scope(c, d.rows, d.cols), nonogram_automaton(d.col_clues[c]),
                                     o.consistency));
  }
}

void build_multiknap(const MultiknapData& d, Engine& e, const ModelOptions& o) {
  for (int i = 0; i < d.n; ++i) e.add_var({0, 1});
  std::vector<VarId> all(d.n);
  std::iota(all.begin(), all.end(), 0);
  post_knapsack(e, all, d.objective, d.target, d.target, o);
  for (std::size_t k = 0; k < d.weights.size(); ++k) post_knapsack(e, all, d.weights[k], 0, d.capacity[k], o);
}

void build_marketsplit(const MarketsplitData& d, Engine& e, const ModelOptions& o) {
  for (int i = 0; i < d.n; ++i) e.add_var({0, 1});
  std::vector<VarId> all(d.n);
  std::iota(all.begin(), all.end(), 0);
  for (std::size_t k = 0; k < d.coeffs.size(); ++k) post_knapsack(e, all, d.coeffs[k], d.rhs[k], d.rhs[k], o);
}

void build_rostering(const RosteringData& d, Engine& e, const ModelOptions& o) {
  const int n = d.n;
  for (int i = 0; i < n * n; ++i) e.add_var(d.preset[i] >= 0 ? std::vector<Value>{d.preset[i]} : range(0, n - 1));
  for (const auto& r : d.removed) {
    if (e.remove_at_root(r.employee * n + r.period, r.value) == PropStatus::kWipeout) break;
  }
  const Automaton dfa = rostering_automaton(n);
  for (int i = 0; i < n; ++i) {
    e.post(std::make_unique<Regular>(row_scope(i, n), dfa, o.consistency));
    e.post(std::make_unique<AllDifferent>(col_scope(i, n, n), o.consistency));
  }
}

void build_kprostering(const KpRosteringData& d, Engine& e, const ModelOptions& o) {
  for (int i = 0; i < d.employees * d.days; ++i) e.add_var(range(1, d.tasks));
  for (const auto& f : d.forbidden) {
    if (e.remove_at_root(f.employee * d.days + f.day, f.task) == PropStatus::kWipeout) break;
  }
  for (int day = 0; day < d.days; ++day) {
    e.post(std::make_unique<AllDifferent>(col_scope(day, d.employees, d.days), o.consistency));
  }
  for (int emp = 0; emp < d.employees; ++emp) {
    post_knapsack(e, row_scope(emp, d.days), d.cost[emp], d.target[emp], d.target[emp], o);
  }
}

void build_ttppv(const TtppvData& d, Engine& e, const ModelOptions& o) {
  const int n = d.n;
  const int rounds = n - 1;
  for (int t = 0; t < n; ++t) {
    std::vector<Value> others;
    for (int u = 0; u < n; ++u) {
      if (u != t) others.push_back(u);
    }
    for (int r = 0; r < rounds; ++r) e.add_var(others);
  }
  for (int t = 0; t < n; ++t) {
    e.post(std::make_unique<AllDifferent>(row_scope(t, rounds), o.consistency));
    e.post(std::make_unique<Regular>(row_scope(t, rounds), ttppv_automaton(d, t), o.consistency));
  }
  for (int r = 0; r < rounds; ++r) {
    e.post(std::make_unique<SymmetricAllDifferent>(col_scope(r, n, rounds), 0, o.consistency));
  }
}

void build_csp(const CspData& d, Engine& e, const ModelOptions& o) {
  for (const auto& dom : d.domains) e.add_var(dom);
  for (const auto& c : d.constraints) {
    const Consistency level = c.level.value_or(o.consistency);
    using T = CspData::Con::Type;
    switch (c.type) {
      case T::kAlldiff:
        e.post(std::make_unique<AllDifferent>(c.scope, level));
        break;
      case T::kSymAlldiff:
        e.post(std::make_unique<SymmetricAllDifferent>(c.scope, c.offset, level));
        break;
      case T::kGcc: {
        std::vector<ValueBounds> b;
        for (const auto& t : c.bounds) b.push_back({t[0], t[1], t[2]});
        e.post(std::make_unique<Gcc>(c.scope, b, level));
        break;
      }
      case T::kKnapsack:
        e.post(std::make_unique<Knapsack>(c.scope, c.coeffs, c.lower, c.upper, level, o.knapsack_mode,
                                          o.exact_moments));
        break;
      case T::kRegular: {
        Automaton a(c.states, c.initial);
        for (int q : c.accepting) a.set_accepting(q);
        for (const auto& t : c.transitions) a.add_transition(t[0], t[1], t[2]);
        e.post(std::make_unique<Regular>(c.scope, std::move(a), level));
        break;
      }
    }
  }
}

}  // namespace

Automaton nonogram_automaton(const std::vector<int>& clue) {
  int blocks = 0;
  for (int b : clue) {
    if (b <= 0) throw Error(ErrorKind::kInvalidArgument, "nonogram block sizes must be positive");
    blocks += b;
  }
  const int k = static_cast<int>(clue.size());
  // One state per filled cell, one gap state between blocks, the initial
  // state and a trailing-blank state.
  const int num_states = 1 + blocks + std::max(0, k - 1) + (k > 0 ? 1 : 0);
  Automaton a(num_states, 0);
  a.add_transition(0, 0, 0);
  if (k == 0) {
    a.set_accepting(0);
    return a;
  }
  int waiting = 0;  // state looping on blanks before the next block
  int next = 1;
  int last = 0;
  for (int i = 0; i < k; ++i) {
    int prev = waiting;
    for (int j = 0; j < clue[i]; ++j) {
      a.add_transition(prev, 1, next);
      prev = next++;
    }
    last = prev;
    if (i + 1 < k) {
      waiting = next++;
      a.add_transition(last, 0, waiting);
      a.add_transition(waiting, 0, waiting);
    }
  }
  const int tail = next;
  a.add_transition(last, 0, tail);
  a.add_transition(tail, 0, tail);
  a.set_accepting(last);
  a.set_accepting(tail);
  return a;
}

Automaton rostering_automaton(int n) {
  if (n < 2) throw Error(ErrorKind::kInvalidArgument, "rostering needs n >= 2");
  // 0: start; t in 1..n-1: last task t; n + b: on break after task b
  // (b = 0 when no task came before).
  Automaton a(2 * n, 0);
  for (int q = 0; q < 2 * n; ++q) a.set_accepting(q);
  for (int t = 1; t < n; ++t) a.add_transition(0, t, t);
  a.add_transition(0, 0, n);
  for (int t = 1; t < n; ++t) {
    for (int u = std::max(1, t - 1); u <= std::min(n - 1, t + 1); ++u) a.add_transition(t, u, u);
    a.add_transition(t, 0, n + t);
  }
  for (int b = 0; b < n; ++b) {
    for (int u = 1; u < n; ++u) {
      if (b >= 2 && u == b - 1) continue;
      a.add_transition(n + b, u, u);
    }
    a.add_transition(n + b, 0, n + b);
  }
  return a;
}

Automaton ttppv_automaton(const TtppvData& d, int team) {
  // 0: start; 1..3: home run length; 4..6: away run length.
  Automaton a(7, 0);
  for (int q = 0; q < 7; ++q) a.set_accepting(q);
  for (int o = 0; o < d.n; ++o) {
    if (o == team) continue;
    const bool home = d.host[team][o] == 1;
    const int first = home ? 1 : 4;
    a.add_transition(0, o, first);
    for (int run = 1; run <= 3; ++run) {
      const int same = (home ? 0 : 3) + run;
      const int other = (home ? 3 : 0) + run;
      if (run < 3) a.add_transition(same, o, same + 1);
      a.add_transition(other, o, first);
    }
  }
  return a;
}

void build_model(const Instance& inst, Engine& engine, const ModelOptions& options) {
  if (engine.num_vars() != 0) throw Error(ErrorKind::kInvalidArgument, "build_model needs an empty engine");
  switch (inst.kind) {
    case ProblemKind::kQwh:
      build_grid_latin(std::get<GridData>(inst.data), engine, options);
      break;
    case ProblemKind::kMagic:
      build_magic(std::get<GridData>(inst.data), engine, options);
      break;
    case ProblemKind::kNonogram:
      build_nonogram(std::get<NonogramData>(inst.data), engine, options);
      break;
    case ProblemKind::kMultiknap:
      build_multiknap(std::get<MultiknapData>(inst.data), engine, options);
      break;
    case ProblemKind::kMarketsplit:
      build_marketsplit(std::get<MarketsplitData>(inst.data), engine, options);
      break;
    case ProblemKind::kRostering:
      build_rostering(std::get<RosteringData>(inst.data), engine, options);
      break;
    case ProblemKind::kKpRostering:
      build_kprostering(std::get<KpRosteringData>(inst.data), engine, options);
      break;
    case ProblemKind::kTtppv:
      build_ttppv(std::get<TtppvData>(inst.data), engine, options);
      break;
    case ProblemKind::kCsp:
      build_csp(std::get<CspData>(inst.data), engine, options);
      break;
  }
}

bool check_solution(const Instance& inst, const std::vector<Value>& x) {
  auto row = [&](int r, int w) { return std::vector<Value>(x.begin() + r * w, x.begin() + (r + 1) * w); };
  auto col = [&](int c, int h, int w) {
    std::vector<Value> out;
    for (int r = 0; r < h; ++r) out.push_back(x[r * w + c]);
    return out;
  };
  auto dot = [](const std::vector<std::int64_t>& c, const std::vector<Value>& v) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * v[i];
    return s;
  };

  switch (inst.kind) {
    case ProblemKind::kQwh: {
      const auto& d = std::get<GridData>(inst.data);
      if (x.size() != d.cells.size()) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (d.cells[i] > 0 && x[i] != d.cells[i]) return false;
      }
      for (int i = 0; i < d.n; ++i) {
        if (!is_permutation_of(row(i, d.n), 1) || !is_permutation_of(col(i, d.n, d.n), 1)) return false;
      }
      return true;
    }
    case ProblemKind::kMagic: {
      const auto& d = std::get<GridData>(inst.data);
      const int n = d.n;
      if (x.size() != d.cells.size() || !is_permutation_of(x, 1)) return false;
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (d.cells[i] > 0 && x[i] != d.cells[i]) return false;
      }
      const long long sum = static_cast<long long>(n) * (static_cast<long long>(n) * n + 1) / 2;
      long long dg = 0, ad = 0;
      for (int i = 0; i < n; ++i) {
        const auto r = row(i, n), c = col(i, n, n);
        if (std::accumulate(r.begin(), r.end(), 0LL) != sum) return false;
        if (std::accumulate(c.begin(), c.end(), 0LL) != sum) return false;
        dg += x[i * n + i];
        ad += x[i * n + n - 1 - i];
      }
      return dg == sum && ad == sum;
    }
    case ProblemKind::kNonogram: {
      const auto& d = std::get<NonogramData>(inst.data);
      if (static_cast<int>(x.size()) != d.rows * d.cols) return false;
      for (Value v : x) {
        if (v != 0 && v != 1) return false;
      }
      for (int r = 0; r < d.rows; ++r) {
        if (runs_of(row(r, d.cols)) != d.row_clues[r]) return false;
      }
      for (int c = 0; c < d.cols; ++c) {
        if (runs_of(col(c, d.rows, d.cols)) != d.col_clues[c]) return false;
      }
      return true;
    }
    case ProblemKind::kMultiknap: {
      const auto& d = std::get<MultiknapData>(inst.data);
      if (static_cast<int>(x.size()) != d.n) return false;
      for (Value v : x) {
        if (v != 0 && v != 1) return false;
      }
      if (dot(d.objective, x) != d.target) return false;
      for (std::size_t k = 0; k < d.weights.size(); ++k) {
        if (dot(d.weights[k], x) > d.capacity[k]) return false;
      }
      return true;
    }
    case ProblemKind::kMarketsplit: {
      const auto& d = std::get<MarketsplitData>(inst.data);
      if (static_cast<int>(x.size()) != d.n) return false;
      for (Value v : x) {
        if (v != 0 && v != 1) return false;
      }
      for (std::size_t k = 0; k < d.coeffs.size(); ++k) {
        if (dot(d.coeffs[k], x) != d.rhs[k]) return false;
      }
      return true;
    }
    case ProblemKind::kRostering: {
      const auto& d = std::get<RosteringData>(inst.data);
      const int n = d.n;
      if (static_cast<int>(x.size()) != n * n) return false;
      for (int i = 0; i < n * n; ++i) {
        if (d.preset[i] >= 0 && x[i] != d.preset[i]) return false;
      }
      for (const auto& r : d.removed) {
        if (d.preset[r.employee * n + r.period] < 0 && x[r.employee * n + r.period] == r.value) return false;
      }
      for (int p = 0; p < n; ++p) {
        if (!is_permutation_of(col(p, n, n), 0)) return false;
      }
      for (int emp = 0; emp < n; ++emp) {
        const auto s = row(emp, n);
        for (int p = 0; p + 1 < n; ++p) {
          if (s[p] > 0 && s[p + 1] > 0 && std::abs(s[p] - s[p + 1]) > 1) return false;
        }
        // A break run keeps the task that preceded it.
        for (int p = 0; p < n; ++p) {
          if (s[p] <= 0) continue;
          int q = p + 1;
          while (q < n && s[q] == 0) ++q;
          if (q > p + 1 && q < n && s[q] == s[p] - 1) return false;
        }
      }
      return true;
    }
    case ProblemKind::kKpRostering: {
      const auto& d = std::get<KpRosteringData>(inst.data);
      if (static_cast<int>(x.size()) != d.employees * d.days) return false;
      for (Value v : x) {
        if (v < 1 || v > d.tasks) return false;
      }
      for (const auto& f : d.forbidden) {
        if (x[f.employee * d.days + f.day] == f.task) return false;
      }
      for (int day = 0; day < d.days; ++day) {
        auto c = col(day, d.employees, d.days);
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) return false;
      }
      for (int emp = 0; emp < d.employees; ++emp) {
        if (dot(d.cost[emp], row(emp, d.days)) != d.target[emp]) return false;
      }
      return true;
    }
    case ProblemKind::kTtppv: {
      const auto& d = std::get<TtppvData>(inst.data);
      const int n = d.n, rounds = n - 1;
      if (static_cast<int>(x.size()) != n * rounds) return false;
      for (int t = 0; t < n; ++t) {
        std::vector<int> met(n, 0);
        int run = 0;
        int last = -1;
        for (int r = 0; r < rounds; ++r) {
          const Value o = x[t * rounds + r];
          if (o < 0 || o >= n || o == t) return false;
          if (x[o * rounds + r] != t) return false;
          if (met[o]++) return false;
          const int venue = d.host[t][o];
          run = venue == last ? run + 1 : 1;
          last = venue;
          if (run > 3) return false;
        }
      }
      return true;
    }
    case ProblemKind::kCsp: {
      Engine e;
      build_model(inst, e);
      if (static_cast<int>(x.size()) != e.num_vars()) return false;
      for (VarId v = 0; v < e.num_vars(); ++v) {
        if (!e.domains().contains(v, x[v])) return false;
      }
      for (int c = 0; c < e.num_constraints(); ++c) {
        std::vector<Value> t;
        for (VarId v : e.constraint(c).scope()) t.push_back(x[v]);
        if (!e.constraint(c).is_satisfied(t)) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace cbs
