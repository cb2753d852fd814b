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
#include <random>

#include "cbs/bench.hpp"
#include "cbs/heuristics.hpp"

namespace cbs {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::kInvalidArgument, msg);
}

int pick(Rng& rng, int n) { return static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(n))); }

bool coin(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

template <typename T>
void shuffle(std::vector<T>& xs, Rng& rng) {
  for (std::size_t i = xs.size(); i > 1; --i) std::swap(xs[i - 1], xs[uniform_below(rng, i)]);
}

// Jacobson-Matthews walk on the incidence cube, started from the cyclic
// square and stopped at a proper square after enough moves.
std::vector<int> random_latin_square(int n, Rng& rng) {
  std::vector<signed char> cube(static_cast<std::size_t>(n) * n * n, 0);
  auto at = [&](int r, int c, int s) -> signed char& { return cube[(static_cast<std::size_t>(r) * n + c) * n + s]; };
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) at(r, c, (r + c) % n) = 1;
  }
  if (n >= 2) {
    const long long moves = static_cast<long long>(n) * n * n;
    bool proper = true;
    int ir = 0, ic = 0, is = 0;
    for (long long step = 0; step < moves || !proper; ++step) {
      int r, c, s, r2, c2, s2;
      if (proper) {
        do {
          r = pick(rng, n);
          c = pick(rng, n);
          s = pick(rng, n);
        } while (at(r, c, s) != 0);
        r2 = c2 = s2 = -1;
        for (int k = 0; k < n; ++k) {
          if (at(k, c, s) == 1) r2 = k;
          if (at(r, k, s) == 1) c2 = k;
          if (at(r, c, k) == 1) s2 = k;
        }
      } else {
        r = ir;
        c = ic;
        s = is;
        auto choose = [&](auto&& one) {
          int found[2], count = 0;
          for (int k = 0; k < n && count < 2; ++k) {
            if (one(k)) found[count++] = k;
          }
          return found[pick(rng, 2)];
        };
        r2 = choose([&](int k) { return at(k, c, s) == 1; });
        c2 = choose([&](int k) { return at(r, k, s) == 1; });
        s2 = choose([&](int k) { return at(r, c, k) == 1; });
      }
      ++at(r, c, s);
      ++at(r, c2, s2);
      ++at(r2, c, s2);
      ++at(r2, c2, s);
      --at(r, c, s2);
      --at(r, c2, s);
      --at(r2, c, s);
      --at(r2, c2, s2);
      proper = at(r2, c2, s2) != -1;
      if (!proper) {
        ir = r2;
        ic = c2;
        is = s2;
      }
    }
  }
  std::vector<int> square(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      for (int s = 0; s < n; ++s) {
        if (at(r, c, s) == 1) square[r * n + c] = s + 1;
      }
    }
  }
  return square;
}

std::vector<int> siamese(int n) {
  std::vector<int> m(static_cast<std::size_t>(n) * n, 0);
  int r = 0, c = n / 2;
  for (int v = 1; v <= n * n; ++v) {
    m[r * n + c] = v;
    const int nr = (r - 1 + n) % n, nc = (c + 1) % n;
    if (m[nr * n + nc] != 0) {
      r = (r + 1) % n;
    } else {
      r = nr;
      c = nc;
    }
  }
  return m;
}

std::vector<int> base_magic_square(int n) {
  if (n % 2 == 1) return siamese(n);
  std::vector<int> m(static_cast<std::size_t>(n) * n);
  if (n % 4 == 0) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int v = i * n + j + 1;
        const bool flip = (i % 4 == j % 4) || ((i % 4) + (j % 4) == 3);
        m[i * n + j] = flip ? n * n + 1 - v : v;
      }
    }
    return m;
  }
  // Singly even order: four shifted odd squares with column exchanges.
  const int h = n / 2, u = h * h, k = (h - 1) / 2;
  const std::vector<int> a = siamese(h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < h; ++j) {
      const int v = a[i * h + j];
      m[i * n + j] = v;
      m[(i + h) * n + (j + h)] = v + u;
      m[i * n + (j + h)] = v + 2 * u;
      m[(i + h) * n + j] = v + 3 * u;
    }
  }
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < k; ++j) {
      const int col = i == k ? j + 1 : j;
      std::swap(m[i * n + col], m[(i + h) * n + col]);
    }
    for (int j = n - k + 1; j < n; ++j) std::swap(m[i * n + j], m[(i + h) * n + j]);
  }
  return m;
}

std::vector<int> random_magic_square(int n, Rng& rng) {
  std::vector<int> m = base_magic_square(n);
  // Row and column permutation that commutes with the central reflection.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> pairs(n / 2);
  std::iota(pairs.begin(), pairs.end(), 0);
  shuffle(pairs, rng);
  for (int i = 0; i < n / 2; ++i) {
    const bool flip = coin(rng, 0.5);
    perm[i] = flip ? n - 1 - pairs[i] : pairs[i];
    perm[n - 1 - i] = n - 1 - perm[i];
  }
  std::vector<int> out(m.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i * n + j] = m[perm[i] * n + perm[j]];
  }
  if (coin(rng, 0.5)) {
    for (int& v : out) v = n * n + 1 - v;
  }
  if (coin(rng, 0.5)) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) std::swap(out[i * n + j], out[j * n + i]);
    }
  }
  if (coin(rng, 0.5)) {
    for (int i = 0; i < n; ++i) std::reverse(out.begin() + i * n, out.begin() + (i + 1) * n);
  }
  return out;
}

std::vector<int> runs(const std::vector<int>& line) {
  std::vector<int> out;
  int run = 0;
  for (int v : line) {
    if (v) {
      ++run;
    } else if (run) {
      out.push_back(run);
      run = 0;
    }
  }
  if (run) out.push_back(run);
  return out;
}

GridData holes_from(std::vector<int> cells, int n, double keep, Rng& rng) {
  std::vector<int> order(cells.size());
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  const auto kept = static_cast<std::size_t>(keep * static_cast<double>(cells.size()) + 1e-9);
  for (std::size_t i = kept; i < order.size(); ++i) cells[order[i]] = 0;
  return {n, std::move(cells)};
}

Instance gen_qwh(const GenerateParams& p, Rng& rng) {
  const int n = p.n > 0 ? p.n : 12;
  require(p.holes >= 0.0 && p.holes <= 1.0, "holes must be in [0, 1]");
  std::vector<int> sq = random_latin_square(n, rng);
  std::vector<int> order(sq.size());
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  const auto holes = static_cast<std::size_t>(p.holes * static_cast<double>(n * n) + 1e-9);
  for (std::size_t i = 0; i < holes; ++i) sq[order[i]] = 0;
  return {ProblemKind::kQwh, "", true, GridData{n, std::move(sq)}};
}

Instance gen_magic(const GenerateParams& p, Rng& rng) {
  const int n = p.n > 0 ? p.n : 9;
  require(n != 2, "no magic square of order 2");
  require(p.prefill >= 0.0 && p.prefill <= 1.0, "prefill must be in [0, 1]");
  return {ProblemKind::kMagic, "", true, holes_from(random_magic_square(n, rng), n, p.prefill, rng)};
}

Instance gen_nonogram(const GenerateParams& p, Rng& rng) {
  NonogramData d;
  d.cols = p.n > 0 ? p.n : 16;
  d.rows = p.m > 0 ? p.m : d.cols;
  require(p.density >= 0.0 && p.density <= 1.0, "density must be in [0, 1]");
  std::vector<int> pic(static_cast<std::size_t>(d.rows) * d.cols);
  for (int& c : pic) c = coin(rng, p.density) ? 1 : 0;
  for (int r = 0; r < d.rows; ++r) {
    d.row_clues.push_back(runs(std::vector<int>(pic.begin() + r * d.cols, pic.begin() + (r + 1) * d.cols)));
  }
  for (int c = 0; c < d.cols; ++c) {
    std::vector<int> line;
    for (int r = 0; r < d.rows; ++r) line.push_back(pic[r * d.cols + c]);
    d.col_clues.push_back(runs(line));
  }
  return {ProblemKind::kNonogram, "", true, std::move(d)};
}

Instance gen_multiknap(const GenerateParams& p, Rng& rng) {
  MultiknapData d;
  d.n = p.n > 0 ? p.n : 20;
  const int m = p.m > 0 ? p.m : 5;
  for (int j = 0; j < d.n; ++j) d.objective.push_back(1 + pick(rng, 100));
  d.weights.assign(m, std::vector<std::int64_t>(d.n));
  for (auto& row : d.weights) {
    for (auto& w : row) w = 1 + pick(rng, 100);
  }
  for (const auto& row : d.weights) d.capacity.push_back(std::accumulate(row.begin(), row.end(), std::int64_t{0}) / 2);
  // Random maximal feasible packing; its value becomes the target.
  std::vector<int> order(d.n);
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<std::int64_t> load(m, 0);
  for (int j : order) {
    bool fits = true;
    for (int k = 0; k < m; ++k) fits = fits && load[k] + d.weights[k][j] <= d.capacity[k];
    if (!fits) continue;
    for (int k = 0; k < m; ++k) load[k] += d.weights[k][j];
    d.target += d.objective[j];
  }
  return {ProblemKind::kMultiknap, "", true, std::move(d)};
}

Instance gen_marketsplit(const GenerateParams& p, Rng& rng) {
  MarketsplitData d;
  const int m = p.m > 0 ? p.m : 4;
  require(m >= 2 || p.n > 0, "market split needs m >= 2");
  d.n = p.n > 0 ? p.n : 10 * (m - 1);
  for (int k = 0; k < m; ++k) {
    std::vector<std::int64_t> row(d.n);
    for (auto& c : row) c = pick(rng, 100);
    d.rhs.push_back(std::accumulate(row.begin(), row.end(), std::int64_t{0}) / 2);
    d.coeffs.push_back(std::move(row));
  }
  return {ProblemKind::kMarketsplit, "", std::nullopt, std::move(d)};
}

Instance gen_rostering(const GenerateParams& p, Rng& rng) {
  RosteringData d;
  const int n = p.n > 0 ? p.n : 10;
  require(n >= 4, "rostering needs n >= 4");
  require(p.preset >= 0.0 && p.preset <= 1.0 && p.removed >= 0.0 && p.removed <= 1.0,
          "preset and removed must be in [0, 1]");
  d.n = n;
  // Hidden schedule: cyclic rotation, optionally mirrored in task order
  // and in time, with employees shuffled.
  std::vector<int> rows(n);
  std::iota(rows.begin(), rows.end(), 0);
  shuffle(rows, rng);
  const bool mirror = coin(rng, 0.5), reverse = coin(rng, 0.5);
  const int shift = pick(rng, n);
  std::vector<int> sol(static_cast<std::size_t>(n) * n);
  for (int e = 0; e < n; ++e) {
    for (int t = 0; t < n; ++t) {
      const int time = reverse ? n - 1 - t : t;
      int v = (rows[e] + time + shift) % n;
      if (mirror && v > 0) v = n - v;
      sol[e * n + t] = v;
    }
  }
  d.preset.assign(sol.size(), -1);
  std::vector<int> cells(sol.size());
  std::iota(cells.begin(), cells.end(), 0);
  shuffle(cells, rng);
  const auto fixed = static_cast<std::size_t>(p.preset * static_cast<double>(cells.size()) + 1e-9);
  for (std::size_t i = 0; i < fixed; ++i) d.preset[cells[i]] = sol[cells[i]];
  std::vector<RosteringData::Removal> pool;
  for (int cell = 0; cell < n * n; ++cell) {
    if (d.preset[cell] >= 0) continue;
    for (int v = 0; v < n; ++v) {
      if (v != sol[cell]) pool.push_back({cell / n, cell % n, v});
    }
  }
  shuffle(pool, rng);
  const auto removals = std::min(pool.size(), static_cast<std::size_t>(p.removed * n * n * n + 1e-9));
  d.removed.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(removals));
  std::sort(d.removed.begin(), d.removed.end(), [](const auto& a, const auto& b) {
    return std::tie(a.employee, a.period, a.value) < std::tie(b.employee, b.period, b.value);
  });
  return {ProblemKind::kRostering, "", true, std::move(d)};
}

Instance gen_kprostering(const GenerateParams& p, Rng& rng) {
  KpRosteringData d;
  d.employees = p.n > 0 ? p.n : 4;
  d.days = p.m > 0 ? p.m : 25;
  d.tasks = d.employees + 1;
  require(p.forbidden >= 0 && p.forbidden <= d.days, "forbidden shifts must be in [0, days]");
  d.cost.assign(d.employees, std::vector<std::int64_t>(d.days));
  for (auto& row : d.cost) {
    for (auto& c : row) c = 1 + pick(rng, 20);
  }
  std::vector<std::vector<int>> sol(d.employees, std::vector<int>(d.days));
  for (int day = 0; day < d.days; ++day) {
    std::vector<int> tasks(d.tasks);
    std::iota(tasks.begin(), tasks.end(), 1);
    shuffle(tasks, rng);
    for (int e = 0; e < d.employees; ++e) sol[e][day] = tasks[e];
  }
  // Forbidden shifts on distinct days, never the hidden one.
  std::vector<int> days(d.days);
  std::iota(days.begin(), days.end(), 0);
  shuffle(days, rng);
  for (int i = 0; i < p.forbidden; ++i) {
    const int day = days[i], e = pick(rng, d.employees);
    int task;
    do {
      task = 1 + pick(rng, d.tasks);
    } while (task == sol[e][day]);
    d.forbidden.push_back({e, day, task});
  }
  std::sort(d.forbidden.begin(), d.forbidden.end(), [](const auto& a, const auto& b) {
    return std::tie(a.employee, a.day, a.task) < std::tie(b.employee, b.day, b.task);
  });
  for (int e = 0; e < d.employees; ++e) {
    std::int64_t total = 0;
    for (int day = 0; day < d.days; ++day) total += d.cost[e][day] * sol[e][day];
    d.target.push_back(total);
  }
  return {ProblemKind::kKpRostering, "", true, std::move(d)};
}

Instance gen_ttppv(const GenerateParams& p, Rng& rng) {
  const int n = p.n > 0 ? p.n : 8;
  require(n >= 2 && n % 2 == 0, "ttppv needs an even number of teams");
  const int rounds = n - 1;
  for (int attempt = 0; attempt < 100000; ++attempt) {
    // Circle-method schedule under a random relabeling and round order.
    std::vector<int> label(n), order(rounds);
    std::iota(label.begin(), label.end(), 0);
    std::iota(order.begin(), order.end(), 0);
    shuffle(label, rng);
    shuffle(order, rng);
    TtppvData d;
    d.n = n;
    d.host.assign(n, std::vector<int>(n, 0));
    std::vector<int> last(n, -1), run(n, 0), homes(n, 0);
    bool ok = true;
    for (int ri = 0; ri < rounds && ok; ++ri) {
      const int r = order[ri];
      std::vector<std::pair<int, int>> games = {{label[r], label[n - 1]}};
      for (int k = 1; k < n / 2; ++k) {
        games.push_back({label[(r + k) % rounds], label[(r - k + rounds) % rounds]});
      }
      for (auto [a, b] : games) {
        auto allowed = [&](int home, int away) {
          return !(last[home] == 1 && run[home] == 3) && !(last[away] == 0 && run[away] == 3);
        };
        const bool a_ok = allowed(a, b), b_ok = allowed(b, a);
        if (!a_ok && !b_ok) {
          ok = false;
          break;
        }
        int home = a, away = b;
        if (!a_ok || (b_ok && coin(rng, 0.5))) std::swap(home, away);
        d.host[home][away] = 1;
        ++homes[home];
        for (auto [t, v] : {std::pair{home, 1}, std::pair{away, 0}}) {
          run[t] = last[t] == v ? run[t] + 1 : 1;
          last[t] = v;
        }
      }
    }
    if (!ok) continue;
    if (p.balanced) {
      const bool balanced = std::all_of(homes.begin(), homes.end(), [&](int h) { return std::abs(2 * h - rounds) <= 1; });
      if (!balanced) continue;
    }
    return {ProblemKind::kTtppv, "", true, std::move(d)};
  }
  throw Error(ErrorKind::kInvalidArgument, "could not build a ttppv instance with these parameters");
}

Instance gen_csp(const GenerateParams& p, Rng& rng) {
  CspData d;
  const int n = p.n > 0 ? p.n : 5;
  for (int i = 0; i < n; ++i) {
    std::vector<Value> dom;
    for (Value v = 0; v <= 3; ++v) {
      if (coin(rng, 0.7)) dom.push_back(v);
    }
    if (dom.empty()) dom.push_back(pick(rng, 4));
    d.domains.push_back(std::move(dom));
  }
  const Consistency levels[] = {Consistency::kForwardChecking, Consistency::kBounds, Consistency::kDomain};
  auto random_scope = [&](double keep) {
    std::vector<VarId> scope;
    for (int i = 0; i < n; ++i) {
      if (coin(rng, keep)) scope.push_back(i);
    }
    return scope;
  };

  CspData::Con ad;
  ad.type = CspData::Con::Type::kAlldiff;
  ad.scope = random_scope(0.6);
  if (coin(rng, 0.5)) ad.level = levels[pick(rng, 3)];
  if (ad.scope.size() >= 2) d.constraints.push_back(ad);

  CspData::Con ks;
  ks.type = CspData::Con::Type::kKnapsack;
  for (int i = 0; i < n; ++i) {
    ks.scope.push_back(i);
    ks.coeffs.push_back(1 + pick(rng, 3));
  }
  ks.lower = pick(rng, 3 * n);
  ks.upper = ks.lower + pick(rng, 3);
  if (coin(rng, 0.5)) ks.level = levels[1 + pick(rng, 2)];
  d.constraints.push_back(ks);

  if (coin(rng, 0.4)) {
    CspData::Con g;
    g.type = CspData::Con::Type::kGcc;
    g.scope = random_scope(0.7);
    for (int v = 0; v <= 3; ++v) {
      const int lo = pick(rng, 2);
      g.bounds.push_back({v, lo, lo + pick(rng, 3)});
    }
    if (coin(rng, 0.5)) g.level = levels[pick(rng, 3)];
    if (g.scope.size() >= 2) d.constraints.push_back(g);
  }
  if (coin(rng, 0.4)) {
    CspData::Con r;
    r.type = CspData::Con::Type::kRegular;
    r.scope = random_scope(0.7);
    r.states = 2 + pick(rng, 3);
    for (int q = 0; q < r.states; ++q) {
      if (coin(rng, 0.6)) r.accepting.push_back(q);
      for (int v = 0; v <= 3; ++v) {
        if (coin(rng, 0.75)) r.transitions.push_back({q, v, pick(rng, r.states)});
      }
    }
    if (!r.scope.empty()) d.constraints.push_back(r);
  }
  if (n >= 4 && coin(rng, 0.2)) {
    CspData::Con sa;
    sa.type = CspData::Con::Type::kSymAlldiff;
    sa.scope = {0, 1, 2, 3};
    d.constraints.push_back(sa);
  }
  return {ProblemKind::kCsp, "", std::nullopt, std::move(d)};
}

}  // namespace

Instance generate_instance(ProblemKind kind, const GenerateParams& params, std::uint64_t seed) {
  require(params.n >= 0 && params.m >= 0, "sizes must be non-negative");
  Rng rng(seed);
  Instance inst;
  switch (kind) {
    case ProblemKind::kQwh:
      inst = gen_qwh(params, rng);
      break;
    case ProblemKind::kMagic:
      inst = gen_magic(params, rng);
      break;
    case ProblemKind::kNonogram:
      inst = gen_nonogram(params, rng);
      break;
    case ProblemKind::kMultiknap:
      inst = gen_multiknap(params, rng);
      break;
    case ProblemKind::kMarketsplit:
      inst = gen_marketsplit(params, rng);
      break;
    case ProblemKind::kRostering:
      inst = gen_rostering(params, rng);
      break;
    case ProblemKind::kKpRostering:
      inst = gen_kprostering(params, rng);
      break;
    case ProblemKind::kTtppv:
      inst = gen_ttppv(params, rng);
      break;
    case ProblemKind::kCsp:
      inst = gen_csp(params, rng);
      break;
  }
  inst.name = std::string(to_string(kind)) + "-" + std::to_string(seed);
  return inst;
}

}  // namespace cbs
