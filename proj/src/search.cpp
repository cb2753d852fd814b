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

#include "cbs/search.hpp"

#include <chrono>
#include <cmath>

namespace cbs {

namespace {

using Clock = std::chrono::steady_clock;

enum class Outcome { kSat, kExhausted, kAbort };

class Searcher {
 public:
  Searcher(Engine& engine, Heuristic& heuristic, const SearchOptions& options, SearchStats& stats)
      : engine_(engine), h_(heuristic), opt_(options), stats_(stats), rng_(options.seed),
        start_(Clock::now()) {
    deadline_ = start_ + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(options.timeout_s));
  }

  void run() {
    if (engine_.propagate() == PropStatus::kWipeout) {
      stats_.status = SearchStatus::kUnsat;
      return;
    }
    if (h_.initialize(engine_, rng_) == PropStatus::kWipeout) {
      stats_.status = SearchStatus::kUnsat;
      return;
    }
    switch (opt_.traversal) {
      case Traversal::kDfs:
        finish(explore(0), false);
        break;
      case Traversal::kRestart:
        run_restarts();
        break;
      case Traversal::kLds:
        run_lds();
        break;
    }
  }

  double elapsed_ms() const {
    return std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }

 private:
  void finish(Outcome o, bool timeout_only) {
    if (o == Outcome::kSat) {
      stats_.status = SearchStatus::kSat;
    } else if (o == Outcome::kExhausted && !timeout_only) {
      stats_.status = SearchStatus::kUnsat;
    } else {
      stats_.status = SearchStatus::kTimeout;
    }
  }

  void run_restarts() {
    h_.set_randomize_top2(true);
    double cutoff = opt_.restart_scale > 0 ? opt_.restart_scale : std::numeric_limits<double>::infinity();
    for (int run = 0;; ++run) {
      run_start_ = stats_.backtracks;
      run_cutoff_ = cutoff;
      cutoff_hit_ = false;
      const Outcome o = explore(0);
      engine_.backtrack_to(0);
      if (o == Outcome::kSat || (o == Outcome::kExhausted && !cutoff_hit_)) {
        finish(o, false);
        return;
      }
      if (!cutoff_hit_) {
        finish(Outcome::kAbort, true);
        return;
      }
      ++stats_.restarts;
      cutoff *= 2.0;
    }
  }

  void run_lds() {
    const long long skip = std::max(1, opt_.lds_skip);
    for (long long wave = 0;; ++wave) {
      ++stats_.waves;
      lds_hi_ = (wave + 1) * skip;
      limited_ = false;
      const Outcome o = explore(0);
      engine_.backtrack_to(0);
      if (o == Outcome::kSat || o == Outcome::kAbort || !limited_) {
        finish(o, false);
        return;
      }
    }
  }

  bool lds() const { return opt_.traversal == Traversal::kLds; }

  bool should_abort() {
    if (opt_.max_backtracks > 0 && stats_.backtracks >= opt_.max_backtracks) return true;
    if (opt_.traversal == Traversal::kRestart &&
        static_cast<double>(stats_.backtracks - run_start_) >= run_cutoff_) {
      cutoff_hit_ = true;
      return true;
    }
    return Clock::now() >= deadline_;
  }

  // Applies d at a new level; on failure the caller backtracks.
  bool apply(const Decision& d) {
    if (!stats_.first_decision) stats_.first_decision = d;
    const double before = engine_.domains().log_search_space();
    const bool failed = engine_.push_decision(d) == PropStatus::kWipeout;
    h_.observe(d, before, failed ? kLogZero : engine_.domains().log_search_space(), failed);
    if (failed) ++stats_.backtracks;
    return !failed;
  }

  // Explores the subtree below the current (consistent) state. The caller
  // restores its own level afterwards.
  Outcome explore(int disc) {
    for (;;) {
      if (engine_.all_bound()) {
        stats_.discrepancies = disc;
        const DomainStore& d = engine_.domains();
        stats_.solution.resize(d.num_vars());
        for (VarId x = 0; x < d.num_vars(); ++x) stats_.solution[x] = d.min(x);
        return Outcome::kSat;
      }
      if (should_abort()) return Outcome::kAbort;
      ++stats_.nodes;
      const std::optional<Candidate> c = h_.select(engine_, rng_);
      const int level = engine_.level();
      if (apply(Decision::assign(c->var, c->value))) {
        const Outcome o = explore(disc);
        if (o != Outcome::kExhausted) return o;
      }
      engine_.backtrack_to(level);
      if (lds() && disc + 1 >= lds_hi_) {
        limited_ = true;
        return Outcome::kExhausted;
      }
      if (should_abort()) return Outcome::kAbort;
      if (!apply(Decision::refute(c->var, c->value))) {
        engine_.backtrack_to(level);
        return Outcome::kExhausted;
      }
      ++disc;
    }
  }

  Engine& engine_;
  Heuristic& h_;
  const SearchOptions& opt_;
  SearchStats& stats_;
  Rng rng_;
  Clock::time_point start_;
  Clock::time_point deadline_;
  std::uint64_t run_start_ = 0;
  double run_cutoff_ = std::numeric_limits<double>::infinity();
  bool cutoff_hit_ = false;
  long long lds_hi_ = 0;
  bool limited_ = false;
};

}  // namespace

std::string_view to_string(Traversal t) {
  switch (t) {
    case Traversal::kDfs:
      return "dfs";
    case Traversal::kRestart:
      return "restart";
    case Traversal::kLds:
      return "lds";
  }
  return "dfs";
}

Traversal traversal_from_string(std::string_view name) {
  if (name == "dfs") return Traversal::kDfs;
  if (name == "restart") return Traversal::kRestart;
  if (name == "lds") return Traversal::kLds;
  throw Error(ErrorKind::kUnknownName, "unknown traversal '" + std::string(name) + "' (valid: dfs, restart, lds)");
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::kSat:
      return "sat";
    case SearchStatus::kUnsat:
      return "unsat";
    case SearchStatus::kTimeout:
      return "timeout";
  }
  return "timeout";
}

SearchStats solve(Engine& engine, Heuristic& heuristic, const SearchOptions& options) {
  if (engine.level() != 0) throw Error(ErrorKind::kInvalidArgument, "search must start at level 0");
  SearchStats stats;
  stats.seed = options.seed;
  auto previous = std::move(engine.on_wipeout);
  engine.on_wipeout = [&heuristic](int c) { heuristic.record_wipeout(c); };
  Searcher searcher(engine, heuristic, options, stats);
  try {
    searcher.run();
  } catch (...) {
    engine.backtrack_to(0);
    engine.on_wipeout = std::move(previous);
    throw;
  }
  engine.backtrack_to(0);
  engine.on_wipeout = std::move(previous);
  stats.time_ms = searcher.elapsed_ms();
  return stats;
}

}  // namespace cbs
