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

#ifndef CBS_SEARCH_HPP
#define CBS_SEARCH_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "cbs/engine.hpp"
#include "cbs/heuristics.hpp"

namespace cbs {

enum class Traversal { kDfs, kRestart, kLds };
enum class SearchStatus { kSat, kUnsat, kTimeout };

std::string_view to_string(Traversal t);
Traversal traversal_from_string(std::string_view name);
std::string_view to_string(SearchStatus s);

struct SearchOptions {
  Traversal traversal = Traversal::kDfs;
  // Backtrack cutoff of the first restart run; doubles every run.
  double restart_scale = 100.0;
  // Discrepancies added per LDS wave.
  int lds_skip = 1;
  double timeout_s = 1200.0;
  // Stops with kTimeout after this many backtracks; 0 means no limit.
  std::uint64_t max_backtracks = 0;
  std::uint64_t seed = 0;
};

struct SearchStats {
  SearchStatus status = SearchStatus::kTimeout;
  std::uint64_t backtracks = 0;
  std::uint64_t nodes = 0;
  double time_ms = 0.0;
  int restarts = 0;
  int waves = 0;
  // Right branches on the path to the solution.
  int discrepancies = 0;
  std::uint64_t seed = 0;
  std::vector<Value> solution;
  std::optional<Decision> first_decision;
};

// Runs the search on a model posted at level 0 and leaves the engine back
// at level 0. The heuristic keeps its learned state between calls.
SearchStats solve(Engine& engine, Heuristic& heuristic, const SearchOptions& options);

}  // namespace cbs

#endif  // CBS_SEARCH_HPP
