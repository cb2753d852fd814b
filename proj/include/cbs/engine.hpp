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

#ifndef CBS_ENGINE_HPP
#define CBS_ENGINE_HPP

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <vector>

#include "cbs/constraint.hpp"
#include "cbs/density.hpp"
#include "cbs/domain_store.hpp"

namespace cbs {

struct Decision {
  enum class Kind { kAssign, kRefute };
  Kind kind = Kind::kAssign;
  VarId var = -1;
  Value value = 0;

  static Decision assign(VarId x, Value v) { return {Kind::kAssign, x, v}; }
  static Decision refute(VarId x, Value v) { return {Kind::kRefute, x, v}; }
};

// The CSP kernel: variables, posted constraints, a FIFO propagation queue
// and per-constraint density caches that are trailed together with the
// domains, so backtracking restores both.
class Engine {
 public:
  Engine() = default;
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  VarId add_var(std::vector<Value> values);
  // Returns the constraint id. Constraints may only be posted at level 0.
  int post(std::unique_ptr<Constraint> c);

  const DomainStore& domains() const { return store_; }
  int num_vars() const { return store_.num_vars(); }
  int num_constraints() const { return static_cast<int>(constraints_.size()); }
  const Constraint& constraint(int c) const { return *constraints_[c]; }
  // Constraints whose scope contains x.
  const std::vector<int>& constraints_of(VarId x) const { return watchers_[x]; }

  PropStatus propagate();
  // Opens a new level, applies the decision and propagates. Rejects values
  // not in the domain and decisions on bound variables.
  PropStatus push_decision(const Decision& d);
  // Removes a value permanently; only valid at level 0.
  PropStatus remove_at_root(VarId x, Value v);
  void backtrack_to(int level);
  int level() const { return store_.level(); }

  bool all_bound() const;
  bool has_wipeout() const { return wiped_out_; }
  // Constraint whose filtering emptied a domain in the last failed
  // propagation, or -1 when the decision itself emptied it.
  int last_culprit() const { return last_culprit_; }

  // Refreshes the cached DensityTable of every dirty counting constraint and
  // returns the tables of all counting constraints (constraint id order).
  std::vector<std::shared_ptr<const DensityTable>> collect_densities();

  bool dirty(int c) const { return counting_[c].dirty; }
  std::shared_ptr<const DensityTable> cached_table(int c) const { return counting_[c].table; }
  std::uint64_t recount_invocations() const { return recounts_; }

  // Called with the culprit id each time a constraint wipes out a domain.
  std::function<void(int)> on_wipeout;

 private:
  struct CountingSlot {
    std::shared_ptr<const DensityTable> table;
    bool dirty = true;
  };
  struct CacheTrailEntry {
    int constraint;
    std::shared_ptr<const DensityTable> table;
    bool dirty;
  };

  void drain_changes(int source);
  void set_dirty(int c);
  void enqueue(int c);
  PropStatus fail(int culprit);

  DomainStore store_;
  std::vector<std::unique_ptr<Constraint>> constraints_;
  std::vector<std::vector<int>> watchers_;
  std::vector<CountingSlot> counting_;
  std::vector<CacheTrailEntry> cache_trail_;
  std::vector<std::size_t> cache_marks_;
  std::deque<int> queue_;
  std::vector<char> queued_;
  std::uint64_t recounts_ = 0;
  bool wiped_out_ = false;
  int last_culprit_ = -1;
};

}  // namespace cbs

#endif  // CBS_ENGINE_HPP
