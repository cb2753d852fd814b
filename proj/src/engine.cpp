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

#include "cbs/engine.hpp"

#include <algorithm>
#include <string>

namespace cbs {

VarId Engine::add_var(std::vector<Value> values) {
  if (level() != 0) throw Error(ErrorKind::kInvalidArgument, "variables can only be added at level 0");
  const VarId x = store_.add_variable(std::move(values));
  watchers_.emplace_back();
  return x;
}

int Engine::post(std::unique_ptr<Constraint> c) {
  if (level() != 0) throw Error(ErrorKind::kInvalidArgument, "constraints can only be posted at level 0");
  if (!c) throw Error(ErrorKind::kInvalidArgument, "null constraint");
  const int id = static_cast<int>(constraints_.size());
  std::vector<VarId> scope = c->scope();
  for (VarId x : scope) {
    if (x < 0 || x >= num_vars()) {
      throw Error(ErrorKind::kInvalidArgument, "constraint scope refers to unknown variable " + std::to_string(x));
    }
  }
  std::sort(scope.begin(), scope.end());
  scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
  for (VarId x : scope) watchers_[x].push_back(id);
  constraints_.push_back(std::move(c));
  counting_.emplace_back();
  queued_.push_back(0);
  enqueue(id);
  return id;
}

void Engine::enqueue(int c) {
  if (!queued_[c]) {
    queued_[c] = 1;
    queue_.push_back(c);
  }
}

void Engine::set_dirty(int c) {
  CountingSlot& slot = counting_[c];
  if (slot.dirty) return;
  cache_trail_.push_back({c, slot.table, false});
  slot.dirty = true;
}

void Engine::drain_changes(int source) {
  for (VarId x : store_.changed()) {
    for (int c : watchers_[x]) {
      set_dirty(c);
      if (c == source && constraints_[c]->idempotent()) continue;
      enqueue(c);
    }
  }
  store_.clear_changed();
}

PropStatus Engine::fail(int culprit) {
  for (int c : queue_) queued_[c] = 0;
  queue_.clear();
  store_.clear_changed();
  wiped_out_ = true;
  last_culprit_ = culprit;
  if (culprit >= 0 && on_wipeout) on_wipeout(culprit);
  return PropStatus::kWipeout;
}

PropStatus Engine::propagate() {
  if (wiped_out_) return PropStatus::kWipeout;
  drain_changes(-1);
  while (!queue_.empty()) {
    const int c = queue_.front();
    queue_.pop_front();
    queued_[c] = 0;
    const bool ok = constraints_[c]->propagate(store_);
    if (!ok) return fail(c);
    for (VarId x : store_.changed()) {
      if (store_.empty(x)) return fail(c);
    }
    drain_changes(c);
  }
  return PropStatus::kConsistent;
}

PropStatus Engine::push_decision(const Decision& d) {
  if (d.var < 0 || d.var >= num_vars()) {
    throw Error(ErrorKind::kInvalidArgument, "decision on unknown variable " + std::to_string(d.var));
  }
  if (wiped_out_) throw Error(ErrorKind::kInvalidArgument, "decision pushed on a failed state");
  if (store_.is_bound(d.var)) {
    throw Error(ErrorKind::kInvalidArgument, "decision on bound variable " + std::to_string(d.var));
  }
  if (!store_.contains(d.var, d.value)) {
    throw Error(ErrorKind::kInvalidArgument, "value " + std::to_string(d.value) + " not in domain of variable " +
                                                 std::to_string(d.var));
  }
  store_.push_level();
  cache_marks_.push_back(cache_trail_.size());
  const bool ok = d.kind == Decision::Kind::kAssign ? store_.assign(d.var, d.value)
                                                     : store_.remove(d.var, d.value);
  if (!ok) return fail(-1);
  return propagate();
}

PropStatus Engine::remove_at_root(VarId x, Value v) {
  if (level() != 0) throw Error(ErrorKind::kInvalidArgument, "remove_at_root called below the root");
  if (wiped_out_) return PropStatus::kWipeout;
  if (!store_.remove(x, v)) return fail(-1);
  return propagate();
}

void Engine::backtrack_to(int target) {
  store_.backtrack_to(target);
  const std::size_t mark = target < static_cast<int>(cache_marks_.size()) ? cache_marks_[target] : cache_trail_.size();
  while (cache_trail_.size() > mark) {
    CacheTrailEntry& e = cache_trail_.back();
    counting_[e.constraint].table = std::move(e.table);
    counting_[e.constraint].dirty = e.dirty;
    cache_trail_.pop_back();
  }
  cache_marks_.resize(target);
  for (int c : queue_) queued_[c] = 0;
  queue_.clear();
  wiped_out_ = false;
}

bool Engine::all_bound() const {
  for (VarId x = 0; x < num_vars(); ++x) {
    if (!store_.is_bound(x)) return false;
  }
  return true;
}

std::vector<std::shared_ptr<const DensityTable>> Engine::collect_densities() {
  std::vector<std::shared_ptr<const DensityTable>> out;
  for (int c = 0; c < num_constraints(); ++c) {
    if (!constraints_[c]->supports_counting()) continue;
    CountingSlot& slot = counting_[c];
    if (slot.dirty || !slot.table) {
      auto table = std::make_shared<DensityTable>(constraints_[c]->count(store_));
      table->constraint = c;
      cache_trail_.push_back({c, slot.table, slot.dirty});
      slot.table = std::move(table);
      slot.dirty = false;
      ++recounts_;
    }
    out.push_back(slot.table);
  }
  return out;
}

}  // namespace cbs
