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

#include "cbs/domain_store.hpp"

#include <algorithm>
#include <cmath>

namespace cbs {

std::string_view to_string(Consistency c) {
  switch (c) {
    case Consistency::kForwardChecking:
      return "fc";
    case Consistency::kBounds:
      return "bounds";
    case Consistency::kDomain:
      return "domain";
  }
  return "domain";
}

Consistency consistency_from_string(std::string_view name) {
  if (name == "fc" || name == "forward-checking") return Consistency::kForwardChecking;
  if (name == "bounds") return Consistency::kBounds;
  if (name == "domain") return Consistency::kDomain;
  throw Error(ErrorKind::kUnknownName,
              "unknown consistency '" + std::string(name) + "' (valid: fc, bounds, domain)");
}

VarId DomainStore::add_variable(std::vector<Value> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  Var var;
  var.size = static_cast<int>(values.size());
  var.lo = 0;
  var.hi = var.size - 1;
  var.word_offset = static_cast<int>(words_.size());
  var.contiguous = values.empty() || values.back() - values.front() + 1 == var.size;
  const int nwords = (var.size + 63) / 64;
  words_.resize(words_.size() + std::max(nwords, 1), 0);
  for (int i = 0; i < var.size; ++i) {
    words_[var.word_offset + (i >> 6)] |= std::uint64_t{1} << (i & 63);
  }
  var.universe = std::move(values);
  vars_.push_back(std::move(var));
  in_changed_.push_back(0);
  return static_cast<VarId>(vars_.size() - 1);
}

int DomainStore::index_of(const Var& var, Value v) const {
  if (var.universe.empty()) return -1;
  if (var.contiguous) {
    const long long idx = static_cast<long long>(v) - var.universe.front();
    return (idx < 0 || idx >= static_cast<long long>(var.universe.size())) ? -1 : static_cast<int>(idx);
  }
  auto it = std::lower_bound(var.universe.begin(), var.universe.end(), v);
  if (it == var.universe.end() || *it != v) return -1;
  return static_cast<int>(it - var.universe.begin());
}

bool DomainStore::contains(VarId x, Value v) const {
  const Var& var = vars_[x];
  if (var.size == 0) return false;
  const int idx = index_of(var, v);
  return idx >= var.lo && idx <= var.hi && test(var, idx);
}

std::vector<Value> DomainStore::values(VarId x) const {
  std::vector<Value> out;
  out.reserve(vars_[x].size);
  for_each(x, [&](Value v) { out.push_back(v); });
  return out;
}

void DomainStore::note_change(VarId x) {
  if (!in_changed_[x]) {
    in_changed_[x] = 1;
    changed_.push_back(x);
  }
}

void DomainStore::erase_index(VarId x, int idx) {
  Var& var = vars_[x];
  trail_.push_back({x, idx, var.lo, var.hi});
  words_[var.word_offset + (idx >> 6)] &= ~(std::uint64_t{1} << (idx & 63));
  --var.size;
  if (var.size == 0) {
    var.lo = static_cast<int>(var.universe.size());
    var.hi = -1;
  } else {
    while (!test(var, var.lo)) ++var.lo;
    while (!test(var, var.hi)) --var.hi;
  }
  note_change(x);
}

bool DomainStore::remove(VarId x, Value v) {
  Var& var = vars_[x];
  const int idx = index_of(var, v);
  if (idx >= var.lo && idx <= var.hi && test(var, idx)) erase_index(x, idx);
  return var.size > 0;
}

bool DomainStore::assign(VarId x, Value v) {
  Var& var = vars_[x];
  const int keep = index_of(var, v);
  if (keep < 0 || keep < var.lo || keep > var.hi || !test(var, keep)) {
    // Wipe the whole domain so the failure is visible to the caller.
    for (int i = var.hi; i >= var.lo && var.size > 0; --i) {
      if (test(var, i)) erase_index(x, i);
    }
    return false;
  }
  for (int i = var.hi; i > keep; --i) {
    if (test(var, i)) erase_index(x, i);
  }
  for (int i = var.lo; i < keep; ++i) {
    if (test(var, i)) erase_index(x, i);
  }
  return true;
}

bool DomainStore::remove_below(VarId x, Value bound) {
  Var& var = vars_[x];
  while (var.size > 0 && var.universe[var.lo] < bound) erase_index(x, var.lo);
  return var.size > 0;
}

bool DomainStore::remove_above(VarId x, Value bound) {
  Var& var = vars_[x];
  while (var.size > 0 && var.universe[var.hi] > bound) erase_index(x, var.hi);
  return var.size > 0;
}

void DomainStore::push_level() { level_marks_.push_back(trail_.size()); }

void DomainStore::backtrack_to(int level) {
  if (level < 0 || level > this->level()) {
    throw Error(ErrorKind::kInvalidArgument,
                "backtrack_to(" + std::to_string(level) + ") above current level " +
                    std::to_string(this->level()));
  }
  const std::size_t target = level == this->level() ? trail_.size() : level_marks_[level];
  while (trail_.size() > target) {
    const TrailEntry& e = trail_.back();
    Var& var = vars_[e.var];
    words_[var.word_offset + (e.index >> 6)] |= std::uint64_t{1} << (e.index & 63);
    ++var.size;
    var.lo = e.old_lo;
    var.hi = e.old_hi;
    trail_.pop_back();
  }
  level_marks_.resize(level);
  clear_changed();
}

void DomainStore::clear_changed() {
  for (VarId x : changed_) in_changed_[x] = 0;
  changed_.clear();
}

double DomainStore::log_search_space() const {
  double total = 0.0;
  for (const Var& var : vars_) {
    if (var.size == 0) return kLogZero;
    total += std::log(static_cast<double>(var.size));
  }
  return total;
}

std::uint64_t DomainStore::hash() const {
  // FNV-1a over (variable, value) pairs.
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xffU;
      h *= 1099511628211ULL;
    }
  };
  for (VarId x = 0; x < num_vars(); ++x) {
    mix(static_cast<std::uint64_t>(x) | (std::uint64_t{1} << 40));
    for_each(x, [&](Value v) { mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v))); });
  }
  return h;
}

}  // namespace cbs
