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

#ifndef CBS_DOMAIN_STORE_HPP
#define CBS_DOMAIN_STORE_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "cbs/types.hpp"

namespace cbs {

// Reversible finite integer domains. Each variable keeps its initial sorted
// value list (the universe) and a presence bitset over it. Every removal is
// trailed, so backtrack_to(L) restores exactly the sets present at level L.
class DomainStore {
 public:
  // `values` need not be sorted; duplicates are dropped. An empty list is
  // accepted and yields an already wiped-out variable.
  VarId add_variable(std::vector<Value> values);

  int num_vars() const { return static_cast<int>(vars_.size()); }

  int size(VarId x) const { return vars_[x].size; }
  bool empty(VarId x) const { return vars_[x].size == 0; }
  bool is_bound(VarId x) const { return vars_[x].size == 1; }
  Value min(VarId x) const { return vars_[x].universe[vars_[x].lo]; }
  Value max(VarId x) const { return vars_[x].universe[vars_[x].hi]; }
  // Only meaningful when is_bound(x).
  Value value(VarId x) const { return min(x); }
  bool contains(VarId x, Value v) const;

  std::vector<Value> values(VarId x) const;
  const std::vector<Value>& universe(VarId x) const { return vars_[x].universe; }

  template <class F>
  void for_each(VarId x, F&& f) const {
    const Var& var = vars_[x];
    if (var.size == 0) return;
    const int first_word = var.lo >> 6;
    const int last_word = var.hi >> 6;
    for (int w = first_word; w <= last_word; ++w) {
      std::uint64_t bits = words_[var.word_offset + w];
      while (bits != 0) {
        const int b = std::countr_zero(bits);
        f(var.universe[(w << 6) + b]);
        bits &= bits - 1;
      }
    }
  }

  // Mutators return false iff the domain is empty afterwards.
  bool remove(VarId x, Value v);
  bool assign(VarId x, Value v);
  bool remove_below(VarId x, Value bound);  // keeps values >= bound
  bool remove_above(VarId x, Value bound);  // keeps values <= bound
  // Keeps only values for which keep(v) is true.
  template <class Pred>
  bool retain_if(VarId x, Pred&& keep) {
    std::vector<Value> drop;
    for_each(x, [&](Value v) {
      if (!keep(v)) drop.push_back(v);
    });
    for (Value v : drop) remove(x, v);
    return vars_[x].size > 0;
  }

  int level() const { return static_cast<int>(level_marks_.size()); }
  void push_level();
  // Throws Error(kInvalidArgument) when level > level().
  void backtrack_to(int level);

  // Variables modified since the last clear_changed(), in first-change order.
  const std::vector<VarId>& changed() const { return changed_; }
  void clear_changed();

  // Sum of log |D_x| over all variables; -inf when some domain is empty.
  double log_search_space() const;
  // Order-sensitive digest of all domain contents, used by trail tests.
  std::uint64_t hash() const;

 private:
  struct Var {
    std::vector<Value> universe;
    int word_offset = 0;
    int size = 0;
    int lo = 0;
    int hi = -1;
    bool contiguous = true;
  };
  struct TrailEntry {
    VarId var;
    int index;
    int old_lo;
    int old_hi;
  };

  int index_of(const Var& var, Value v) const;
  bool test(const Var& var, int idx) const {
    return (words_[var.word_offset + (idx >> 6)] >> (idx & 63)) & 1U;
  }
  void erase_index(VarId x, int idx);
  void note_change(VarId x);

  std::vector<Var> vars_;
  std::vector<std::uint64_t> words_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> level_marks_;
  std::vector<VarId> changed_;
  std::vector<char> in_changed_;
};

}  // namespace cbs

#endif  // CBS_DOMAIN_STORE_HPP
