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

#ifndef CBS_CONSTRAINT_HPP
#define CBS_CONSTRAINT_HPP

#include <span>
#include <string_view>
#include <vector>

#include "cbs/density.hpp"
#include "cbs/domain_store.hpp"
#include "cbs/types.hpp"

namespace cbs {

// Base class of every constraint. Propagators are stateless with respect to
// search: they read and filter the current domains and keep nothing that
// would need trailing. Counting constraints additionally produce a
// DensityTable for the current domains.
class Constraint {
 public:
  Constraint(std::vector<VarId> scope, Consistency level)
      : scope_(std::move(scope)), level_(level) {}
  virtual ~Constraint() = default;

  Constraint(const Constraint&) = delete;
  Constraint& operator=(const Constraint&) = delete;

  const std::vector<VarId>& scope() const { return scope_; }
  Consistency consistency() const { return level_; }

  virtual std::string_view kind() const = 0;

  // Filters domains at the configured consistency. Returns false on wipeout.
  virtual bool propagate(DomainStore& store) = 0;

  // True when a second call right after a successful one cannot filter more.
  virtual bool idempotent() const { return false; }

  // Checks a complete assignment given in scope order.
  virtual bool is_satisfied(std::span<const Value> tuple) const = 0;

  virtual bool supports_counting() const { return false; }

  // Solution count and densities for the current domains. Only called at a
  // propagation fixpoint. Throws Error(kInvalidArgument) if unsupported.
  virtual DensityTable count(const DomainStore& store) const;

 private:
  std::vector<VarId> scope_;
  Consistency level_;
};

}  // namespace cbs

#endif  // CBS_CONSTRAINT_HPP
