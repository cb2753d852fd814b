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

#ifndef CBS_HEURISTICS_HPP
#define CBS_HEURISTICS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cbs/density.hpp"
#include "cbs/engine.hpp"

namespace cbs {

using Rng = std::mt19937_64;

// Uniform integer in [0, n). Same stream on every platform.
std::uint64_t uniform_below(Rng& rng, std::uint64_t n);

enum class HeuristicKind {
  kMaxSD,
  kMaxRelSD,
  kMaxRelRatio,
  kAAvgSD,
  kWSCAvg,
  kMinSCMaxSD,
  kDom,
  kDomWDeg,
  kIbs,
  kDomDegMaxSD,
  kMaxSDRandom,
  kIbsMaxSD,
  kDomWDegMaxSD,
};

std::string_view to_string(HeuristicKind k);
HeuristicKind heuristic_from_string(std::string_view name);
const std::vector<HeuristicKind>& all_heuristics();
// True when the choices depend on the random stream.
bool is_randomized(HeuristicKind k);

struct Candidate {
  VarId var = -1;
  Value value = 0;
  double score = 0.0;
};

enum class DensityRule { kMaxSD, kMaxRelSD, kMaxRelRatio, kAAvgSD, kWSCAvg, kMinSCMaxSD };

using TableList = std::vector<std::shared_ptr<const DensityTable>>;

// Best (variable, value) pair among unbound variables under a density rule.
// Ties go to the smallest variable, then the smallest value. With `top2`
// set, the best two pairs are drawn with equal probability. Returns nullopt
// when no table covers an unbound variable.
std::optional<Candidate> select_by_density(DensityRule rule, const TableList& tables, const DomainStore& store,
                                           Rng* top2 = nullptr);

// Value of x with the largest density over all tables (smallest value on
// ties), or nullopt when no table covers x.
std::optional<Value> max_density_value(VarId x, const TableList& tables, const DomainStore& store);

class Heuristic {
 public:
  explicit Heuristic(HeuristicKind kind);

  HeuristicKind kind() const { return kind_; }
  std::string_view name() const { return to_string(kind_); }

  // Draw between the best two candidates instead of always taking the best.
  void set_randomize_top2(bool on) { top2_ = on; }
  bool randomize_top2() const { return top2_; }

  // Called once at the root after propagation. Impact-based kinds probe
  // every pair here and remove failing values at the root.
  PropStatus initialize(Engine& engine, Rng& rng);

  // Next branching pair; nullopt when every variable is bound.
  std::optional<Candidate> select(Engine& engine, Rng& rng);

  // Outcome of an assignment decision taken by the search.
  void observe(const Decision& d, double log_before, double log_after, bool failed);
  void record_wipeout(int constraint);

  int weight(int constraint) const;
  // Average observed impact, or nullopt if never observed.
  std::optional<double> impact(VarId x, Value v) const;

 private:
  struct ImpactAvg {
    double mean = 0.0;
    std::uint64_t n = 0;
  };
  enum class VarRule { kDensity, kDom, kDomWDeg, kDomDeg, kIbs };
  enum class ValueRule { kFromDensity, kRandom, kFirst, kMaxDensity, kMinImpact };

  static std::uint64_t key(VarId x, Value v) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(x)) << 32) | static_cast<std::uint32_t>(v);
  }
  void add_impact(VarId x, Value v, double impact);
  double impact_or_zero(VarId x, Value v) const;
  double probe_impact(Engine& engine, VarId x, Value v);

  std::optional<VarId> choose_dom(const Engine& engine, Rng& rng) const;
  std::optional<VarId> choose_weighted_degree(const Engine& engine, bool use_weights, Rng& rng) const;
  std::optional<VarId> choose_ibs(Engine& engine, Rng& rng);
  Value choose_value(Engine& engine, VarId x, ValueRule rule, Rng& rng, const TableList* tables) const;

  HeuristicKind kind_;
  VarRule var_rule_ = VarRule::kDensity;
  ValueRule value_rule_ = ValueRule::kFromDensity;
  DensityRule density_rule_ = DensityRule::kMaxSD;
  bool top2_ = false;
  std::vector<int> weights_;
  std::unordered_map<std::uint64_t, ImpactAvg> impacts_;
};

}  // namespace cbs

#endif  // CBS_HEURISTICS_HPP
