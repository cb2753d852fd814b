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

#include "cbs/heuristics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace cbs {

namespace {

struct NamedKind {
  std::string_view name;
  HeuristicKind kind;
};

constexpr std::array<NamedKind, 13> kNames = {{
    {"maxSD", HeuristicKind::kMaxSD},
    {"maxRelSD", HeuristicKind::kMaxRelSD},
    {"maxRelRatio", HeuristicKind::kMaxRelRatio},
    {"aAvgSD", HeuristicKind::kAAvgSD},
    {"wSCAvg", HeuristicKind::kWSCAvg},
    {"minSCMaxSD", HeuristicKind::kMinSCMaxSD},
    {"dom", HeuristicKind::kDom},
    {"domWDeg", HeuristicKind::kDomWDeg},
    {"ibs", HeuristicKind::kIbs},
    {"domDeg+maxSD", HeuristicKind::kDomDegMaxSD},
    {"maxSD+random", HeuristicKind::kMaxSDRandom},
    {"ibs+maxSD", HeuristicKind::kIbsMaxSD},
    {"domWDeg+maxSD", HeuristicKind::kDomWDegMaxSD},
}};

constexpr int kIbsSubset = 5;

bool same_score(double a, double b) {
  if (a == b) return true;
  if (!std::isfinite(a) || !std::isfinite(b)) return false;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

// a ranks before b: higher score, then smaller variable, then smaller value.
bool ranks_before(const Candidate& a, const Candidate& b) {
  if (!same_score(a.score, b.score)) return a.score > b.score;
  if (a.var != b.var) return a.var < b.var;
  return a.value < b.value;
}

class Top2 {
 public:
  void offer(VarId x, Value v, double score) {
    const Candidate c{x, v, score};
    if (best_ && best_->var == x && best_->value == v) {
      best_->score = std::max(best_->score, score);
      return;
    }
    if (second_ && second_->var == x && second_->value == v) {
      second_->score = std::max(second_->score, score);
      if (ranks_before(*second_, *best_)) std::swap(*best_, *second_);
      return;
    }
    if (!best_ || ranks_before(c, *best_)) {
      second_ = best_;
      best_ = c;
    } else if (!second_ || ranks_before(c, *second_)) {
      second_ = c;
    }
  }

  std::optional<Candidate> pick(Rng* rng) const {
    if (rng != nullptr && second_ && uniform_below(*rng, 2) == 1) return second_;
    return best_;
  }

 private:
  std::optional<Candidate> best_;
  std::optional<Candidate> second_;
};

}  // namespace

std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

std::string_view to_string(HeuristicKind k) {
  for (const auto& nk : kNames) {
    if (nk.kind == k) return nk.name;
  }
  return "maxSD";
}

HeuristicKind heuristic_from_string(std::string_view name) {
  std::string valid;
  for (const auto& nk : kNames) {
    if (nk.name == name) return nk.kind;
    if (!valid.empty()) valid += ", ";
    valid += nk.name;
  }
  throw Error(ErrorKind::kUnknownName, "unknown heuristic '" + std::string(name) + "' (valid: " + valid + ")");
}

const std::vector<HeuristicKind>& all_heuristics() {
  static const std::vector<HeuristicKind> kinds = [] {
    std::vector<HeuristicKind> out;
    for (const auto& nk : kNames) out.push_back(nk.kind);
    return out;
  }();
  return kinds;
}

bool is_randomized(HeuristicKind k) {
  return k == HeuristicKind::kDom || k == HeuristicKind::kIbs || k == HeuristicKind::kMaxSDRandom ||
         k == HeuristicKind::kIbsMaxSD;
}

std::optional<Candidate> select_by_density(DensityRule rule, const TableList& tables, const DomainStore& store,
                                           Rng* top2) {
  Top2 acc;
  auto scan = [&](const DensityTable& t, auto&& score) {
    for (const VarDensities& vd : t.vars) {
      if (store.is_bound(vd.var)) continue;
      for (const auto& [v, sigma] : vd.entries) acc.offer(vd.var, v, score(vd.var, sigma));
    }
  };

  switch (rule) {
    case DensityRule::kMaxSD:
      for (const auto& t : tables) scan(*t, [](VarId, double s) { return s; });
      break;
    case DensityRule::kMaxRelSD:
      for (const auto& t : tables) scan(*t, [&](VarId x, double s) { return s - 1.0 / store.size(x); });
      break;
    case DensityRule::kMaxRelRatio:
      for (const auto& t : tables) scan(*t, [&](VarId x, double s) { return s * store.size(x); });
      break;
    case DensityRule::kAAvgSD:
    case DensityRule::kWSCAvg: {
      double max_log = kLogZero;
      for (const auto& t : tables) max_log = std::max(max_log, t->log_count);
      struct Sum {
        VarId x;
        Value v;
        double num = 0.0;
        double den = 0.0;
      };
      std::unordered_map<std::uint64_t, Sum> sums;
      for (const auto& t : tables) {
        double w = 1.0;
        if (rule == DensityRule::kWSCAvg && max_log != kLogZero) w = std::exp(t->log_count - max_log);
        for (const VarDensities& vd : t->vars) {
          if (store.is_bound(vd.var)) continue;
          for (const auto& [v, sigma] : vd.entries) {
            const std::uint64_t k =
                (static_cast<std::uint64_t>(static_cast<std::uint32_t>(vd.var)) << 32) | static_cast<std::uint32_t>(v);
            Sum& s = sums.try_emplace(k, Sum{vd.var, v}).first->second;
            s.num += w * sigma;
            s.den += w;
          }
        }
      }
      for (const auto& [k, s] : sums) acc.offer(s.x, s.v, s.den > 0 ? s.num / s.den : 0.0);
      break;
    }
    case DensityRule::kMinSCMaxSD: {
      std::vector<const DensityTable*> order;
      for (const auto& t : tables) order.push_back(t.get());
      std::stable_sort(order.begin(), order.end(), [](const DensityTable* a, const DensityTable* b) {
        if (a->log_count != b->log_count) return a->log_count < b->log_count;
        return a->constraint < b->constraint;
      });
      for (const DensityTable* t : order) {
        const bool open = std::any_of(t->vars.begin(), t->vars.end(),
                                      [&](const VarDensities& vd) { return !store.is_bound(vd.var); });
        if (!open) continue;
        scan(*t, [](VarId, double s) { return s; });
        break;
      }
      break;
    }
  }
  return acc.pick(top2);
}

std::optional<Value> max_density_value(VarId x, const TableList& tables, const DomainStore& store) {
  std::optional<Value> best;
  double best_sigma = -1.0;
  for (const auto& t : tables) {
    const VarDensities* vd = t->find(x);
    if (vd == nullptr) continue;
    for (const auto& [v, sigma] : vd->entries) {
      if (!store.contains(x, v)) continue;
      if (!best || (!same_score(sigma, best_sigma) && sigma > best_sigma) ||
          (same_score(sigma, best_sigma) && v < *best)) {
        best = v;
        best_sigma = sigma;
      }
    }
  }
  return best;
}

Heuristic::Heuristic(HeuristicKind kind) : kind_(kind) {
  switch (kind) {
    case HeuristicKind::kMaxSD:
      density_rule_ = DensityRule::kMaxSD;
      break;
    case HeuristicKind::kMaxRelSD:
      density_rule_ = DensityRule::kMaxRelSD;
      break;
    case HeuristicKind::kMaxRelRatio:
      density_rule_ = DensityRule::kMaxRelRatio;
      break;
    case HeuristicKind::kAAvgSD:
      density_rule_ = DensityRule::kAAvgSD;
      break;
    case HeuristicKind::kWSCAvg:
      density_rule_ = DensityRule::kWSCAvg;
      break;
    case HeuristicKind::kMinSCMaxSD:
      density_rule_ = DensityRule::kMinSCMaxSD;
      break;
    case HeuristicKind::kDom:
      var_rule_ = VarRule::kDom;
      value_rule_ = ValueRule::kRandom;
      break;
    case HeuristicKind::kDomWDeg:
      var_rule_ = VarRule::kDomWDeg;
      value_rule_ = ValueRule::kFirst;
      break;
    case HeuristicKind::kIbs:
      var_rule_ = VarRule::kIbs;
      value_rule_ = ValueRule::kMinImpact;
      break;
    case HeuristicKind::kDomDegMaxSD:
      var_rule_ = VarRule::kDomDeg;
      value_rule_ = ValueRule::kMaxDensity;
      break;
    case HeuristicKind::kMaxSDRandom:
      value_rule_ = ValueRule::kRandom;
      break;
    case HeuristicKind::kIbsMaxSD:
      var_rule_ = VarRule::kIbs;
      value_rule_ = ValueRule::kMaxDensity;
      break;
    case HeuristicKind::kDomWDegMaxSD:
      var_rule_ = VarRule::kDomWDeg;
      value_rule_ = ValueRule::kMaxDensity;
      break;
  }
}

int Heuristic::weight(int constraint) const {
  if (constraint < 0 || constraint >= static_cast<int>(weights_.size())) return 1;
  return weights_[constraint];
}

void Heuristic::record_wipeout(int constraint) {
  if (constraint < 0) return;
  if (constraint >= static_cast<int>(weights_.size())) weights_.resize(constraint + 1, 1);
  ++weights_[constraint];
}

std::optional<double> Heuristic::impact(VarId x, Value v) const {
  auto it = impacts_.find(key(x, v));
  if (it == impacts_.end()) return std::nullopt;
  return it->second.mean;
}

double Heuristic::impact_or_zero(VarId x, Value v) const { return impact(x, v).value_or(0.0); }

void Heuristic::add_impact(VarId x, Value v, double value) {
  ImpactAvg& a = impacts_[key(x, v)];
  ++a.n;
  a.mean += (value - a.mean) / static_cast<double>(a.n);
}

void Heuristic::observe(const Decision& d, double log_before, double log_after, bool failed) {
  if (d.kind != Decision::Kind::kAssign) return;
  if (var_rule_ != VarRule::kIbs) return;
  const double imp = failed || log_after == kLogZero ? 1.0 : 1.0 - std::exp(log_after - log_before);
  add_impact(d.var, d.value, std::clamp(imp, 0.0, 1.0));
}

double Heuristic::probe_impact(Engine& engine, VarId x, Value v) {
  const int level = engine.level();
  const double before = engine.domains().log_search_space();
  const bool failed = engine.push_decision(Decision::assign(x, v)) == PropStatus::kWipeout;
  const double after = failed ? kLogZero : engine.domains().log_search_space();
  engine.backtrack_to(level);
  const double imp = failed ? 1.0 : std::clamp(1.0 - std::exp(after - before), 0.0, 1.0);
  add_impact(x, v, imp);
  return imp;
}

PropStatus Heuristic::initialize(Engine& engine, Rng& /*rng*/) {
  if (weights_.size() < static_cast<std::size_t>(engine.num_constraints())) {
    weights_.resize(engine.num_constraints(), 1);
  }
  if (var_rule_ != VarRule::kIbs || !impacts_.empty()) return PropStatus::kConsistent;
  for (VarId x = 0; x < engine.num_vars(); ++x) {
    for (Value v : engine.domains().values(x)) {
      if (engine.domains().is_bound(x) || !engine.domains().contains(x, v)) continue;
      if (probe_impact(engine, x, v) >= 1.0) {
        if (engine.remove_at_root(x, v) == PropStatus::kWipeout) return PropStatus::kWipeout;
      }
    }
  }
  return PropStatus::kConsistent;
}

std::optional<VarId> Heuristic::choose_dom(const Engine& engine, Rng& rng) const {
  const DomainStore& s = engine.domains();
  std::optional<VarId> pick;
  int best = std::numeric_limits<int>::max();
  std::uint64_t ties = 0;
  for (VarId x = 0; x < s.num_vars(); ++x) {
    if (s.is_bound(x)) continue;
    const int size = s.size(x);
    if (size < best) {
      best = size;
      pick = x;
      ties = 1;
    } else if (size == best && uniform_below(rng, ++ties) == 0) {
      pick = x;
    }
  }
  return pick;
}

std::optional<VarId> Heuristic::choose_weighted_degree(const Engine& engine, bool use_weights, Rng& rng) const {
  const DomainStore& s = engine.domains();
  std::vector<int> open(engine.num_constraints(), 0);
  for (int c = 0; c < engine.num_constraints(); ++c) {
    for (VarId y : engine.constraint(c).scope()) open[c] += s.is_bound(y) ? 0 : 1;
  }
  Top2 acc;
  for (VarId x = 0; x < s.num_vars(); ++x) {
    if (s.is_bound(x)) continue;
    double deg = 0.0;
    for (int c : engine.constraints_of(x)) {
      if (open[c] >= 2) deg += use_weights ? weight(c) : 1.0;
    }
    const double ratio = deg > 0 ? s.size(x) / deg : std::numeric_limits<double>::infinity();
    acc.offer(x, 0, -ratio);
  }
  auto c = acc.pick(top2_ ? &rng : nullptr);
  if (!c) return std::nullopt;
  return c->var;
}

std::optional<VarId> Heuristic::choose_ibs(Engine& engine, Rng& rng) {
  const DomainStore& s = engine.domains();
  std::vector<VarId> tied;
  double best = -1.0;
  for (VarId x = 0; x < s.num_vars(); ++x) {
    if (s.is_bound(x)) continue;
    double total = 0.0;
    s.for_each(x, [&](Value v) { total += 1.0 - impact_or_zero(x, v); });
    if (tied.empty() || (!same_score(total, best) && total > best)) {
      tied.assign(1, x);
      best = total;
    } else if (same_score(total, best)) {
      tied.push_back(x);
    }
  }
  if (tied.size() <= 1) {
    if (tied.empty()) return std::nullopt;
    return tied.front();
  }
  // Random subset of the tied variables, ranked by node impact.
  const std::size_t k = std::min<std::size_t>(kIbsSubset, tied.size());
  for (std::size_t i = 0; i < k; ++i) {
    std::swap(tied[i], tied[i + uniform_below(rng, tied.size() - i)]);
  }
  std::vector<VarId> winners;
  double best_node = -1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const VarId x = tied[i];
    double node = 0.0;
    for (Value v : engine.domains().values(x)) node += 1.0 - probe_impact(engine, x, v);
    if (winners.empty() || (!same_score(node, best_node) && node > best_node)) {
      winners.assign(1, x);
      best_node = node;
    } else if (same_score(node, best_node)) {
      winners.push_back(x);
    }
  }
  return winners[uniform_below(rng, winners.size())];
}

Value Heuristic::choose_value(Engine& engine, VarId x, ValueRule rule, Rng& rng, const TableList* tables) const {
  const DomainStore& s = engine.domains();
  switch (rule) {
    case ValueRule::kRandom: {
      const std::vector<Value> vals = s.values(x);
      return vals[uniform_below(rng, vals.size())];
    }
    case ValueRule::kMaxDensity: {
      TableList local;
      if (tables == nullptr) {
        local = engine.collect_densities();
        tables = &local;
      }
      return max_density_value(x, *tables, s).value_or(s.min(x));
    }
    case ValueRule::kMinImpact: {
      Value best = s.min(x);
      double low = 2.0;
      s.for_each(x, [&](Value v) {
        const double imp = impact_or_zero(x, v);
        if (imp < low && !same_score(imp, low)) {
          low = imp;
          best = v;
        }
      });
      return best;
    }
    case ValueRule::kFirst:
    case ValueRule::kFromDensity:
      break;
  }
  return s.min(x);
}

std::optional<Candidate> Heuristic::select(Engine& engine, Rng& rng) {
  if (engine.all_bound()) return std::nullopt;
  const DomainStore& s = engine.domains();
  std::optional<VarId> x;
  switch (var_rule_) {
    case VarRule::kDensity: {
      const TableList tables = engine.collect_densities();
      auto c = select_by_density(density_rule_, tables, s, top2_ ? &rng : nullptr);
      if (c) {
        if (value_rule_ == ValueRule::kRandom) c->value = choose_value(engine, c->var, ValueRule::kRandom, rng, &tables);
        return c;
      }
      // No counting constraint covers the remaining variables.
      int best = std::numeric_limits<int>::max();
      for (VarId y = 0; y < s.num_vars(); ++y) {
        if (!s.is_bound(y) && s.size(y) < best) {
          best = s.size(y);
          x = y;
        }
      }
      return Candidate{*x, s.min(*x), 0.0};
    }
    case VarRule::kDom:
      x = choose_dom(engine, rng);
      break;
    case VarRule::kDomWDeg:
      x = choose_weighted_degree(engine, true, rng);
      break;
    case VarRule::kDomDeg:
      x = choose_weighted_degree(engine, false, rng);
      break;
    case VarRule::kIbs:
      x = choose_ibs(engine, rng);
      break;
  }
  if (!x) return std::nullopt;
  return Candidate{*x, choose_value(engine, *x, value_rule_, rng, nullptr), 0.0};
}

}  // namespace cbs
