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

#include "cbsearch.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "cbs/bench.hpp"
#include "cbs/heuristics.hpp"
#include "cbs/knapsack.hpp"
#include "cbs/oracle.hpp"
#include "cbs/search.hpp"

struct cbs_instance {
  cbs::Instance inst;
  std::string kind;
  std::string extension;
};

struct cbs_model {
  cbs::Engine engine;
};

struct cbs_result {
  cbs::SearchStats stats;
};

struct cbs_densities {
  std::vector<std::shared_ptr<const cbs::DensityTable>> tables;
  // Flattened (var, value, density) rows per table.
  std::vector<std::vector<std::pair<std::pair<int, int>, double>>> rows;
};

struct cbs_exact {
  std::string count;
  struct Row {
    int var;
    int value;
    std::string num;
    std::string den;
    double density;
  };
  std::vector<Row> rows;
};

namespace {

thread_local std::string last_error;

cbs_status fail(cbs_status s, const std::string& what) {
  last_error = what;
  return s;
}

cbs_status map_kind(cbs::ErrorKind k) {
  switch (k) {
    case cbs::ErrorKind::kInvalidArgument: return CBS_ERR_INVALID_ARGUMENT;
    case cbs::ErrorKind::kParse: return CBS_ERR_PARSE;
    case cbs::ErrorKind::kIo: return CBS_ERR_IO;
    case cbs::ErrorKind::kUnknownName: return CBS_ERR_UNKNOWN_NAME;
    case cbs::ErrorKind::kCapExceeded: return CBS_ERR_CAP_EXCEEDED;
  }
  return CBS_ERR_INTERNAL;
}

// Runs f, translating exceptions into status codes.
template <class F>
cbs_status guarded(F&& f) {
  try {
    last_error.clear();
    f();
    return CBS_OK;
  } catch (const cbs::Error& e) {
    return fail(map_kind(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CBS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CBS_ERR_INTERNAL, e.what());
  }
}

#define CBS_REQUIRE(cond, msg) \
  if (!(cond)) return fail(CBS_ERR_INVALID_ARGUMENT, msg)

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cbs_instance* wrap(cbs::Instance inst) {
  auto* h = new cbs_instance{std::move(inst), "", ""};
  h->kind = std::string(cbs::to_string(h->inst.kind));
  h->extension = cbs::file_extension(h->inst.kind);
  return h;
}

std::string join_names(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

}  // namespace

extern "C" {

const char* cbs_version(void) { return "1.0.0"; }

const char* cbs_last_error(void) { return last_error.c_str(); }

const char* cbs_status_name(cbs_status status) {
  switch (status) {
    case CBS_OK: return "ok";
    case CBS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case CBS_ERR_PARSE: return "parse error";
    case CBS_ERR_IO: return "i/o error";
    case CBS_ERR_UNKNOWN_NAME: return "unknown name";
    case CBS_ERR_CAP_EXCEEDED: return "cap exceeded";
    case CBS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* cbs_heuristic_names(void) {
  static const std::string names = [] {
    std::vector<std::string> v;
    for (auto k : cbs::all_heuristics()) v.emplace_back(cbs::to_string(k));
    return join_names(v);
  }();
  return names.c_str();
}

const char* cbs_problem_kinds(void) {
  static const std::string names = [] {
    std::vector<std::string> v;
    for (int k = 0; k <= static_cast<int>(cbs::ProblemKind::kCsp); ++k) {
      v.emplace_back(cbs::to_string(static_cast<cbs::ProblemKind>(k)));
    }
    return join_names(v);
  }();
  return names.c_str();
}

int cbs_heuristic_is_randomized(const char* name) {
  if (name == nullptr) return -1;
  try {
    return cbs::is_randomized(cbs::heuristic_from_string(name)) ? 1 : 0;
  } catch (const cbs::Error&) {
    return -1;
  }
}

void cbs_string_free(char* s) { std::free(s); }

void cbs_generate_params_default(cbs_generate_params* params) {
  if (params == nullptr) return;
  const cbs::GenerateParams d;
  *params = {d.n, d.m, d.holes, d.prefill, d.density, d.preset, d.removed, d.forbidden, d.balanced ? 1 : 0};
}

cbs_status cbs_instance_read(const char* path, const char* kind, cbs_instance** out) {
  CBS_REQUIRE(path != nullptr && out != nullptr, "path and out must not be null");
  *out = nullptr;
  return guarded([&] {
    std::optional<cbs::ProblemKind> k;
    if (kind != nullptr) k = cbs::problem_kind_from_string(kind);
    *out = wrap(cbs::read_instance(path, k));
  });
}

cbs_status cbs_instance_parse(const char* text, const char* kind, const char* name, cbs_instance** out) {
  CBS_REQUIRE(text != nullptr && kind != nullptr && out != nullptr, "text, kind and out must not be null");
  *out = nullptr;
  return guarded([&] {
    *out = wrap(cbs::parse_instance(text, cbs::problem_kind_from_string(kind), name != nullptr ? name : ""));
  });
}

cbs_status cbs_instance_generate(const char* kind, const cbs_generate_params* params, uint64_t seed,
                                 cbs_instance** out) {
  CBS_REQUIRE(kind != nullptr && out != nullptr, "kind and out must not be null");
  *out = nullptr;
  return guarded([&] {
    cbs::GenerateParams p;
    if (params != nullptr) {
      p = {params->n,      params->m,       params->holes,     params->prefill,       params->density,
           params->preset, params->removed, params->forbidden, params->balanced != 0};
    }
    *out = wrap(cbs::generate_instance(cbs::problem_kind_from_string(kind), p, seed));
  });
}

void cbs_instance_free(cbs_instance* inst) { delete inst; }

const char* cbs_instance_name(const cbs_instance* inst) { return inst ? inst->inst.name.c_str() : ""; }
const char* cbs_instance_kind(const cbs_instance* inst) { return inst ? inst->kind.c_str() : ""; }
const char* cbs_instance_extension(const cbs_instance* inst) { return inst ? inst->extension.c_str() : ""; }

int cbs_instance_known_status(const cbs_instance* inst) {
  if (inst == nullptr || !inst->inst.known_sat) return -1;
  return *inst->inst.known_sat ? 1 : 0;
}

cbs_status cbs_instance_write(const cbs_instance* inst, char** text) {
  CBS_REQUIRE(inst != nullptr && text != nullptr, "instance and text must not be null");
  *text = nullptr;
  return guarded([&] { *text = dup_string(cbs::write_instance(inst->inst)); });
}

cbs_status cbs_instance_save(const cbs_instance* inst, const char* path) {
  CBS_REQUIRE(inst != nullptr && path != nullptr, "instance and path must not be null");
  return guarded([&] { cbs::save_instance(inst->inst, path); });
}

cbs_status cbs_instance_check(const cbs_instance* inst, const int* values, size_t count, int* ok) {
  CBS_REQUIRE(inst != nullptr && ok != nullptr && (values != nullptr || count == 0),
              "instance, values and ok must not be null");
  return guarded([&] { *ok = cbs::check_solution(inst->inst, std::vector<cbs::Value>(values, values + count)) ? 1 : 0; });
}

cbs_status cbs_model_build(const cbs_instance* inst, const cbs_model_options* options, cbs_model** out) {
  CBS_REQUIRE(inst != nullptr && out != nullptr, "instance and out must not be null");
  *out = nullptr;
  return guarded([&] {
    cbs::ModelOptions o;
    if (options != nullptr) {
      if (options->consistency != nullptr) o.consistency = cbs::consistency_from_string(options->consistency);
      if (options->knapsack_mode != nullptr) o.knapsack_mode = cbs::knapsack_mode_from_string(options->knapsack_mode);
      o.exact_moments = options->exact_moments != 0;
    }
    auto m = std::make_unique<cbs_model>();
    cbs::build_model(inst->inst, m->engine, o);
    *out = m.release();
  });
}

void cbs_model_free(cbs_model* model) { delete model; }

int cbs_model_num_vars(const cbs_model* model) { return model ? model->engine.num_vars() : 0; }
int cbs_model_num_constraints(const cbs_model* model) { return model ? model->engine.num_constraints() : 0; }

const char* cbs_model_constraint_kind(const cbs_model* model, int constraint) {
  if (model == nullptr || constraint < 0 || constraint >= model->engine.num_constraints()) return "";
  return model->engine.constraint(constraint).kind().data();
}

cbs_status cbs_model_domain(const cbs_model* model, int var, int* buffer, size_t capacity, size_t* size) {
  CBS_REQUIRE(model != nullptr && size != nullptr, "model and size must not be null");
  CBS_REQUIRE(var >= 0 && var < model->engine.num_vars(), "variable out of range");
  return guarded([&] {
    const auto vals = model->engine.domains().values(var);
    *size = vals.size();
    if (buffer != nullptr) {
      if (capacity < vals.size()) throw cbs::Error(cbs::ErrorKind::kInvalidArgument, "buffer too small");
      std::copy(vals.begin(), vals.end(), buffer);
    }
  });
}

cbs_status cbs_model_propagate(cbs_model* model, int* consistent) {
  CBS_REQUIRE(model != nullptr && consistent != nullptr, "model and consistent must not be null");
  return guarded([&] { *consistent = model->engine.propagate() == cbs::PropStatus::kConsistent ? 1 : 0; });
}

void cbs_solve_options_default(cbs_solve_options* options) {
  if (options == nullptr) return;
  const cbs::SearchOptions d;
  *options = {nullptr, nullptr, d.restart_scale, d.lds_skip, d.timeout_s, d.max_backtracks, d.seed};
}

cbs_status cbs_solve(cbs_model* model, const cbs_solve_options* options, cbs_result** out) {
  CBS_REQUIRE(model != nullptr && out != nullptr, "model and out must not be null");
  *out = nullptr;
  return guarded([&] {
    cbs_solve_options o;
    cbs_solve_options_default(&o);
    if (options != nullptr) o = *options;
    cbs::SearchOptions so;
    if (o.traversal != nullptr) so.traversal = cbs::traversal_from_string(o.traversal);
    if (o.restart_scale <= 0) throw cbs::Error(cbs::ErrorKind::kInvalidArgument, "restart scale must be positive");
    if (o.lds_skip < 1) throw cbs::Error(cbs::ErrorKind::kInvalidArgument, "lds skip must be at least 1");
    if (!(o.timeout_s >= 0)) throw cbs::Error(cbs::ErrorKind::kInvalidArgument, "timeout must be non-negative");
    so.restart_scale = o.restart_scale;
    so.lds_skip = o.lds_skip;
    so.timeout_s = o.timeout_s;
    so.max_backtracks = o.max_backtracks;
    so.seed = o.seed;
    cbs::Heuristic h(o.heuristic != nullptr ? cbs::heuristic_from_string(o.heuristic) : cbs::HeuristicKind::kMaxSD);
    auto r = std::make_unique<cbs_result>();
    r->stats = cbs::solve(model->engine, h, so);
    *out = r.release();
  });
}

void cbs_result_free(cbs_result* result) { delete result; }

cbs_outcome cbs_result_outcome(const cbs_result* r) {
  if (r == nullptr) return CBS_TIMEOUT;
  switch (r->stats.status) {
    case cbs::SearchStatus::kSat: return CBS_SAT;
    case cbs::SearchStatus::kUnsat: return CBS_UNSAT;
    case cbs::SearchStatus::kTimeout: return CBS_TIMEOUT;
  }
  return CBS_TIMEOUT;
}

const char* cbs_result_status(const cbs_result* r) {
  return r ? cbs::to_string(r->stats.status).data() : "timeout";
}
uint64_t cbs_result_backtracks(const cbs_result* r) { return r ? r->stats.backtracks : 0; }
uint64_t cbs_result_nodes(const cbs_result* r) { return r ? r->stats.nodes : 0; }
double cbs_result_time_ms(const cbs_result* r) { return r ? r->stats.time_ms : 0.0; }
int cbs_result_restarts(const cbs_result* r) { return r ? r->stats.restarts : 0; }
int cbs_result_waves(const cbs_result* r) { return r ? r->stats.waves : 0; }
int cbs_result_discrepancies(const cbs_result* r) { return r ? r->stats.discrepancies : 0; }

const int* cbs_result_solution(const cbs_result* r, size_t* count) {
  if (r == nullptr || r->stats.status != cbs::SearchStatus::kSat) {
    if (count) *count = 0;
    return nullptr;
  }
  if (count) *count = r->stats.solution.size();
  return r->stats.solution.data();
}

int cbs_result_first_decision(const cbs_result* r, int* var, int* value, int* assign) {
  if (r == nullptr || !r->stats.first_decision) return 0;
  const auto& d = *r->stats.first_decision;
  if (var) *var = d.var;
  if (value) *value = d.value;
  if (assign) *assign = d.kind == cbs::Decision::Kind::kAssign ? 1 : 0;
  return 1;
}

cbs_status cbs_model_densities(cbs_model* model, cbs_densities** out) {
  CBS_REQUIRE(model != nullptr && out != nullptr, "model and out must not be null");
  *out = nullptr;
  CBS_REQUIRE(model->engine.level() == 0, "model is not at the root");
  return guarded([&] {
    auto d = std::make_unique<cbs_densities>();
    if (model->engine.propagate() == cbs::PropStatus::kConsistent) d->tables = model->engine.collect_densities();
    for (const auto& t : d->tables) {
      auto& rows = d->rows.emplace_back();
      for (const auto& vd : t->vars) {
        for (const auto& [v, p] : vd.entries) rows.push_back({{vd.var, v}, p});
      }
    }
    *out = d.release();
  });
}

void cbs_densities_free(cbs_densities* d) { delete d; }

size_t cbs_densities_num_tables(const cbs_densities* d) { return d ? d->tables.size() : 0; }

cbs_status cbs_densities_table(const cbs_densities* d, size_t table, int* constraint, double* log_count, int* exact,
                               size_t* num_entries) {
  CBS_REQUIRE(d != nullptr && table < d->tables.size(), "table out of range");
  const auto& t = *d->tables[table];
  if (constraint) *constraint = t.constraint;
  if (log_count) *log_count = t.log_count;
  if (exact) *exact = t.exact ? 1 : 0;
  if (num_entries) *num_entries = d->rows[table].size();
  return CBS_OK;
}

cbs_status cbs_densities_entry(const cbs_densities* d, size_t table, size_t entry, int* var, int* value,
                               double* density) {
  CBS_REQUIRE(d != nullptr && table < d->tables.size() && entry < d->rows[table].size(), "entry out of range");
  const auto& row = d->rows[table][entry];
  if (var) *var = row.first.first;
  if (value) *value = row.first.second;
  if (density) *density = row.second;
  return CBS_OK;
}

cbs_status cbs_model_exact_table(const cbs_model* model, int constraint, uint64_t cap, cbs_exact** out) {
  CBS_REQUIRE(model != nullptr && out != nullptr, "model and out must not be null");
  *out = nullptr;
  CBS_REQUIRE(constraint >= 0 && constraint < model->engine.num_constraints(), "constraint out of range");
  return guarded([&] {
    const auto t = cbs::exact_count_densities(model->engine.constraint(constraint), model->engine.domains(), cap);
    auto e = std::make_unique<cbs_exact>();
    e->count = t.count.str();
    for (const auto& vd : t.vars) {
      for (const auto& [v, q] : vd.entries) {
        e->rows.push_back({vd.var, v, boost::multiprecision::numerator(q).str(),
                           boost::multiprecision::denominator(q).str(), static_cast<double>(q)});
      }
    }
    *out = e.release();
  });
}

void cbs_exact_free(cbs_exact* e) { delete e; }
const char* cbs_exact_count(const cbs_exact* e) { return e ? e->count.c_str() : "0"; }
size_t cbs_exact_num_entries(const cbs_exact* e) { return e ? e->rows.size() : 0; }

cbs_status cbs_exact_entry(const cbs_exact* e, size_t entry, int* var, int* value, const char** numerator,
                           const char** denominator, double* density) {
  CBS_REQUIRE(e != nullptr && entry < e->rows.size(), "entry out of range");
  const auto& r = e->rows[entry];
  if (var) *var = r.var;
  if (value) *value = r.value;
  if (numerator) *numerator = r.num.c_str();
  if (denominator) *denominator = r.den.c_str();
  if (density) *density = r.density;
  return CBS_OK;
}

cbs_status cbs_model_exact_solve(const cbs_model* model, uint64_t cap, int* sat, char** count) {
  CBS_REQUIRE(model != nullptr && sat != nullptr, "model and sat must not be null");
  if (count) *count = nullptr;
  return guarded([&] {
    const auto r = cbs::exact_solve(model->engine, false, cap);
    *sat = r.sat ? 1 : 0;
    if (count) *count = dup_string(r.solutions.str());
  });
}

}  // extern "C"
