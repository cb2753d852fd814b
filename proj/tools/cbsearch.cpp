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

// cbsearch: command-line front end over the C library interface.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "cbsearch.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitSat = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitTimeout = 2;
constexpr int kExitUsage = 3;
constexpr int kExitFailure = 4;

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void raise(cbs_status s) {
  const bool usage = s == CBS_ERR_UNKNOWN_NAME || s == CBS_ERR_INVALID_ARGUMENT;
  throw Failure{usage ? kExitUsage : kExitFailure, cbs_last_error()};
}

void check(cbs_status s) {
  if (s != CBS_OK) raise(s);
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using InstancePtr = std::unique_ptr<cbs_instance, Deleter<cbs_instance, cbs_instance_free>>;
using ModelPtr = std::unique_ptr<cbs_model, Deleter<cbs_model, cbs_model_free>>;
using ResultPtr = std::unique_ptr<cbs_result, Deleter<cbs_result, cbs_result_free>>;
using DensitiesPtr = std::unique_ptr<cbs_densities, Deleter<cbs_densities, cbs_densities_free>>;
using ExactPtr = std::unique_ptr<cbs_exact, Deleter<cbs_exact, cbs_exact_free>>;

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { cbs_string_free(s); }
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    if (!cur.empty()) out.push_back(cur);
  }
  return out;
}

struct ModelFlags {
  std::string kind;
  std::string consistency = "domain";
  std::string knapsack_mode = "exact";
  bool exact_moments = false;
};

struct SearchFlags {
  std::string heuristic = "maxSD";
  std::string traversal = "dfs";
  double restart_scale = 100.0;
  int lds_skip = 1;
  double timeout = 1200.0;
  std::uint64_t max_backtracks = 0;
  std::uint64_t seed = 0;
};

void add_model_flags(CLI::App* app, ModelFlags& f) {
  app->add_option("--kind", f.kind, "Instance format (default: file extension)");
  app->add_option("--consistency", f.consistency, "Propagation level")
      ->check(CLI::IsMember({"fc", "bounds", "domain"}));
  app->add_option("--knapsack-mode", f.knapsack_mode, "Knapsack counting")
      ->check(CLI::IsMember({"exact", "gaussian"}));
  app->add_flag("--exact-moments", f.exact_moments, "Gaussian moments over the actual domain values");
}

void add_search_flags(CLI::App* app, SearchFlags& f, bool single_heuristic) {
  if (single_heuristic) app->add_option("--heuristic", f.heuristic, "Branching heuristic");
  app->add_option("--restart-scale", f.restart_scale, "Backtracks allowed in the first restart run")
      ->check(CLI::PositiveNumber);
  app->add_option("--lds-skip", f.lds_skip, "Discrepancies added per wave")->check(CLI::PositiveNumber);
  app->add_option("--timeout", f.timeout, "Seconds per run")->check(CLI::NonNegativeNumber);
  app->add_option("--max-backtracks", f.max_backtracks, "Backtrack budget per run (0 = none)");
}

void validate_heuristic(const std::string& name) {
  if (cbs_heuristic_is_randomized(name.c_str()) < 0) {
    throw Failure{kExitUsage, "unknown heuristic '" + name + "' (valid: " + cbs_heuristic_names() + ")"};
  }
}

void validate_traversal(const std::string& name) {
  if (name != "dfs" && name != "restart" && name != "lds") {
    throw Failure{kExitUsage, "unknown traversal '" + name + "' (valid: dfs, restart, lds)"};
  }
}

InstancePtr load(const std::string& path, const std::string& kind) {
  cbs_instance* raw = nullptr;
  const cbs_status s = cbs_instance_read(path.c_str(), kind.empty() ? nullptr : kind.c_str(), &raw);
  if (s == CBS_ERR_INVALID_ARGUMENT && kind.empty()) {
    throw Failure{kExitUsage, std::string(cbs_last_error()) + " (use --kind; valid: " + cbs_problem_kinds() + ")"};
  }
  check(s);
  return InstancePtr(raw);
}

ModelPtr build(const cbs_instance* inst, const ModelFlags& f) {
  const cbs_model_options o{f.consistency.c_str(), f.knapsack_mode.c_str(), f.exact_moments ? 1 : 0};
  cbs_model* raw = nullptr;
  check(cbs_model_build(inst, &o, &raw));
  return ModelPtr(raw);
}

cbs_solve_options solve_options(const SearchFlags& f, const std::string& heuristic, const std::string& traversal,
                                std::uint64_t seed) {
  cbs_solve_options o;
  cbs_solve_options_default(&o);
  o.heuristic = heuristic.c_str();
  o.traversal = traversal.c_str();
  o.restart_scale = f.restart_scale;
  o.lds_skip = f.lds_skip;
  o.timeout_s = f.timeout;
  o.max_backtracks = f.max_backtracks;
  o.seed = seed;
  return o;
}

std::string params_of(const std::string& traversal, const SearchFlags& f) {
  std::ostringstream out;
  if (traversal == "restart") {
    out << "scale=" << f.restart_scale;
  } else if (traversal == "lds") {
    out << "skip=" << f.lds_skip;
  } else {
    out << "-";
  }
  return out.str();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::uint64_t> parse_seeds(const std::string& spec) {
  std::vector<std::uint64_t> out;
  for (const auto& part : split(spec, ',')) {
    const auto dash = part.find('-');
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoull(part));
      } else {
        const auto lo = std::stoull(part.substr(0, dash));
        const auto hi = std::stoull(part.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument(part);
        for (auto s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw Failure{kExitUsage, "bad seed list '" + spec + "'"};
    }
  }
  if (out.empty()) throw Failure{kExitUsage, "empty seed list"};
  return out;
}

// ---- solve ----

struct SolveArgs {
  std::string file;
  ModelFlags model;
  SearchFlags search;
  bool print_solution = false;
};

int cmd_solve(const SolveArgs& a) {
  validate_heuristic(a.search.heuristic);
  validate_traversal(a.search.traversal);
  InstancePtr inst = load(a.file, a.model.kind);
  ModelPtr model = build(inst.get(), a.model);
  const cbs_solve_options o = solve_options(a.search, a.search.heuristic, a.search.traversal, a.search.seed);
  cbs_result* raw = nullptr;
  check(cbs_solve(model.get(), &o, &raw));
  ResultPtr r(raw);

  std::cout << "instance: " << cbs_instance_name(inst.get()) << " (" << cbs_instance_kind(inst.get()) << ", "
            << cbs_model_num_vars(model.get()) << " variables, " << cbs_model_num_constraints(model.get())
            << " constraints)\n";
  std::cout << "heuristic: " << a.search.heuristic << ", traversal: " << a.search.traversal << " "
            << params_of(a.search.traversal, a.search) << ", seed: " << a.search.seed << "\n";
  int var = 0, value = 0, assign = 0;
  if (cbs_result_first_decision(r.get(), &var, &value, &assign)) {
    std::cout << "first decision: x" << var << (assign ? " = " : " != ") << value << "\n";
  }
  std::cout << "status: " << cbs_result_status(r.get()) << "\n";
  std::cout << "backtracks: " << cbs_result_backtracks(r.get()) << "\n";
  std::cout << "nodes: " << cbs_result_nodes(r.get()) << "\n";
  std::cout << "time_ms: " << std::fixed << std::setprecision(3) << cbs_result_time_ms(r.get()) << "\n";
  std::cout.unsetf(std::ios::floatfield);
  if (a.search.traversal == "restart") std::cout << "restarts: " << cbs_result_restarts(r.get()) << "\n";
  if (a.search.traversal == "lds") std::cout << "waves: " << cbs_result_waves(r.get()) << "\n";

  const cbs_outcome outcome = cbs_result_outcome(r.get());
  if (outcome == CBS_SAT) {
    std::size_t n = 0;
    const int* sol = cbs_result_solution(r.get(), &n);
    int ok = 0;
    check(cbs_instance_check(inst.get(), sol, n, &ok));
    std::cout << "verified: " << (ok ? "yes" : "NO") << "\n";
    if (a.print_solution) {
      std::cout << "solution:";
      for (std::size_t i = 0; i < n; ++i) std::cout << ' ' << sol[i];
      std::cout << "\n";
    }
    if (!ok) return kExitFailure;
  }
  switch (outcome) {
    case CBS_SAT: return kExitSat;
    case CBS_UNSAT: return kExitUnsat;
    case CBS_TIMEOUT: return kExitTimeout;
  }
  return kExitTimeout;
}

// ---- densities ----

std::vector<double> ranks(const std::vector<double>& v) {
  std::vector<std::size_t> idx(v.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return v[a] < v[b]; });
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < idx.size();) {
    std::size_t j = i;
    while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = 0.5 * static_cast<double>(i + j) + 1.0;
    i = j + 1;
  }
  return r;
}

// Spearman rank correlation; NaN when either side is constant.
double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ra = ranks(a), rb = ranks(b);
  const double n = static_cast<double>(a.size());
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += ra[i] / n;
    mb += rb[i] / n;
  }
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (ra[i] - ma) * (rb[i] - mb);
    saa += (ra[i] - ma) * (ra[i] - ma);
    sbb += (rb[i] - mb) * (rb[i] - mb);
  }
  if (saa == 0 || sbb == 0) return std::nan("");
  return sab / std::sqrt(saa * sbb);
}

struct DensityArgs {
  std::string file;
  ModelFlags model;
  bool exact = false;
  std::uint64_t cap = 1000000;
};

int cmd_densities(const DensityArgs& a) {
  InstancePtr inst = load(a.file, a.model.kind);
  ModelPtr model = build(inst.get(), a.model);
  int consistent = 0;
  check(cbs_model_propagate(model.get(), &consistent));
  if (!consistent) {
    std::cout << "root propagation failed: no solution\n";
    return kExitUnsat;
  }
  cbs_densities* raw = nullptr;
  check(cbs_model_densities(model.get(), &raw));
  DensitiesPtr d(raw);
  for (std::size_t t = 0; t < cbs_densities_num_tables(d.get()); ++t) {
    int c = 0, exact = 0;
    double log_count = 0;
    std::size_t n = 0;
    check(cbs_densities_table(d.get(), t, &c, &log_count, &exact, &n));
    std::cout << "constraint " << c << " " << cbs_model_constraint_kind(model.get(), c) << ": count "
              << (exact ? "" : "~") << std::setprecision(10) << std::exp(log_count) << "\n";
    ExactPtr ex;
    if (a.exact) {
      cbs_exact* er = nullptr;
      const cbs_status s = cbs_model_exact_table(model.get(), c, a.cap, &er);
      if (s == CBS_ERR_CAP_EXCEEDED) {
        std::cout << "  exact: refused, " << cbs_last_error() << "\n";
      } else {
        check(s);
        ex.reset(er);
        std::cout << "  exact count " << cbs_exact_count(ex.get()) << "\n";
      }
    }
    std::map<std::pair<int, int>, std::size_t> exact_row;
    if (ex) {
      for (std::size_t i = 0; i < cbs_exact_num_entries(ex.get()); ++i) {
        int x = 0, v = 0;
        check(cbs_exact_entry(ex.get(), i, &x, &v, nullptr, nullptr, nullptr));
        exact_row[{x, v}] = i;
      }
    }
    std::vector<double> est, truth;
    for (std::size_t i = 0; i < n; ++i) {
      int x = 0, v = 0;
      double p = 0;
      check(cbs_densities_entry(d.get(), t, i, &x, &v, &p));
      std::cout << "  x" << x << "=" << v << "  " << std::fixed << std::setprecision(6) << p;
      std::cout.unsetf(std::ios::floatfield);
      if (auto it = exact_row.find({x, v}); it != exact_row.end()) {
        const char *num = nullptr, *den = nullptr;
        double q = 0;
        check(cbs_exact_entry(ex.get(), it->second, nullptr, nullptr, &num, &den, &q));
        std::cout << "  exact " << num << "/" << den << " = " << std::fixed << std::setprecision(6) << q;
        std::cout.unsetf(std::ios::floatfield);
        est.push_back(p);
        truth.push_back(q);
      }
      std::cout << "\n";
    }
    if (est.size() >= 2) {
      const double rho = spearman(est, truth);
      std::cout << "  spearman " << (std::isnan(rho) ? std::string("n/a") : std::to_string(rho)) << "\n";
    }
  }
  return 0;
}

// ---- count ----

struct CountArgs {
  std::string file;
  ModelFlags model;
  bool exact = false;
  std::uint64_t cap = 1000000;
};

int cmd_count(const CountArgs& a) {
  InstancePtr inst = load(a.file, a.model.kind);
  ModelPtr model = build(inst.get(), a.model);
  int consistent = 0;
  check(cbs_model_propagate(model.get(), &consistent));
  if (consistent) {
    cbs_densities* raw = nullptr;
    check(cbs_model_densities(model.get(), &raw));
    DensitiesPtr d(raw);
    for (std::size_t t = 0; t < cbs_densities_num_tables(d.get()); ++t) {
      int c = 0, exact = 0;
      double log_count = 0;
      check(cbs_densities_table(d.get(), t, &c, &log_count, &exact, nullptr));
      std::cout << "constraint " << c << " " << cbs_model_constraint_kind(model.get(), c) << ": "
                << (exact ? "" : "~") << std::setprecision(10) << std::exp(log_count);
      if (a.exact) {
        cbs_exact* er = nullptr;
        const cbs_status s = cbs_model_exact_table(model.get(), c, a.cap, &er);
        if (s == CBS_ERR_CAP_EXCEEDED) {
          std::cout << "  exact: refused";
        } else {
          check(s);
          ExactPtr ex(er);
          std::cout << "  exact " << cbs_exact_count(ex.get());
        }
      }
      std::cout << "\n";
    }
  }
  if (a.exact) {
    int sat = 0;
    OwnedString count;
    const cbs_status s = cbs_model_exact_solve(model.get(), a.cap, &sat, &count.s);
    if (s == CBS_ERR_CAP_EXCEEDED) {
      std::cout << "model solutions: refused, " << cbs_last_error() << "\n";
      return kExitFailure;
    }
    check(s);
    std::cout << "model solutions: " << count.s << "\n";
    return sat ? kExitSat : kExitUnsat;
  }
  return consistent ? kExitSat : kExitUnsat;
}

// ---- generate ----

struct GenerateArgs {
  std::string kind;
  int count = 1;
  std::uint64_t seed = 0;
  std::string out;
  cbs_generate_params params{};
};

int cmd_generate(const GenerateArgs& a) {
  if (a.out.empty() && a.count != 1) throw Failure{kExitUsage, "--out is required with --count > 1"};
  if (!a.out.empty()) fs::create_directories(a.out);
  for (int i = 0; i < a.count; ++i) {
    cbs_instance* raw = nullptr;
    check(cbs_instance_generate(a.kind.c_str(), &a.params, a.seed + static_cast<std::uint64_t>(i), &raw));
    InstancePtr inst(raw);
    if (a.out.empty()) {
      OwnedString text;
      check(cbs_instance_write(inst.get(), &text.s));
      std::cout << text.s;
    } else {
      const fs::path p = fs::path(a.out) / (std::string(cbs_instance_name(inst.get())) + cbs_instance_extension(inst.get()));
      check(cbs_instance_save(inst.get(), p.string().c_str()));
      std::cout << p.string() << "\n";
    }
  }
  return 0;
}

// ---- bench ----

struct BenchArgs {
  std::vector<std::string> paths;
  ModelFlags model;
  SearchFlags search;
  std::string heuristics = "maxSD";
  std::string traversals = "dfs";
  std::string seeds = "0";
  int jobs = 1;
  std::string out;
  std::string curves;
};

struct Job {
  std::size_t instance;
  std::string heuristic;
  std::string traversal;
  std::uint64_t seed;
};

struct Row {
  std::string status;
  std::uint64_t backtracks = 0;
  double time_ms = 0;
  int restarts = 0;
};

std::vector<std::string> collect_files(const std::vector<std::string>& paths) {
  std::vector<std::string> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> here;
      for (const auto& e : fs::directory_iterator(p)) {
        if (e.is_regular_file()) here.push_back(e.path().string());
      }
      std::sort(here.begin(), here.end());
      files.insert(files.end(), here.begin(), here.end());
    } else if (fs::exists(p)) {
      files.push_back(p);
    } else {
      throw Failure{kExitUsage, "no such file or directory: " + p};
    }
  }
  if (files.empty()) throw Failure{kExitUsage, "no instances found"};
  return files;
}

Row run_job(const cbs_instance* inst, const Job& j, const BenchArgs& a) {
  try {
    ModelPtr model = build(inst, a.model);
    const cbs_solve_options o = solve_options(a.search, j.heuristic, j.traversal, j.seed);
    cbs_result* raw = nullptr;
    check(cbs_solve(model.get(), &o, &raw));
    ResultPtr r(raw);
    Row row{cbs_result_status(r.get()), cbs_result_backtracks(r.get()), cbs_result_time_ms(r.get()),
            cbs_result_restarts(r.get())};
    if (cbs_result_outcome(r.get()) == CBS_SAT) {
      std::size_t n = 0;
      const int* sol = cbs_result_solution(r.get(), &n);
      int ok = 0;
      check(cbs_instance_check(inst, sol, n, &ok));
      if (!ok) row.status = "error";
    }
    return row;
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return Row{"error"};
  }
}

void write_curves(const std::string& path, const std::vector<Job>& jobs, const std::vector<Row>& rows,
                  const BenchArgs& a) {
  std::ofstream out(path);
  if (!out) throw Failure{kExitFailure, "cannot write " + path};
  out << "heuristic,traversal,params,metric,value,solved,total\n";
  std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
  std::vector<std::pair<std::string, std::string>> order;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto key = std::make_pair(jobs[i].heuristic, jobs[i].traversal);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(i);
  }
  for (const auto& key : order) {
    const auto& idx = groups[key];
    std::vector<std::uint64_t> bt;
    std::vector<double> ms;
    for (auto i : idx) {
      if (rows[i].status == "sat" || rows[i].status == "unsat") {
        bt.push_back(rows[i].backtracks);
        ms.push_back(rows[i].time_ms);
      }
    }
    std::sort(bt.begin(), bt.end());
    std::sort(ms.begin(), ms.end());
    const std::string prefix = key.first + "," + key.second + "," + params_of(key.second, a.search) + ",";
    for (std::size_t k = 0; k < bt.size(); ++k) {
      out << prefix << "backtracks," << bt[k] << "," << k + 1 << "," << idx.size() << "\n";
    }
    for (std::size_t k = 0; k < ms.size(); ++k) {
      out << prefix << "time_ms," << std::fixed << std::setprecision(3) << ms[k] << "," << k + 1 << ","
          << idx.size() << "\n";
      out.unsetf(std::ios::floatfield);
    }
  }
}

int cmd_bench(const BenchArgs& a) {
  const auto heuristics = split(a.heuristics, ',');
  const auto traversals = split(a.traversals, ',');
  if (heuristics.empty()) throw Failure{kExitUsage, "no heuristic given"};
  for (const auto& h : heuristics) validate_heuristic(h);
  for (const auto& t : traversals) validate_traversal(t);
  const auto seeds = parse_seeds(a.seeds);
  const auto files = collect_files(a.paths);

  std::vector<InstancePtr> instances;
  std::vector<std::string> names;
  for (const auto& f : files) {
    try {
      instances.push_back(load(f, a.model.kind));
      names.push_back(cbs_instance_name(instances.back().get()));
    } catch (const Failure& e) {
      std::cerr << "error: " << e.message << "\n";
      instances.emplace_back();
      names.push_back(fs::path(f).stem().string());
    }
  }

  std::vector<Job> jobs;
  for (std::size_t i = 0; i < files.size(); ++i) {
    for (const auto& h : heuristics) {
      for (const auto& t : traversals) {
        const bool randomized = cbs_heuristic_is_randomized(h.c_str()) == 1 || t == "restart";
        for (std::size_t s = 0; s < (randomized ? seeds.size() : 1); ++s) jobs.push_back({i, h, t, seeds[s]});
      }
    }
  }

  std::ofstream file_out;
  if (!a.out.empty()) {
    file_out.open(a.out);
    if (!file_out) throw Failure{kExitFailure, "cannot write " + a.out};
  }
  std::ostream& out = a.out.empty() ? std::cout : file_out;
  out << "instance,heuristic,traversal,params,seed,status,backtracks,time_ms,restarts\n";

  std::vector<Row> rows(jobs.size());
  std::vector<char> done(jobs.size(), 0);
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= jobs.size()) return;
      const auto& inst = instances[jobs[k].instance];
      Row row = inst ? run_job(inst.get(), jobs[k], a) : Row{"error"};
      {
        std::lock_guard<std::mutex> lock(mu);
        rows[k] = std::move(row);
        done[k] = 1;
      }
      cv.notify_one();
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = std::max(1, std::min<int>(a.jobs, static_cast<int>(jobs.size())));
  for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);

  // Rows are written in job order by this thread alone.
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    std::unique_lock<std::mutex> lock(mu);
    cv.wait(lock, [&] { return done[k] != 0; });
    const Row& r = rows[k];
    const Job& j = jobs[k];
    out << csv_field(names[j.instance]) << ',' << j.heuristic << ',' << j.traversal << ','
        << params_of(j.traversal, a.search) << ',' << j.seed << ',' << r.status << ',' << r.backtracks << ','
        << std::fixed << std::setprecision(3) << r.time_ms << ',' << r.restarts << '\n';
    out.unsetf(std::ios::floatfield);
    out.flush();
  }
  for (auto& t : pool) t.join();

  if (!a.curves.empty()) write_curves(a.curves, jobs, rows, a);

  std::map<std::string, std::pair<int, int>> solved;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    auto& s = solved[jobs[k].heuristic + "/" + jobs[k].traversal];
    ++s.second;
    if (rows[k].status == "sat" || rows[k].status == "unsat") ++s.first;
  }
  for (const auto& [config, s] : solved) std::cerr << config << ": solved " << s.first << "/" << s.second << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counting-based search for constraint satisfaction problems"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cbs_version()));

  SolveArgs solve;
  auto* s = app.add_subcommand("solve", "Solve one instance");
  s->add_option("file", solve.file, "Instance file")->required();
  add_model_flags(s, solve.model);
  add_search_flags(s, solve.search, true);
  s->add_option("--traversal", solve.search.traversal, "dfs, restart or lds");
  s->add_option("--seed", solve.search.seed, "Random seed");
  s->add_flag("--print-solution", solve.print_solution, "Print the solution values");

  DensityArgs dens;
  auto* d = app.add_subcommand("densities", "Print solution densities after root propagation");
  d->add_option("file", dens.file, "Instance file")->required();
  add_model_flags(d, dens.model);
  d->add_flag("--exact", dens.exact, "Print the exhaustive densities beside the estimates");
  d->add_option("--cap", dens.cap, "Largest tuple count enumerated by --exact");

  CountArgs count;
  auto* c = app.add_subcommand("count", "Print solution counts");
  c->add_option("file", count.file, "Instance file")->required();
  add_model_flags(c, count.model);
  c->add_flag("--exact", count.exact, "Count exhaustively");
  c->add_option("--cap", count.cap, "Largest tuple count enumerated by --exact");

  GenerateArgs gen;
  cbs_generate_params_default(&gen.params);
  bool balanced = false;
  auto* g = app.add_subcommand("generate", "Generate benchmark instances");
  g->add_option("kind", gen.kind, "Problem kind")->required();
  g->add_option("--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
  g->add_option("--seed", gen.seed, "Seed of the first instance");
  g->add_option("--out", gen.out, "Output directory (default: standard output)");
  g->add_option("-n,--n", gen.params.n, "Order, width, employees or teams");
  g->add_option("-m,--m", gen.params.m, "Constraints, rows or days");
  g->add_option("--holes", gen.params.holes, "Fraction of empty cells (qwh)")->check(CLI::Range(0.0, 1.0));
  g->add_option("--prefill", gen.params.prefill, "Fraction of given cells (magic)")->check(CLI::Range(0.0, 1.0));
  g->add_option("--density", gen.params.density, "Filled fraction (nonogram)")->check(CLI::Range(0.0, 1.0));
  g->add_option("--preset", gen.params.preset, "Preset fraction (rostering)")->check(CLI::Range(0.0, 1.0));
  g->add_option("--removed", gen.params.removed, "Removed value fraction (rostering)")->check(CLI::Range(0.0, 1.0));
  g->add_option("--forbidden", gen.params.forbidden, "Forbidden shifts (kprostering)");
  g->add_flag("--balanced", balanced, "Balanced venues (ttppv)");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run a benchmark sweep and write CSV");
  b->add_option("paths", bench.paths, "Instance files or directories")->required();
  add_model_flags(b, bench.model);
  add_search_flags(b, bench.search, false);
  b->add_option("--heuristic,--heuristics", bench.heuristics, "Comma separated heuristics");
  b->add_option("--traversal,--traversals", bench.traversals, "Comma separated traversals");
  b->add_option("--seeds,--seed", bench.seeds, "Seeds for randomized runs, e.g. 1-10 or 3,5");
  b->add_option("--jobs", bench.jobs, "Concurrent runs")->check(CLI::PositiveNumber);
  b->add_option("--out", bench.out, "CSV file (default: standard output)");
  b->add_option("--curves", bench.curves, "Cumulative solved curves CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*s) return cmd_solve(solve);
    if (*d) return cmd_densities(dens);
    if (*c) return cmd_count(count);
    if (*g) {
      gen.params.balanced = balanced ? 1 : 0;
      return cmd_generate(gen);
    }
    if (*b) return cmd_bench(bench);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}
