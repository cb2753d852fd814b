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

#ifndef CBS_BENCH_HPP
#define CBS_BENCH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cbs/engine.hpp"
#include "cbs/knapsack.hpp"
#include "cbs/regular.hpp"

namespace cbs {

enum class ProblemKind { kQwh, kMagic, kNonogram, kMultiknap, kMarketsplit, kRostering, kKpRostering, kTtppv, kCsp };

std::string_view to_string(ProblemKind k);
ProblemKind problem_kind_from_string(std::string_view name);
// Kind implied by a file name's extension (".qwh", ".nonogram", ...).
std::optional<ProblemKind> problem_kind_from_path(std::string_view path);

// Latin square or magic square with 0 for empty cells, row-major.
struct GridData {
  int n = 0;
  std::vector<int> cells;
};

struct NonogramData {
  int rows = 0;
  int cols = 0;
  std::vector<std::vector<int>> row_clues;  // empty vector = no block
  std::vector<std::vector<int>> col_clues;
};

// Binary variables; objective fixed to `target`, one capacity row per
// constraint.
struct MultiknapData {
  int n = 0;
  std::int64_t target = 0;
  std::vector<std::int64_t> objective;
  std::vector<std::vector<std::int64_t>> weights;
  std::vector<std::int64_t> capacity;
};

// Binary variables; every row is an equality.
struct MarketsplitData {
  int n = 0;
  std::vector<std::vector<std::int64_t>> coeffs;
  std::vector<std::int64_t> rhs;
};

// n employees by n periods; value 0 is the break, 1..n-1 the tasks.
struct RosteringData {
  int n = 0;
  std::vector<int> preset;  // -1 = free, row-major employee x period
  struct Removal {
    int employee;
    int period;
    int value;
  };
  std::vector<Removal> removed;
};

// employees x days; values are tasks 1..tasks, task k lasting k hours.
struct KpRosteringData {
  int employees = 0;
  int days = 0;
  int tasks = 0;
  std::vector<std::vector<std::int64_t>> cost;  // hourly cost per employee and day
  std::vector<std::int64_t> target;             // total cost per employee
  struct Forbidden {
    int employee;
    int day;
    int task;
  };
  std::vector<Forbidden> forbidden;
};

// host[a][b] == 1 when the game between a and b is played at a's home.
struct TtppvData {
  int n = 0;
  std::vector<std::vector<int>> host;
};

// Generic model: explicit domains and a list of constraints.
struct CspData {
  struct Con {
    enum class Type { kAlldiff, kSymAlldiff, kGcc, kKnapsack, kRegular };
    Type type = Type::kAlldiff;
    std::vector<VarId> scope;
    std::optional<Consistency> level;
    Value offset = 0;                         // symalldiff
    std::vector<std::array<int, 3>> bounds;   // gcc: value lower upper
    std::vector<std::int64_t> coeffs;         // knapsack
    std::int64_t lower = 0;
    std::int64_t upper = 0;
    int states = 0;                           // regular
    int initial = 0;
    std::vector<int> accepting;
    std::vector<std::array<int, 3>> transitions;  // from value to
  };
  std::vector<std::vector<Value>> domains;
  std::vector<Con> constraints;
};

using InstanceData = std::variant<GridData, NonogramData, MultiknapData, MarketsplitData, RosteringData,
                                  KpRosteringData, TtppvData, CspData>;

struct Instance {
  ProblemKind kind = ProblemKind::kCsp;
  std::string name;
  std::optional<bool> known_sat;
  InstanceData data;
};

// Parsing raises Error(kParse) with "line N:" diagnostics.
Instance parse_instance(std::string_view text, ProblemKind kind, std::string name = "");
Instance read_instance(const std::string& path, std::optional<ProblemKind> kind = std::nullopt);
std::string write_instance(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);
std::string file_extension(ProblemKind kind);

struct GenerateParams {
  int n = 0;            // order / width / employees / teams; 0 picks the kind default
  int m = 0;            // constraints (multiknap, marketsplit) or rows (nonogram)
  double holes = 0.42;  // qwh
  double prefill = 0.5;  // magic
  double density = 0.5;  // nonogram picture
  double preset = 0.05;  // rostering
  double removed = 0.0;  // rostering
  int forbidden = 10;    // kprostering
  bool balanced = false;  // ttppv
};

Instance generate_instance(ProblemKind kind, const GenerateParams& params, std::uint64_t seed);

struct ModelOptions {
  Consistency consistency = Consistency::kDomain;
  KnapsackMode knapsack_mode = KnapsackMode::kExact;
  bool exact_moments = false;
};

// Posts the variables and constraints of the instance on an empty engine.
void build_model(const Instance& inst, Engine& engine, const ModelOptions& options = {});

// Checks a full assignment against the instance definition directly,
// without going through the posted constraints.
bool check_solution(const Instance& inst, const std::vector<Value>& solution);

// Automata used by the models.
Automaton nonogram_automaton(const std::vector<int>& clue);
Automaton rostering_automaton(int n);
Automaton ttppv_automaton(const TtppvData& data, int team);

}  // namespace cbs

#endif  // CBS_BENCH_HPP
