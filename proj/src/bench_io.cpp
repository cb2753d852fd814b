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

#include <array>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "cbs/bench.hpp"

namespace cbs {

namespace {

struct NamedProblem {
  std::string_view name;
  ProblemKind kind;
};

constexpr std::array<NamedProblem, 9> kProblems = {{
    {"qwh", ProblemKind::kQwh},
    {"magic", ProblemKind::kMagic},
    {"nonogram", ProblemKind::kNonogram},
    {"multiknap", ProblemKind::kMultiknap},
    {"marketsplit", ProblemKind::kMarketsplit},
    {"rostering", ProblemKind::kRostering},
    {"kprostering", ProblemKind::kKpRostering},
    {"ttppv", ProblemKind::kTtppv},
    {"csp", ProblemKind::kCsp},
}};

struct Line {
  int number;
  std::vector<std::string> tokens;
};

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorKind::kParse, "line " + std::to_string(line) + ": " + msg);
}

class Reader {
 public:
  Reader(std::string_view text, Instance& inst) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (raw[first] == '#') {
        header(raw.substr(first + 1), inst, number);
        continue;
      }
      Line line{number, {}};
      std::istringstream words(raw);
      std::string w;
      while (words >> w) line.tokens.push_back(w);
      lines_.push_back(std::move(line));
    }
  }

  bool done() const { return pos_ >= lines_.size(); }
  int line_number() const { return done() ? (lines_.empty() ? 0 : lines_.back().number) : lines_[pos_].number; }

  const Line& next(const std::string& what) {
    if (done()) fail(line_number(), "unexpected end of file, expected " + what);
    return lines_[pos_++];
  }

  // The next line as exactly `count` integers (count < 0: any number).
  std::vector<std::int64_t> ints(const std::string& what, int count) {
    const Line& l = next(what);
    if (count >= 0 && static_cast<int>(l.tokens.size()) != count) {
      fail(l.number, "expected " + std::to_string(count) + " values for " + what + ", found " +
                         std::to_string(l.tokens.size()));
    }
    std::vector<std::int64_t> out;
    for (const auto& t : l.tokens) out.push_back(to_int(t, l.number, what));
    return out;
  }

  void expect_end() const {
    if (!done()) fail(lines_[pos_].number, "unexpected trailing content");
  }

  static std::int64_t to_int(const std::string& t, int line, const std::string& what) {
    std::int64_t v = 0;
    const auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) fail(line, "bad integer '" + t + "' in " + what);
    return v;
  }

 private:
  static void header(const std::string& body, Instance& inst, int line) {
    std::istringstream in(body);
    std::string key, value;
    in >> key;
    std::getline(in >> std::ws, value);
    if (key == "name:") {
      inst.name = value;
    } else if (key == "status:") {
      if (value == "sat") {
        inst.known_sat = true;
      } else if (value == "unsat") {
        inst.known_sat = false;
      } else if (value != "unknown") {
        fail(line, "status must be sat, unsat or unknown");
      }
    }
  }

  std::vector<Line> lines_;
  std::size_t pos_ = 0;
};

void check_range(std::int64_t v, std::int64_t lo, std::int64_t hi, int line, const std::string& what) {
  if (v < lo || v > hi) {
    fail(line, what + " " + std::to_string(v) + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

void expect_tag(Reader& r, const std::string& tag, int count, std::vector<std::int64_t>& dims) {
  const Line& l = r.next(tag + " header");
  if (l.tokens.empty() || l.tokens[0] != tag) fail(l.number, "expected '" + tag + "' header");
  if (static_cast<int>(l.tokens.size()) != count + 1) {
    fail(l.number, "'" + tag + "' header needs " + std::to_string(count) + " numbers");
  }
  for (int i = 1; i <= count; ++i) dims.push_back(Reader::to_int(l.tokens[i], l.number, tag + " header"));
}

GridData parse_grid(Reader& r, bool magic) {
  GridData d;
  const int line = r.line_number();
  d.n = static_cast<int>(r.ints("order", 1)[0]);
  check_range(d.n, 1, 1000, line, "order");
  const std::int64_t hi = magic ? static_cast<std::int64_t>(d.n) * d.n : d.n;
  for (int i = 0; i < d.n; ++i) {
    const int l = r.line_number();
    for (std::int64_t v : r.ints("grid row " + std::to_string(i + 1), d.n)) {
      check_range(v, 0, hi, l, "cell");
      d.cells.push_back(static_cast<int>(v));
    }
  }
  return d;
}

NonogramData parse_nonogram(Reader& r) {
  NonogramData d;
  int line = r.line_number();
  const auto dims = r.ints("rows cols", 2);
  d.rows = static_cast<int>(dims[0]);
  d.cols = static_cast<int>(dims[1]);
  check_range(d.rows, 1, 10000, line, "rows");
  check_range(d.cols, 1, 10000, line, "cols");
  auto clue = [&](int width, const std::string& what) {
    line = r.line_number();
    const auto vals = r.ints(what, -1);
    std::vector<int> out;
    if (vals.size() == 1 && vals[0] == 0) return out;
    std::int64_t need = -1;
    for (std::int64_t v : vals) {
      check_range(v, 1, width, line, "block");
      out.push_back(static_cast<int>(v));
      need += v + 1;
    }
    if (out.empty()) fail(line, "empty clue, write 0");
    if (need > width) fail(line, "clue does not fit in " + std::to_string(width) + " cells");
    return out;
  };
  for (int i = 0; i < d.rows; ++i) d.row_clues.push_back(clue(d.cols, "row clue " + std::to_string(i + 1)));
  for (int i = 0; i < d.cols; ++i) d.col_clues.push_back(clue(d.rows, "column clue " + std::to_string(i + 1)));
  return d;
}

MultiknapData parse_multiknap(Reader& r) {
  MultiknapData d;
  const int line = r.line_number();
  const auto h = r.ints("n m target", 3);
  check_range(h[0], 1, 100000, line, "n");
  check_range(h[1], 0, 100000, line, "m");
  d.n = static_cast<int>(h[0]);
  d.target = h[2];
  d.objective = r.ints("objective", d.n);
  for (int k = 0; k < h[1]; ++k) {
    auto row = r.ints("constraint " + std::to_string(k + 1), d.n + 1);
    d.capacity.push_back(row.back());
    row.pop_back();
    d.weights.push_back(std::move(row));
  }
  return d;
}

MarketsplitData parse_marketsplit(Reader& r) {
  MarketsplitData d;
  const int line = r.line_number();
  const auto h = r.ints("m n", 2);
  check_range(h[0], 1, 100000, line, "m");
  check_range(h[1], 1, 100000, line, "n");
  d.n = static_cast<int>(h[1]);
  for (int k = 0; k < h[0]; ++k) {
    auto row = r.ints("constraint " + std::to_string(k + 1), d.n + 1);
    d.rhs.push_back(row.back());
    row.pop_back();
    d.coeffs.push_back(std::move(row));
  }
  return d;
}

RosteringData parse_rostering(Reader& r) {
  RosteringData d;
  std::vector<std::int64_t> dims;
  int line = r.line_number();
  expect_tag(r, "rostering", 1, dims);
  check_range(dims[0], 2, 1000, line, "n");
  d.n = static_cast<int>(dims[0]);
  for (int i = 0; i < d.n; ++i) {
    line = r.line_number();
    for (std::int64_t v : r.ints("schedule row " + std::to_string(i + 1), d.n)) {
      check_range(v, -1, d.n - 1, line, "preset value");
      d.preset.push_back(static_cast<int>(v));
    }
  }
  dims.clear();
  expect_tag(r, "removed", 1, dims);
  for (std::int64_t k = 0; k < dims[0]; ++k) {
    line = r.line_number();
    const auto t = r.ints("removal", 3);
    check_range(t[0], 0, d.n - 1, line, "employee");
    check_range(t[1], 0, d.n - 1, line, "period");
    check_range(t[2], 0, d.n - 1, line, "value");
    d.removed.push_back({static_cast<int>(t[0]), static_cast<int>(t[1]), static_cast<int>(t[2])});
  }
  return d;
}

KpRosteringData parse_kprostering(Reader& r) {
  KpRosteringData d;
  std::vector<std::int64_t> dims;
  int line = r.line_number();
  expect_tag(r, "kprostering", 3, dims);
  check_range(dims[0], 1, 1000, line, "employees");
  check_range(dims[1], 1, 10000, line, "days");
  check_range(dims[2], dims[0], 1000, line, "tasks");
  d.employees = static_cast<int>(dims[0]);
  d.days = static_cast<int>(dims[1]);
  d.tasks = static_cast<int>(dims[2]);
  for (int e = 0; e < d.employees; ++e) d.cost.push_back(r.ints("costs of employee " + std::to_string(e + 1), d.days));
  d.target = r.ints("targets", d.employees);
  dims.clear();
  expect_tag(r, "forbidden", 1, dims);
  for (std::int64_t k = 0; k < dims[0]; ++k) {
    line = r.line_number();
    const auto t = r.ints("forbidden shift", 3);
    check_range(t[0], 0, d.employees - 1, line, "employee");
    check_range(t[1], 0, d.days - 1, line, "day");
    check_range(t[2], 1, d.tasks, line, "task");
    d.forbidden.push_back({static_cast<int>(t[0]), static_cast<int>(t[1]), static_cast<int>(t[2])});
  }
  return d;
}

TtppvData parse_ttppv(Reader& r) {
  TtppvData d;
  std::vector<std::int64_t> dims;
  int line = r.line_number();
  expect_tag(r, "ttppv", 1, dims);
  check_range(dims[0], 2, 1000, line, "teams");
  if (dims[0] % 2 != 0) fail(line, "the number of teams must be even");
  d.n = static_cast<int>(dims[0]);
  for (int a = 0; a < d.n; ++a) {
    line = r.line_number();
    std::vector<int> row;
    for (std::int64_t v : r.ints("venue row " + std::to_string(a + 1), d.n)) {
      check_range(v, 0, 1, line, "venue");
      row.push_back(static_cast<int>(v));
    }
    d.host.push_back(std::move(row));
  }
  for (int a = 0; a < d.n; ++a) {
    if (d.host[a][a] != 0) fail(line, "venue diagonal must be 0");
    for (int b = a + 1; b < d.n; ++b) {
      if (d.host[a][b] + d.host[b][a] != 1) {
        fail(line, "teams " + std::to_string(a) + " and " + std::to_string(b) + " need exactly one host");
      }
    }
  }
  return d;
}

CspData parse_csp(Reader& r) {
  CspData d;
  const Line& head = r.next("csp header");
  if (head.tokens.size() != 1 || head.tokens[0] != "csp") fail(head.number, "expected 'csp' header");
  while (!r.done()) {
    const Line& l = r.next("statement");
    const std::string& type = l.tokens[0];
    if (type == "var") {
      std::vector<Value> dom;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        const std::string& t = l.tokens[i];
        const auto dots = t.find("..");
        if (dots == std::string::npos) {
          dom.push_back(static_cast<Value>(Reader::to_int(t, l.number, "domain")));
          continue;
        }
        const auto lo = Reader::to_int(t.substr(0, dots), l.number, "domain");
        const auto hi = Reader::to_int(t.substr(dots + 2), l.number, "domain");
        if (hi < lo || hi - lo > 1000000) fail(l.number, "bad range " + t);
        for (auto v = lo; v <= hi; ++v) dom.push_back(static_cast<Value>(v));
      }
      if (dom.empty()) fail(l.number, "empty domain");
      d.domains.push_back(std::move(dom));
      continue;
    }
    CspData::Con c;
    using T = CspData::Con::Type;
    if (type == "alldiff") {
      c.type = T::kAlldiff;
    } else if (type == "symalldiff") {
      c.type = T::kSymAlldiff;
    } else if (type == "gcc") {
      c.type = T::kGcc;
    } else if (type == "knapsack") {
      c.type = T::kKnapsack;
    } else if (type == "regular") {
      c.type = T::kRegular;
    } else {
      fail(l.number, "unknown statement '" + type + "'");
    }
    std::map<std::string, std::vector<std::int64_t>> fields;
    std::string key;
    for (std::size_t i = 1; i < l.tokens.size(); ++i) {
      const std::string& t = l.tokens[i];
      if (std::isalpha(static_cast<unsigned char>(t[0]))) {
        if (key == "level") {
          try {
            c.level = consistency_from_string(t);
          } catch (const Error& e) {
            fail(l.number, e.what());
          }
          key.clear();
          continue;
        }
        key = t;
        fields[key];
        continue;
      }
      if (key.empty()) fail(l.number, "value '" + t + "' without a field name");
      fields[key].push_back(Reader::to_int(t, l.number, key));
    }
    auto need = [&](const std::string& k) -> const std::vector<std::int64_t>& {
      auto it = fields.find(k);
      if (it == fields.end()) fail(l.number, type + " needs '" + k + "'");
      return it->second;
    };
    for (std::int64_t v : need("scope")) {
      if (v < 0 || v >= static_cast<std::int64_t>(d.domains.size())) {
        fail(l.number, "scope variable " + std::to_string(v) + " is not declared");
      }
      c.scope.push_back(static_cast<VarId>(v));
    }
    auto one = [&](const std::string& k) {
      const auto& v = need(k);
      if (v.size() != 1) fail(l.number, "'" + k + "' takes one value");
      return v[0];
    };
    switch (c.type) {
      case T::kAlldiff:
        break;
      case T::kSymAlldiff:
        c.offset = static_cast<Value>(one("offset"));
        break;
      case T::kGcc: {
        const auto& b = need("bounds");
        if (b.size() % 3 != 0) fail(l.number, "gcc bounds come in value lower upper triples");
        for (std::size_t i = 0; i < b.size(); i += 3) {
          c.bounds.push_back({static_cast<int>(b[i]), static_cast<int>(b[i + 1]), static_cast<int>(b[i + 2])});
        }
        break;
      }
      case T::kKnapsack:
        c.lower = one("lower");
        c.upper = one("upper");
        c.coeffs = need("coeffs");
        if (c.coeffs.size() != c.scope.size()) fail(l.number, "knapsack needs one coefficient per variable");
        break;
      case T::kRegular: {
        c.states = static_cast<int>(one("states"));
        c.initial = static_cast<int>(one("initial"));
        for (auto q : need("accept")) c.accepting.push_back(static_cast<int>(q));
        const auto& t = need("trans");
        if (t.size() % 3 != 0) fail(l.number, "transitions come in from value to triples");
        for (std::size_t i = 0; i < t.size(); i += 3) {
          c.transitions.push_back({static_cast<int>(t[i]), static_cast<int>(t[i + 1]), static_cast<int>(t[i + 2])});
        }
        if (c.states < 1) fail(l.number, "regular needs at least one state");
        for (int q : c.accepting) check_range(q, 0, c.states - 1, l.number, "state");
        for (const auto& tr : c.transitions) {
          check_range(tr[0], 0, c.states - 1, l.number, "state");
          check_range(tr[2], 0, c.states - 1, l.number, "state");
        }
        check_range(c.initial, 0, c.states - 1, l.number, "state");
        break;
      }
    }
    d.constraints.push_back(std::move(c));
  }
  return d;
}

template <typename T>
void put_row(std::ostringstream& out, const std::vector<T>& xs) {
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
  out << '\n';
}

void put_clue(std::ostringstream& out, const std::vector<int>& clue) {
  if (clue.empty()) {
    out << "0\n";
  } else {
    put_row(out, clue);
  }
}

void write_csp(std::ostringstream& out, const CspData& d) {
  out << "csp\n";
  for (const auto& dom : d.domains) {
    out << "var";
    for (Value v : dom) out << ' ' << v;
    out << '\n';
  }
  using T = CspData::Con::Type;
  for (const auto& c : d.constraints) {
    static const char* names[] = {"alldiff", "symalldiff", "gcc", "knapsack", "regular"};
    out << names[static_cast<int>(c.type)];
    if (c.level) out << " level " << to_string(*c.level);
    if (c.type == T::kSymAlldiff) out << " offset " << c.offset;
    if (c.type == T::kKnapsack) {
      out << " lower " << c.lower << " upper " << c.upper << " coeffs";
      for (auto k : c.coeffs) out << ' ' << k;
    }
    if (c.type == T::kRegular) {
      out << " states " << c.states << " initial " << c.initial << " accept";
      for (int q : c.accepting) out << ' ' << q;
    }
    out << " scope";
    for (VarId x : c.scope) out << ' ' << x;
    if (c.type == T::kGcc) {
      out << " bounds";
      for (const auto& b : c.bounds) out << ' ' << b[0] << ' ' << b[1] << ' ' << b[2];
    }
    if (c.type == T::kRegular) {
      out << " trans";
      for (const auto& t : c.transitions) out << ' ' << t[0] << ' ' << t[1] << ' ' << t[2];
    }
    out << '\n';
  }
}

}  // namespace

std::string_view to_string(ProblemKind k) {
  for (const auto& p : kProblems) {
    if (p.kind == k) return p.name;
  }
  return "csp";
}

ProblemKind problem_kind_from_string(std::string_view name) {
  std::string valid;
  for (const auto& p : kProblems) {
    if (p.name == name) return p.kind;
    if (!valid.empty()) valid += ", ";
    valid += p.name;
  }
  throw Error(ErrorKind::kUnknownName, "unknown problem kind '" + std::string(name) + "' (valid: " + valid + ")");
}

std::optional<ProblemKind> problem_kind_from_path(std::string_view path) {
  const auto dot = path.rfind('.');
  const auto slash = path.find_last_of("/\\");
  if (dot == std::string_view::npos || (slash != std::string_view::npos && dot < slash)) return std::nullopt;
  const std::string_view ext = path.substr(dot + 1);
  for (const auto& p : kProblems) {
    if (p.name == ext) return p.kind;
  }
  return std::nullopt;
}

std::string file_extension(ProblemKind kind) { return "." + std::string(to_string(kind)); }

Instance parse_instance(std::string_view text, ProblemKind kind, std::string name) {
  Instance inst;
  inst.kind = kind;
  inst.name = std::move(name);
  Reader r(text, inst);
  switch (kind) {
    case ProblemKind::kQwh:
      inst.data = parse_grid(r, false);
      break;
    case ProblemKind::kMagic:
      inst.data = parse_grid(r, true);
      break;
    case ProblemKind::kNonogram:
      inst.data = parse_nonogram(r);
      break;
    case ProblemKind::kMultiknap:
      inst.data = parse_multiknap(r);
      break;
    case ProblemKind::kMarketsplit:
      inst.data = parse_marketsplit(r);
      break;
    case ProblemKind::kRostering:
      inst.data = parse_rostering(r);
      break;
    case ProblemKind::kKpRostering:
      inst.data = parse_kprostering(r);
      break;
    case ProblemKind::kTtppv:
      inst.data = parse_ttppv(r);
      break;
    case ProblemKind::kCsp:
      inst.data = parse_csp(r);
      break;
  }
  r.expect_end();
  return inst;
}

Instance read_instance(const std::string& path, std::optional<ProblemKind> kind) {
  if (!kind) kind = problem_kind_from_path(path);
  if (!kind) throw Error(ErrorKind::kInvalidArgument, "cannot tell the problem kind of '" + path + "' from its extension");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string stem = path.substr(path.find_last_of("/\\") == std::string::npos ? 0 : path.find_last_of("/\\") + 1);
  stem = stem.substr(0, stem.rfind('.'));
  try {
    Instance inst = parse_instance(buf.str(), *kind, stem);
    if (inst.name.empty()) inst.name = stem;
    return inst;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) throw Error(ErrorKind::kParse, path + ": " + e.what());
    throw;
  }
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  if (!inst.name.empty()) out << "# name: " << inst.name << '\n';
  if (inst.known_sat) out << "# status: " << (*inst.known_sat ? "sat" : "unsat") << '\n';
  switch (inst.kind) {
    case ProblemKind::kQwh:
    case ProblemKind::kMagic: {
      const auto& d = std::get<GridData>(inst.data);
      out << d.n << '\n';
      for (int r = 0; r < d.n; ++r) {
        put_row(out, std::vector<int>(d.cells.begin() + r * d.n, d.cells.begin() + (r + 1) * d.n));
      }
      break;
    }
    case ProblemKind::kNonogram: {
      const auto& d = std::get<NonogramData>(inst.data);
      out << d.rows << ' ' << d.cols << '\n';
      for (const auto& c : d.row_clues) put_clue(out, c);
      for (const auto& c : d.col_clues) put_clue(out, c);
      break;
    }
    case ProblemKind::kMultiknap: {
      const auto& d = std::get<MultiknapData>(inst.data);
      out << d.n << ' ' << d.weights.size() << ' ' << d.target << '\n';
      put_row(out, d.objective);
      for (std::size_t k = 0; k < d.weights.size(); ++k) {
        auto row = d.weights[k];
        row.push_back(d.capacity[k]);
        put_row(out, row);
      }
      break;
    }
    case ProblemKind::kMarketsplit: {
      const auto& d = std::get<MarketsplitData>(inst.data);
      out << d.coeffs.size() << ' ' << d.n << '\n';
      for (std::size_t k = 0; k < d.coeffs.size(); ++k) {
        auto row = d.coeffs[k];
        row.push_back(d.rhs[k]);
        put_row(out, row);
      }
      break;
    }
    case ProblemKind::kRostering: {
      const auto& d = std::get<RosteringData>(inst.data);
      out << "rostering " << d.n << '\n';
      for (int r = 0; r < d.n; ++r) {
        put_row(out, std::vector<int>(d.preset.begin() + r * d.n, d.preset.begin() + (r + 1) * d.n));
      }
      out << "removed " << d.removed.size() << '\n';
      for (const auto& x : d.removed) out << x.employee << ' ' << x.period << ' ' << x.value << '\n';
      break;
    }
    case ProblemKind::kKpRostering: {
      const auto& d = std::get<KpRosteringData>(inst.data);
      out << "kprostering " << d.employees << ' ' << d.days << ' ' << d.tasks << '\n';
      for (const auto& row : d.cost) put_row(out, row);
      put_row(out, d.target);
      out << "forbidden " << d.forbidden.size() << '\n';
      for (const auto& f : d.forbidden) out << f.employee << ' ' << f.day << ' ' << f.task << '\n';
      break;
    }
    case ProblemKind::kTtppv: {
      const auto& d = std::get<TtppvData>(inst.data);
      out << "ttppv " << d.n << '\n';
      for (const auto& row : d.host) put_row(out, row);
      break;
    }
    case ProblemKind::kCsp:
      write_csp(out, std::get<CspData>(inst.data));
      break;
  }
  return out.str();
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::kIo, "cannot write '" + path + "'");
  out << write_instance(inst);
  if (!out) throw Error(ErrorKind::kIo, "write to '" + path + "' failed");
}

}  // namespace cbs
