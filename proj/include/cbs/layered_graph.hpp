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

#ifndef CBS_LAYERED_GRAPH_HPP
#define CBS_LAYERED_GRAPH_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "cbs/types.hpp"

namespace cbs {

// Acyclic layered digraph whose source-to-sink paths correspond to the
// solutions of a regular or knapsack constraint. Vertex layer i sits before
// variable i; arc layer i carries the values of variable i. Every vertex of
// layer 0 is a source and every vertex of the last layer a sink.
class LayeredGraph {
 public:
  struct Arc {
    int from;
    int to;
    Value value;
  };

  explicit LayeredGraph(int arc_layers);

  int arc_layers() const { return static_cast<int>(arcs_.size()); }
  int add_vertex(int layer) { return vertices_[layer]++; }
  int vertices(int layer) const { return vertices_[layer]; }
  void add_arc(int layer, int from, int to, Value value) { arcs_[layer].push_back({from, to, value}); }
  const std::vector<Arc>& arcs(int layer) const { return arcs_[layer]; }

  // Drops arcs that are not on a source-to-sink path. Returns false when no
  // such path exists.
  bool prune();
  // Values on the surviving arcs of one layer, ascending.
  std::vector<Value> supported_values(int layer) const;

  struct PathCounts {
    // True when some count exceeded 64 bits and log-space doubles were used.
    bool overflow = false;
    std::uint64_t total = 0;  // valid when !overflow
    double log_total = kLogZero;
    // log #ip / #op per vertex, indexed [vertex layer][vertex].
    std::vector<std::vector<double>> log_in;
    std::vector<std::vector<double>> log_out;
    // Per arc layer: (value, density) ascending by value.
    std::vector<std::vector<std::pair<Value, double>>> densities;
  };
  PathCounts count_paths() const;

 private:
  std::vector<int> vertices_;
  std::vector<std::vector<Arc>> arcs_;
};

}  // namespace cbs

#endif  // CBS_LAYERED_GRAPH_HPP
