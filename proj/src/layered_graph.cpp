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

#include "cbs/layered_graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cbs/density.hpp"

namespace cbs {

LayeredGraph::LayeredGraph(int arc_layers) : vertices_(arc_layers + 1, 0), arcs_(arc_layers) {}

bool LayeredGraph::prune() {
  const int k = arc_layers();
  std::vector<std::vector<char>> fwd(k + 1), bwd(k + 1);
  for (int i = 0; i <= k; ++i) {
    fwd[i].assign(vertices_[i], 0);
    bwd[i].assign(vertices_[i], 0);
  }
  std::fill(fwd[0].begin(), fwd[0].end(), 1);
  for (int i = 0; i < k; ++i) {
    for (const Arc& a : arcs_[i]) {
      if (fwd[i][a.from]) fwd[i + 1][a.to] = 1;
    }
  }
  std::fill(bwd[k].begin(), bwd[k].end(), 1);
  for (int i = k - 1; i >= 0; --i) {
    for (const Arc& a : arcs_[i]) {
      if (bwd[i + 1][a.to]) bwd[i][a.from] = 1;
    }
  }
  for (int i = 0; i < k; ++i) {
    auto& layer = arcs_[i];
    layer.erase(std::remove_if(layer.begin(), layer.end(),
                               [&](const Arc& a) { return !(fwd[i][a.from] && bwd[i + 1][a.to]); }),
                layer.end());
    if (layer.empty()) return false;
  }
  return k > 0 || vertices_[0] > 0;
}

std::vector<Value> LayeredGraph::supported_values(int layer) const {
  std::vector<Value> out;
  out.reserve(arcs_[layer].size());
  for (const Arc& a : arcs_[layer]) out.push_back(a.value);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LayeredGraph::PathCounts LayeredGraph::count_paths() const {
  const int k = arc_layers();
  PathCounts pc;
  std::vector<std::vector<std::uint64_t>> in(k + 1), out(k + 1);
  for (int i = 0; i <= k; ++i) {
    in[i].assign(vertices_[i], 0);
    out[i].assign(vertices_[i], 0);
  }
  std::fill(in[0].begin(), in[0].end(), 1);
  std::fill(out[k].begin(), out[k].end(), 1);
  bool overflow = false;
  for (int i = 0; i < k && !overflow; ++i) {
    for (const Arc& a : arcs_[i]) {
      if (__builtin_add_overflow(in[i + 1][a.to], in[i][a.from], &in[i + 1][a.to])) overflow = true;
    }
  }
  for (int i = k - 1; i >= 0 && !overflow; --i) {
    for (const Arc& a : arcs_[i]) {
      if (__builtin_add_overflow(out[i][a.from], out[i + 1][a.to], &out[i][a.from])) overflow = true;
    }
  }
  std::uint64_t total = 0;
  if (!overflow) {
    for (std::uint64_t c : out[0]) {
      if (__builtin_add_overflow(total, c, &total)) overflow = true;
    }
  }
  pc.overflow = overflow;
  pc.log_in.resize(k + 1);
  pc.log_out.resize(k + 1);
  pc.densities.resize(k);

  if (!overflow) {
    pc.total = total;
    pc.log_total = total == 0 ? kLogZero : std::log(static_cast<double>(total));
    for (int i = 0; i <= k; ++i) {
      pc.log_in[i].resize(vertices_[i]);
      pc.log_out[i].resize(vertices_[i]);
      for (int v = 0; v < vertices_[i]; ++v) {
        pc.log_in[i][v] = in[i][v] == 0 ? kLogZero : std::log(static_cast<double>(in[i][v]));
        pc.log_out[i][v] = out[i][v] == 0 ? kLogZero : std::log(static_cast<double>(out[i][v]));
      }
    }
    if (total == 0) return pc;
    for (int i = 0; i < k; ++i) {
      std::map<Value, unsigned __int128> mass;
      for (const Arc& a : arcs_[i]) {
        mass[a.value] += static_cast<unsigned __int128>(in[i][a.from]) * out[i + 1][a.to];
      }
      for (const auto& [v, m] : mass) {
        pc.densities[i].emplace_back(v, static_cast<double>(m) / static_cast<double>(total));
      }
    }
    return pc;
  }

  for (int i = 0; i <= k; ++i) {
    pc.log_in[i].assign(vertices_[i], kLogZero);
    pc.log_out[i].assign(vertices_[i], kLogZero);
  }
  std::fill(pc.log_in[0].begin(), pc.log_in[0].end(), 0.0);
  std::fill(pc.log_out[k].begin(), pc.log_out[k].end(), 0.0);
  for (int i = 0; i < k; ++i) {
    for (const Arc& a : arcs_[i]) pc.log_in[i + 1][a.to] = log_add(pc.log_in[i + 1][a.to], pc.log_in[i][a.from]);
  }
  for (int i = k - 1; i >= 0; --i) {
    for (const Arc& a : arcs_[i]) pc.log_out[i][a.from] = log_add(pc.log_out[i][a.from], pc.log_out[i + 1][a.to]);
  }
  double log_total = kLogZero;
  for (double c : pc.log_out[0]) log_total = log_add(log_total, c);
  pc.log_total = log_total;
  for (int i = 0; i < k; ++i) {
    std::map<Value, double> mass;
    for (const Arc& a : arcs_[i]) {
      auto [it, fresh] = mass.emplace(a.value, kLogZero);
      it->second = log_add(it->second, pc.log_in[i][a.from] + pc.log_out[i + 1][a.to]);
    }
    for (const auto& [v, m] : mass) pc.densities[i].emplace_back(v, std::exp(m - log_total));
  }
  return pc;
}

}  // namespace cbs
