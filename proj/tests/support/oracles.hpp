#pragma once

// Brute-force references. Nothing here calls into the library's algorithms;
// only the FlowNetwork / Flow data types are shared.

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "flowtutor/network.hpp"

namespace flowtutor::oracle {

struct EnumeratedCut {
  std::set<NodeId> source_side;
  Capacity capacity = 0;
};

/// Every s-t cut: 2^(|V|-2) subsets of the non-terminal nodes joined to {s}.
inline std::vector<EnumeratedCut> all_cuts(const FlowNetwork& net) {
  std::vector<NodeId> free;
  for (const auto& id : net.nodes) {
    if (id != *net.source && id != *net.sink) free.push_back(id);
  }
  std::vector<EnumeratedCut> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    EnumeratedCut cut;
    cut.source_side.insert(*net.source);
    for (std::size_t i = 0; i < free.size(); ++i) {
      if (mask & (std::uint64_t{1} << i)) cut.source_side.insert(free[i]);
    }
    for (const auto& e : net.edges) {
      if (cut.source_side.count(e.tail) && !cut.source_side.count(e.head)) cut.capacity += e.capacity;
    }
    out.push_back(std::move(cut));
  }
  return out;
}

inline Capacity min_cut_value(const FlowNetwork& net) {
  Capacity best = std::numeric_limits<Capacity>::max();
  for (const auto& c : all_cuts(net)) best = std::min(best, c.capacity);
  return best;
}

inline std::vector<std::set<NodeId>> min_cut_family(const FlowNetwork& net) {
  const Capacity best = min_cut_value(net);
  std::vector<std::set<NodeId>> out;
  for (auto& c : all_cuts(net)) {
    if (c.capacity == best) out.push_back(std::move(c.source_side));
  }
  return out;
}

using ArcMap = std::map<std::pair<NodeId, NodeId>, Capacity>;

/// Residual capacities straight from the definition, zero arcs dropped.
inline ArcMap residual(const FlowNetwork& net, const Flow& flow) {
  ArcMap out;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Edge& e = net.edges[i];
    if (e.capacity - flow.values[i] > 0) out[{e.tail, e.head}] = e.capacity - flow.values[i];
    if (flow.values[i] > 0) out[{e.head, e.tail}] = flow.values[i];
  }
  return out;
}

struct EnumeratedPath {
  std::vector<NodeId> nodes;
  Capacity bottleneck = 0;
};

/// Every simple source-sink path over positive arcs.
inline std::vector<EnumeratedPath> all_paths(const ArcMap& arcs, const NodeId& source,
                                             const NodeId& sink) {
  std::vector<EnumeratedPath> out;
  std::vector<NodeId> stack{source};
  std::vector<Capacity> widths{std::numeric_limits<Capacity>::max()};
  auto dfs = [&](auto&& self) -> void {
    const NodeId at = stack.back();
    if (at == sink) {
      out.push_back({stack, widths.back()});
      return;
    }
    for (const auto& [key, cap] : arcs) {
      if (key.first != at || cap <= 0) continue;
      if (std::find(stack.begin(), stack.end(), key.second) != stack.end()) continue;
      stack.push_back(key.second);
      widths.push_back(std::min(widths.back(), cap));
      self(self);
      stack.pop_back();
      widths.pop_back();
    }
  };
  dfs(dfs);
  return out;
}

inline bool is_valid_flow(const FlowNetwork& net, const Flow& flow) {
  if (flow.values.size() != net.edges.size()) return false;
  std::map<NodeId, Capacity> net_in;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    if (flow.values[i] < 0 || flow.values[i] > net.edges[i].capacity) return false;
    net_in[net.edges[i].head] += flow.values[i];
    net_in[net.edges[i].tail] -= flow.values[i];
  }
  for (const auto& [id, balance] : net_in) {
    if (id != *net.source && id != *net.sink && balance != 0) return false;
  }
  return true;
}

inline Capacity value_at_source(const FlowNetwork& net, const Flow& flow) {
  Capacity v = 0;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    if (net.edges[i].tail == *net.source) v += flow.values[i];
    if (net.edges[i].head == *net.source) v -= flow.values[i];
  }
  return v;
}

}  // namespace flowtutor::oracle
