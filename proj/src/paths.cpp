#include "flowtutor/paths.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <queue>
#include <random>
#include <set>

namespace flowtutor {

namespace {

// Portable uniform draw in [0, n); std::uniform_int_distribution differs
// between standard libraries, which would break transcript replay.
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw = 0;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

Path trace_back(const std::map<NodeId, const ResidualArc*>& parent, const NodeId& source,
                const NodeId& sink) {
  Path path;
  for (NodeId at = sink; at != source;) {
    const ResidualArc* arc = parent.at(at);
    path.arcs.push_back(*arc);
    at = arc->tail;
  }
  std::reverse(path.arcs.begin(), path.arcs.end());
  return path;
}

// BFS restricted to arcs with capacity >= min_capacity.
std::optional<Path> bfs_path(const ResidualGraph& residual, const NodeId& source,
                             const NodeId& sink, Capacity min_capacity) {
  if (source == sink) return std::nullopt;
  std::map<NodeId, const ResidualArc*> parent;
  std::set<NodeId> seen{source};
  std::deque<NodeId> queue{source};
  while (!queue.empty()) {
    const NodeId node = queue.front();
    queue.pop_front();
    for (const auto& arc : residual.out_arcs(node)) {
      if (arc.capacity < min_capacity || !seen.insert(arc.head).second) continue;
      parent[arc.head] = &arc;
      if (arc.head == sink) return trace_back(parent, source, sink);
      queue.push_back(arc.head);
    }
  }
  return std::nullopt;
}

}  // namespace

std::string_view strategy_name(const Strategy& s) {
  struct Visitor {
    std::string_view operator()(const strategy::Random&) const { return "random"; }
    std::string_view operator()(const strategy::Shortest&) const { return "shortest"; }
    std::string_view operator()(const strategy::Widest&) const { return "widest"; }
  };
  return std::visit(Visitor{}, s);
}

Strategy parse_strategy(std::string_view name, std::uint64_t seed) {
  if (name == "random") return strategy::Random{seed};
  if (name == "shortest") return strategy::Shortest{};
  if (name == "widest") return strategy::Widest{};
  throw FlowError("unknown strategy '" + std::string(name) + "'");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + (stream + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::optional<Path> find_random_path(const ResidualGraph& residual, const NodeId& source,
                                     const NodeId& sink, std::uint64_t seed) {
  if (source == sink) return std::nullopt;
  std::mt19937_64 rng(seed);
  std::set<NodeId> visited{source};
  std::vector<const ResidualArc*> stack;
  NodeId at = source;
  while (true) {
    std::vector<const ResidualArc*> options;
    for (const auto& arc : residual.out_arcs(at)) {
      if (visited.count(arc.head) == 0) options.push_back(&arc);
    }
    if (options.empty()) {
      if (stack.empty()) return std::nullopt;
      stack.pop_back();
      at = stack.empty() ? source : stack.back()->head;
      continue;
    }
    const ResidualArc* pick = options[uniform_index(rng, options.size())];
    visited.insert(pick->head);
    stack.push_back(pick);
    if (pick->head == sink) break;
    at = pick->head;
  }
  Path path;
  for (const ResidualArc* arc : stack) path.arcs.push_back(*arc);
  return path;
}

std::optional<Path> find_shortest_path(const ResidualGraph& residual, const NodeId& source,
                                       const NodeId& sink) {
  return bfs_path(residual, source, sink, 1);
}

std::optional<Path> find_widest_path(const ResidualGraph& residual, const NodeId& source,
                                     const NodeId& sink) {
  if (source == sink) return std::nullopt;
  // Max-bottleneck Dijkstra for the optimal width, then the canonical
  // fewest-arc path among arcs at least that wide.
  std::map<NodeId, Capacity> width{{source, std::numeric_limits<Capacity>::max()}};
  std::set<NodeId> done;
  std::priority_queue<std::pair<Capacity, NodeId>> frontier;
  frontier.emplace(width[source], source);
  while (!frontier.empty()) {
    auto [w, node] = frontier.top();
    frontier.pop();
    if (!done.insert(node).second) continue;
    if (node == sink) break;
    for (const auto& arc : residual.out_arcs(node)) {
      const Capacity through = std::min(w, arc.capacity);
      auto it = width.find(arc.head);
      if (it == width.end() || through > it->second) {
        width[arc.head] = through;
        frontier.emplace(through, arc.head);
      }
    }
  }
  auto best = width.find(sink);
  if (best == width.end()) return std::nullopt;
  return bfs_path(residual, source, sink, best->second);
}

std::optional<Path> find_path(const ResidualGraph& residual, const NodeId& source,
                              const NodeId& sink, const Strategy& strategy,
                              std::uint64_t iteration) {
  if (const auto* random = std::get_if<strategy::Random>(&strategy)) {
    return find_random_path(residual, source, sink, mix_seed(random->seed, iteration));
  }
  if (std::holds_alternative<strategy::Widest>(strategy)) {
    return find_widest_path(residual, source, sink);
  }
  return find_shortest_path(residual, source, sink);
}

SolveResult solve(const FlowNetwork& net, const Strategy& strategy) {
  if (auto violations = validate_network(net); !violations.empty()) {
    throw FlowError("invalid network: " + violations.front().message);
  }
  const NodeId& source = net.source_id();
  const NodeId& sink = net.sink_id();
  SolveResult result;
  result.max_flow = Flow::zero(net);
  while (true) {
    const ResidualGraph residual = residual_graph(net, result.max_flow);
    auto path = find_path(residual, source, sink, strategy, result.iterations);
    if (!path) break;
    const Capacity amount = bottleneck(*path).value;
    for (const auto& arc : path->arcs) {
      result.max_flow.values[arc.origin] += arc.kind == ArcKind::kForward ? amount : -amount;
    }
    result.value += amount;
    result.history.push_back({std::move(*path), amount});
    ++result.iterations;
  }
  return result;
}

Flow replay(const FlowNetwork& net, const std::vector<Augmentation>& history) {
  Flow flow = Flow::zero(net);
  for (const auto& step : history) flow = augment(net, flow, step.path, step.amount);
  return flow;
}

}  // namespace flowtutor
