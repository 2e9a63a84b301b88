#include "flowtutor/network.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

namespace flowtutor {

namespace {

std::string edge_label(const Edge& e) { return e.tail + "->" + e.head; }

}  // namespace

bool is_valid_node_id(std::string_view id) {
  if (id.empty() || id.front() == '#') return false;
  return std::none_of(id.begin(), id.end(),
                      [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; });
}

std::optional<std::size_t> FlowNetwork::find_edge(std::string_view tail,
                                                  std::string_view head) const {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].tail == tail && edges[i].head == head) return i;
  }
  return std::nullopt;
}

FlowNetwork& FlowNetwork::add_node(NodeId id) {
  nodes.insert(std::move(id));
  return *this;
}

FlowNetwork& FlowNetwork::add_edge(NodeId tail, NodeId head, Capacity capacity) {
  nodes.insert(tail);
  nodes.insert(head);
  edges.push_back(Edge{std::move(tail), std::move(head), capacity});
  return *this;
}

const NodeId& FlowNetwork::source_id() const {
  if (!source) throw FlowError("network has no source");
  return *source;
}

const NodeId& FlowNetwork::sink_id() const {
  if (!sink) throw FlowError("network has no sink");
  return *sink;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kInvalidNodeId: return "invalid_node_id";
    case ViolationKind::kDuplicateEdge: return "duplicate_edge";
    case ViolationKind::kAntiParallelPair: return "anti_parallel_pair";
    case ViolationKind::kSelfLoop: return "self_loop";
    case ViolationKind::kDanglingEndpoint: return "dangling_endpoint";
    case ViolationKind::kMissingSource: return "missing_source";
    case ViolationKind::kMissingSink: return "missing_sink";
    case ViolationKind::kNegativeCapacity: return "negative_capacity";
    case ViolationKind::kSourceEqualsSink: return "source_equals_sink";
    case ViolationKind::kUnknownTerminal: return "unknown_terminal";
    case ViolationKind::kEdgeCountMismatch: return "edge_count_mismatch";
    case ViolationKind::kNegativeFlow: return "negative_flow";
    case ViolationKind::kCapacityExceeded: return "capacity_exceeded";
    case ViolationKind::kConservation: return "conservation";
  }
  return "unknown";
}

std::vector<Violation> validate_network(const FlowNetwork& net) {
  std::vector<Violation> out;
  for (const auto& id : net.nodes) {
    if (!is_valid_node_id(id)) {
      out.push_back({ViolationKind::kInvalidNodeId, "invalid node id '" + id + "'", std::nullopt, id});
    }
  }
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Edge& e = net.edges[i];
    for (const NodeId* end : {&e.tail, &e.head}) {
      if (!net.has_node(*end)) {
        out.push_back({ViolationKind::kDanglingEndpoint,
                       "dangling endpoint " + *end + " on " + edge_label(e), i, *end});
      }
    }
    if (e.tail == e.head) {
      out.push_back({ViolationKind::kSelfLoop, "self-loop at " + e.tail, i, e.tail});
    }
    if (e.capacity < 0) {
      out.push_back({ViolationKind::kNegativeCapacity, "negative capacity on " + edge_label(e), i,
                     std::nullopt});
    }
    if (!seen.emplace(e.tail, e.head).second) {
      out.push_back({ViolationKind::kDuplicateEdge, "duplicate edge " + edge_label(e), i,
                     std::nullopt});
    } else if (e.tail != e.head && seen.count({e.head, e.tail}) != 0) {
      const auto& [lo, hi] = std::minmax(e.tail, e.head);
      out.push_back({ViolationKind::kAntiParallelPair, "anti-parallel pair (" + lo + "," + hi + ")",
                     i, std::nullopt});
    }
  }
  if (!net.source) {
    out.push_back({ViolationKind::kMissingSource, "no source designated", std::nullopt,
                   std::nullopt});
  } else if (!net.has_node(*net.source)) {
    out.push_back({ViolationKind::kUnknownTerminal, "source " + *net.source + " is not a node",
                   std::nullopt, *net.source});
  }
  if (!net.sink) {
    out.push_back({ViolationKind::kMissingSink, "no sink designated", std::nullopt, std::nullopt});
  } else if (!net.has_node(*net.sink)) {
    out.push_back({ViolationKind::kUnknownTerminal, "sink " + *net.sink + " is not a node",
                   std::nullopt, *net.sink});
  }
  if (net.source && net.sink && *net.source == *net.sink) {
    out.push_back({ViolationKind::kSourceEqualsSink, "source and sink are both " + *net.source,
                   std::nullopt, *net.source});
  }
  return out;
}

FlowNetwork canonical(FlowNetwork net) {
  std::sort(net.edges.begin(), net.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.tail, a.head, a.capacity) < std::tie(b.tail, b.head, b.capacity);
  });
  return net;
}

Capacity outflow_at(const FlowNetwork& net, const Flow& flow, std::string_view node) {
  Capacity sum = 0;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    if (net.edges[i].tail == node) sum += flow.values.at(i);
  }
  return sum;
}

Capacity inflow_at(const FlowNetwork& net, const Flow& flow, std::string_view node) {
  Capacity sum = 0;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    if (net.edges[i].head == node) sum += flow.values.at(i);
  }
  return sum;
}

std::vector<Violation> check_flow(const FlowNetwork& net, const Flow& flow) {
  std::vector<Violation> out;
  if (flow.values.size() != net.edges.size()) {
    std::ostringstream msg;
    msg << "flow has " << flow.values.size() << " values for " << net.edges.size() << " edges";
    out.push_back({ViolationKind::kEdgeCountMismatch, msg.str(), std::nullopt, std::nullopt});
    return out;
  }
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Edge& e = net.edges[i];
    if (flow.values[i] < 0) {
      out.push_back({ViolationKind::kNegativeFlow, "negative flow on " + edge_label(e), i,
                     std::nullopt});
    } else if (flow.values[i] > e.capacity) {
      out.push_back({ViolationKind::kCapacityExceeded, "capacity exceeded on " + edge_label(e), i,
                     std::nullopt});
    }
  }
  std::map<std::string_view, Capacity> balance;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    balance[net.edges[i].head] += flow.values[i];
    balance[net.edges[i].tail] -= flow.values[i];
  }
  for (const auto& id : net.nodes) {
    if (id == net.source || id == net.sink) continue;
    auto it = balance.find(id);
    if (it != balance.end() && it->second != 0) {
      out.push_back({ViolationKind::kConservation, "conservation at " + id, std::nullopt, id});
    }
  }
  return out;
}

Capacity flow_value(const FlowNetwork& net, const Flow& flow) {
  if (auto violations = check_flow(net, flow); !violations.empty()) {
    throw FlowError("invalid flow: " + violations.front().message);
  }
  const Capacity out = outflow_at(net, flow, net.source_id()) - inflow_at(net, flow, net.source_id());
  const Capacity in = inflow_at(net, flow, net.sink_id()) - outflow_at(net, flow, net.sink_id());
  if (out != in) throw FlowError("flow value at source differs from value at sink");
  return out;
}

std::string_view to_string(ArcKind kind) {
  return kind == ArcKind::kForward ? "forward" : "backward";
}

ResidualGraph::ResidualGraph(std::vector<ResidualArc> arcs) : arcs_(std::move(arcs)) {
  std::sort(arcs_.begin(), arcs_.end(), [](const ResidualArc& a, const ResidualArc& b) {
    return std::tie(a.tail, a.head) < std::tie(b.tail, b.head);
  });
}

std::span<const ResidualArc> ResidualGraph::out_arcs(std::string_view tail) const {
  auto lo = std::lower_bound(arcs_.begin(), arcs_.end(), tail,
                             [](const ResidualArc& a, std::string_view t) { return a.tail < t; });
  auto hi = std::upper_bound(lo, arcs_.end(), tail,
                             [](std::string_view t, const ResidualArc& a) { return t < a.tail; });
  return {lo, hi};
}

const ResidualArc* ResidualGraph::find(std::string_view tail, std::string_view head) const {
  for (const auto& arc : out_arcs(tail)) {
    if (arc.head == head) return &arc;
  }
  return nullptr;
}

Capacity forward_residual(const FlowNetwork& net, const Flow& flow, std::size_t index) {
  return net.edges.at(index).capacity - flow.values.at(index);
}

Capacity backward_residual(const Flow& flow, std::size_t index) { return flow.values.at(index); }

ResidualGraph residual_graph(const FlowNetwork& net, const Flow& flow) {
  if (auto violations = check_flow(net, flow); !violations.empty()) {
    throw FlowError("invalid flow: " + violations.front().message);
  }
  std::vector<ResidualArc> arcs;
  arcs.reserve(net.edges.size() * 2);
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Edge& e = net.edges[i];
    if (Capacity fwd = forward_residual(net, flow, i); fwd > 0) {
      arcs.push_back({e.tail, e.head, fwd, ArcKind::kForward, i});
    }
    if (Capacity back = backward_residual(flow, i); back > 0) {
      arcs.push_back({e.head, e.tail, back, ArcKind::kBackward, i});
    }
  }
  return ResidualGraph(std::move(arcs));
}

std::vector<NodeId> Path::nodes() const {
  std::vector<NodeId> out;
  if (arcs.empty()) return out;
  out.push_back(arcs.front().tail);
  for (const auto& arc : arcs) out.push_back(arc.head);
  return out;
}

std::string format_path(const Path& path) {
  std::string out;
  for (const auto& node : path.nodes()) {
    if (!out.empty()) out += "->";
    out += node;
  }
  return out;
}

std::vector<std::string> check_path(const ResidualGraph& residual, const NodeId& source,
                                    const NodeId& sink, const Path& path) {
  std::vector<std::string> problems;
  if (path.arcs.empty()) {
    problems.emplace_back("path is empty");
    return problems;
  }
  if (path.arcs.front().tail != source) problems.push_back("path does not start at " + source);
  if (path.arcs.back().head != sink) problems.push_back("path does not end at " + sink);
  std::set<NodeId> visited{path.arcs.front().tail};
  for (std::size_t i = 0; i < path.arcs.size(); ++i) {
    const ResidualArc& arc = path.arcs[i];
    if (i > 0 && path.arcs[i - 1].head != arc.tail) {
      problems.push_back("path is disconnected between " + path.arcs[i - 1].head + " and " +
                         arc.tail);
    }
    if (!visited.insert(arc.head).second) problems.push_back("path revisits " + arc.head);
    const ResidualArc* actual = residual.find(arc.tail, arc.head);
    if (actual == nullptr) {
      problems.push_back("arc " + arc.tail + "->" + arc.head + " is not in the residual graph");
    } else if (*actual != arc) {
      problems.push_back("arc " + arc.tail + "->" + arc.head + " does not match the residual graph");
    }
  }
  return problems;
}

Bottleneck bottleneck(const Path& path) {
  if (path.arcs.empty()) throw FlowError("bottleneck of an empty path");
  Bottleneck b;
  b.value = std::min_element(path.arcs.begin(), path.arcs.end(),
                             [](const auto& a, const auto& c) { return a.capacity < c.capacity; })
                ->capacity;
  std::copy_if(path.arcs.begin(), path.arcs.end(), std::back_inserter(b.arcs),
               [&](const ResidualArc& arc) { return arc.capacity == b.value; });
  return b;
}

Flow augment(const FlowNetwork& net, const Flow& flow, const Path& path, Capacity amount) {
  if (amount <= 0) throw FlowError("flow amount must be positive");
  const ResidualGraph residual = residual_graph(net, flow);
  if (auto problems = check_path(residual, net.source_id(), net.sink_id(), path);
      !problems.empty()) {
    throw FlowError("not an augmenting path: " + problems.front());
  }
  const Capacity limit = bottleneck(path).value;
  if (amount > limit) {
    throw FlowError("amount " + std::to_string(amount) + " exceeds the bottleneck capacity " +
                    std::to_string(limit));
  }
  Flow next = flow;
  for (const auto& arc : path.arcs) {
    next.values[arc.origin] += arc.kind == ArcKind::kForward ? amount : -amount;
  }
  return next;
}

std::set<NodeId> reachable_from(const ResidualGraph& residual, const NodeId& from) {
  std::set<NodeId> seen{from};
  std::deque<NodeId> queue{from};
  while (!queue.empty()) {
    NodeId node = std::move(queue.front());
    queue.pop_front();
    for (const auto& arc : residual.out_arcs(node)) {
      if (seen.insert(arc.head).second) queue.push_back(arc.head);
    }
  }
  return seen;
}

}  // namespace flowtutor
