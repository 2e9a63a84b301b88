#include "flowtutor/cuts.hpp"

#include <algorithm>

#include "flowtutor/paths.hpp"

namespace flowtutor {

namespace {

std::string edge_label(const Edge& e) { return e.tail + "->" + e.head; }

bool contains(const std::set<NodeId>& s, const NodeId& id) { return s.count(id) != 0; }

}  // namespace

Capacity cut_capacity(const FlowNetwork& net, const std::set<NodeId>& source_side) {
  if (!contains(source_side, net.source_id())) throw FlowError("cut side must contain the source");
  if (contains(source_side, net.sink_id())) throw FlowError("cut side must not contain the sink");
  Capacity total = 0;
  for (const auto& e : net.edges) {
    if (contains(source_side, e.tail) && !contains(source_side, e.head)) total += e.capacity;
  }
  return total;
}

Cut find_min_cut(const FlowNetwork& net) {
  const SolveResult solved = solve(net, strategy::Shortest{});
  Cut cut;
  cut.source_side = reachable_from(residual_graph(net, solved.max_flow), net.source_id());
  cut.capacity = cut_capacity(net, cut.source_side);
  return cut;
}

std::string_view to_string(CutSide side) {
  switch (side) {
    case CutSide::kSourceSide: return "s_side";
    case CutSide::kSinkSide: return "t_side";
    case CutSide::kUninterpretable: return "uninterpretable";
  }
  return "uninterpretable";
}

std::string_view to_string(CutFindingKind kind) {
  switch (kind) {
    case CutFindingKind::kUninterpretable: return "uninterpretable";
    case CutFindingKind::kUnknownNode: return "unknown_node";
    case CutFindingKind::kCapacityGap: return "capacity_gap";
    case CutFindingKind::kCrossingEdge: return "crossing_edge";
    case CutFindingKind::kUnsaturatedEdge: return "unsaturated_edge";
    case CutFindingKind::kBackwardFlowEdge: return "backward_flow_edge";
  }
  return "unknown";
}

CutVerdict validate_cut(const FlowNetwork& net, const std::set<NodeId>& selected) {
  const SolveResult solved = solve(net, strategy::Shortest{});
  CutVerdict verdict;
  verdict.max_flow_value = solved.value;

  for (const auto& id : selected) {
    if (!net.has_node(id)) {
      verdict.diagnostics.push_back(
          {CutFindingKind::kUnknownNode, "selection contains unknown node " + id, std::nullopt, id});
    }
  }
  if (!verdict.diagnostics.empty()) return verdict;

  const bool has_source = contains(selected, net.source_id());
  const bool has_sink = contains(selected, net.sink_id());
  if (has_source == has_sink) {
    verdict.diagnostics.push_back({CutFindingKind::kUninterpretable,
                                   has_source ? "selection contains both source and sink"
                                              : "selection contains neither source nor sink"});
    return verdict;
  }
  if (has_source) {
    verdict.interpretation = CutSide::kSourceSide;
    verdict.source_side = selected;
  } else {
    verdict.interpretation = CutSide::kSinkSide;
    std::set_difference(net.nodes.begin(), net.nodes.end(), selected.begin(), selected.end(),
                        std::inserter(verdict.source_side, verdict.source_side.end()));
  }
  verdict.proposed_capacity = cut_capacity(net, verdict.source_side);
  verdict.valid = *verdict.proposed_capacity == verdict.max_flow_value;
  if (verdict.valid) return verdict;

  verdict.diagnostics.push_back(
      {CutFindingKind::kCapacityGap,
       "cut capacity " + std::to_string(*verdict.proposed_capacity) +
           " exceeds the maximum flow value " + std::to_string(verdict.max_flow_value),
       std::nullopt, std::nullopt, verdict.max_flow_value, *verdict.proposed_capacity});
  const auto& side = verdict.source_side;
  const auto& flow = solved.max_flow.values;
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Edge& e = net.edges[i];
    if (contains(side, e.tail) && !contains(side, e.head)) {
      verdict.diagnostics.push_back({CutFindingKind::kCrossingEdge,
                                     "crossing edge " + edge_label(e) + " with capacity " +
                                         std::to_string(e.capacity),
                                     i, std::nullopt, flow[i], e.capacity});
    }
  }
  for (std::size_t i = 0; i < net.edges.size(); ++i) {
    const Edge& e = net.edges[i];
    const bool forward = contains(side, e.tail) && !contains(side, e.head);
    const bool backward = !contains(side, e.tail) && contains(side, e.head);
    if (forward && flow[i] < e.capacity) {
      verdict.diagnostics.push_back(
          {CutFindingKind::kUnsaturatedEdge,
           "edge " + edge_label(e) + " leaves the cut side but a maximum flow uses only " +
               std::to_string(flow[i]) + " of " + std::to_string(e.capacity),
           i, std::nullopt, flow[i], e.capacity});
    } else if (backward && flow[i] > 0) {
      verdict.diagnostics.push_back(
          {CutFindingKind::kBackwardFlowEdge,
           "edge " + edge_label(e) + " enters the cut side carrying " + std::to_string(flow[i]) +
               " units in a maximum flow",
           i, std::nullopt, flow[i], e.capacity});
    }
  }
  return verdict;
}

}  // namespace flowtutor
