#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "flowtutor/network.hpp"

namespace flowtutor {

struct Cut {
  std::set<NodeId> source_side;
  Capacity capacity = 0;
  friend bool operator==(const Cut&, const Cut&) = default;
};

/// Sum of capacities on edges leaving `source_side`. Throws FlowError unless
/// the source is inside and the sink outside.
Capacity cut_capacity(const FlowNetwork& net, const std::set<NodeId>& source_side);

/// The minimum cut with the smallest source side: nodes reachable from the
/// source in the residual graph of a maximum flow.
Cut find_min_cut(const FlowNetwork& net);

enum class CutSide { kSourceSide, kSinkSide, kUninterpretable };

std::string_view to_string(CutSide side);

enum class CutFindingKind {
  kUninterpretable,   // selection holds both or neither terminal
  kUnknownNode,
  kCapacityGap,       // proposed vs maximum flow value
  kCrossingEdge,      // every S -> S-bar edge with its capacity
  kUnsaturatedEdge,   // S -> S-bar edge with f < c under a maximum flow
  kBackwardFlowEdge,  // S-bar -> S edge with f > 0 under a maximum flow
};

std::string_view to_string(CutFindingKind kind);

struct CutFinding {
  CutFindingKind kind;
  std::string message;
  std::optional<std::size_t> edge;
  std::optional<NodeId> node;
  std::optional<Capacity> flow;
  std::optional<Capacity> capacity;
};

struct CutVerdict {
  CutSide interpretation = CutSide::kUninterpretable;
  bool valid = false;
  std::set<NodeId> source_side;  // empty when uninterpretable
  std::optional<Capacity> proposed_capacity;
  Capacity max_flow_value = 0;
  std::vector<CutFinding> diagnostics;
};

/// Interprets `selected` as the source side (if it holds the source) or the
/// sink side (if it holds the sink) and checks it against a maximum flow the
/// function computes itself. Failing verdicts carry witness edges.
CutVerdict validate_cut(const FlowNetwork& net, const std::set<NodeId>& selected);

}  // namespace flowtutor
