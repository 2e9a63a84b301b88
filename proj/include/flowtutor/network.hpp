#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace flowtutor {

using NodeId = std::string;
using Capacity = std::int64_t;

/// Raised when an operation's precondition does not hold (invalid flow,
/// malformed path, out-of-range amount, ...).
class FlowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A node token is nonempty, contains no whitespace and does not start with
/// '#' (which would read as a comment in an edgelist).
bool is_valid_node_id(std::string_view id);

struct Position {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Position&, const Position&) = default;
};

struct Edge {
  NodeId tail;
  NodeId head;
  Capacity capacity = 0;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed network with integer capacities. Edges are addressed by their
/// index in `edges`; flows are parallel vectors over that index.
struct FlowNetwork {
  std::set<NodeId> nodes;
  std::vector<Edge> edges;
  std::optional<NodeId> source;
  std::optional<NodeId> sink;
  std::map<NodeId, Position> positions;

  std::optional<std::size_t> find_edge(std::string_view tail, std::string_view head) const;
  bool has_node(std::string_view id) const { return nodes.find(std::string(id)) != nodes.end(); }

  /// Unchecked builders; call validate_network for the structural laws.
  FlowNetwork& add_node(NodeId id);
  FlowNetwork& add_edge(NodeId tail, NodeId head, Capacity capacity);

  /// Throws FlowError unless both terminals are set.
  const NodeId& source_id() const;
  const NodeId& sink_id() const;

  friend bool operator==(const FlowNetwork&, const FlowNetwork&) = default;
};

enum class ViolationKind {
  kInvalidNodeId,
  kDuplicateEdge,
  kAntiParallelPair,
  kSelfLoop,
  kDanglingEndpoint,
  kMissingSource,
  kMissingSink,
  kNegativeCapacity,
  kSourceEqualsSink,
  kUnknownTerminal,
  kEdgeCountMismatch,
  kNegativeFlow,
  kCapacityExceeded,
  kConservation,
};

std::string_view to_string(ViolationKind kind);

/// A broken structural or flow law. `edge` is set for edge-level findings,
/// `node` for node-level ones.
struct Violation {
  ViolationKind kind;
  std::string message;
  std::optional<std::size_t> edge;
  std::optional<NodeId> node;
};

std::vector<Violation> validate_network(const FlowNetwork& net);

/// Same network with edges sorted by (tail, head). Two networks describe the
/// same graph iff their canonical forms compare equal.
FlowNetwork canonical(FlowNetwork net);

/// Per-edge flow values, index-aligned with FlowNetwork::edges.
struct Flow {
  std::vector<Capacity> values;

  static Flow zero(const FlowNetwork& net) { return Flow{std::vector<Capacity>(net.edges.size(), 0)}; }
  friend bool operator==(const Flow&, const Flow&) = default;
};

std::vector<Violation> check_flow(const FlowNetwork& net, const Flow& flow);

/// Total flow out of the source. Throws FlowError naming the first violated
/// law if `flow` is not a valid flow on `net`.
Capacity flow_value(const FlowNetwork& net, const Flow& flow);
Capacity outflow_at(const FlowNetwork& net, const Flow& flow, std::string_view node);
Capacity inflow_at(const FlowNetwork& net, const Flow& flow, std::string_view node);

enum class ArcKind { kForward, kBackward };

std::string_view to_string(ArcKind kind);

/// Positive-capacity residual arc. `origin` is the index of the network edge
/// it was derived from. Because anti-parallel edges are forbidden, the pair
/// (tail, head) identifies an arc uniquely.
struct ResidualArc {
  NodeId tail;
  NodeId head;
  Capacity capacity = 0;
  ArcKind kind = ArcKind::kForward;
  std::size_t origin = 0;
  friend bool operator==(const ResidualArc&, const ResidualArc&) = default;
};

class ResidualGraph {
 public:
  ResidualGraph() = default;
  /// Sorts by (tail, head); input arcs must have distinct (tail, head).
  explicit ResidualGraph(std::vector<ResidualArc> arcs);

  const std::vector<ResidualArc>& arcs() const& { return arcs_; }
  std::vector<ResidualArc> arcs() && { return std::move(arcs_); }
  std::size_t size() const { return arcs_.size(); }
  bool empty() const { return arcs_.empty(); }

  /// Arcs leaving `tail`, ordered by head.
  std::span<const ResidualArc> out_arcs(std::string_view tail) const;
  const ResidualArc* find(std::string_view tail, std::string_view head) const;

  friend bool operator==(const ResidualGraph&, const ResidualGraph&) = default;

 private:
  std::vector<ResidualArc> arcs_;
};

ResidualGraph residual_graph(const FlowNetwork& net, const Flow& flow);

/// Capacity the residual graph offers on edge `index` forward / backward
/// (zero when the arc is absent).
Capacity forward_residual(const FlowNetwork& net, const Flow& flow, std::size_t index);
Capacity backward_residual(const Flow& flow, std::size_t index);

struct Path {
  std::vector<ResidualArc> arcs;

  /// Node sequence source..sink; empty for an empty path.
  std::vector<NodeId> nodes() const;
  friend bool operator==(const Path&, const Path&) = default;
};

/// "s->a->t"
std::string format_path(const Path& path);

/// Checks the chaining, endpoint, simplicity and positive-capacity laws of a
/// path against its residual graph. Empty result means the path is valid.
std::vector<std::string> check_path(const ResidualGraph& residual, const NodeId& source,
                                    const NodeId& sink, const Path& path);

struct Bottleneck {
  Capacity value = 0;
  std::vector<ResidualArc> arcs;  // every arc attaining `value`
};

Bottleneck bottleneck(const Path& path);

/// Pushes `amount` along `path` and returns the new flow. The path is
/// re-checked against residual_graph(net, flow).
Flow augment(const FlowNetwork& net, const Flow& flow, const Path& path, Capacity amount);

/// Nodes reachable from `from` in the residual graph.
std::set<NodeId> reachable_from(const ResidualGraph& residual, const NodeId& from);

}  // namespace flowtutor
