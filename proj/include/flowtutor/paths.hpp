#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "flowtutor/network.hpp"

namespace flowtutor {

namespace strategy {
struct Random {
  std::uint64_t seed = 0;
  friend bool operator==(const Random&, const Random&) = default;
};
struct Shortest {
  friend bool operator==(const Shortest&, const Shortest&) = default;
};
struct Widest {
  friend bool operator==(const Widest&, const Widest&) = default;
};
}  // namespace strategy

using Strategy = std::variant<strategy::Random, strategy::Shortest, strategy::Widest>;

/// Wire names: "random" | "shortest" | "widest".
std::string_view strategy_name(const Strategy& s);
/// Throws FlowError on an unknown name.
Strategy parse_strategy(std::string_view name, std::uint64_t seed = 0);

/// splitmix64 finalizer; derives independent per-draw seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Randomized depth-first search from the source. At every node one arc to
/// an unvisited node is drawn uniformly; dead ends are popped and never
/// re-entered. Returns nullopt iff the sink is unreachable.
std::optional<Path> find_random_path(const ResidualGraph& residual, const NodeId& source,
                                     const NodeId& sink, std::uint64_t seed);

/// Breadth-first search expanding arcs in ascending head order; the result
/// has the fewest arcs among all augmenting paths.
std::optional<Path> find_shortest_path(const ResidualGraph& residual, const NodeId& source,
                                       const NodeId& sink);

/// A path of maximum bottleneck. Among those, the fewest-arc one, with the
/// same head-order tie-break as find_shortest_path.
std::optional<Path> find_widest_path(const ResidualGraph& residual, const NodeId& source,
                                     const NodeId& sink);

std::optional<Path> find_path(const ResidualGraph& residual, const NodeId& source,
                              const NodeId& sink, const Strategy& strategy,
                              std::uint64_t iteration = 0);

struct Augmentation {
  Path path;
  Capacity amount = 0;
  friend bool operator==(const Augmentation&, const Augmentation&) = default;
};

struct SolveResult {
  Flow max_flow;
  Capacity value = 0;
  std::size_t iterations = 0;
  std::vector<Augmentation> history;
};

/// Ford-Fulkerson loop: find a path with `strategy`, push its full
/// bottleneck, repeat until the sink is unreachable. Random draws a fresh
/// seed per iteration via mix_seed(seed, iteration).
SolveResult solve(const FlowNetwork& net, const Strategy& strategy);

/// Applies `history` to the zero flow.
Flow replay(const FlowNetwork& net, const std::vector<Augmentation>& history);

}  // namespace flowtutor
