#pragma once

#include <cstdint>
#include <map>

#include "flowtutor/network.hpp"

namespace flowtutor {

struct LayoutBox {
  double width = 800.0;
  double height = 600.0;
};

struct SpringOptions {
  int iterations = 300;
  /// Initial temperature as a fraction of the box width; cools linearly to 0.
  double initial_temperature = 0.1;
  /// Ideal edge length; <= 0 means sqrt(width * height / |V|).
  double ideal_length = 0.0;
};

using LayoutResult = std::map<NodeId, Position>;

/// Fruchterman-Reingold: repulsion k^2/d between all pairs, attraction d^2/k
/// along edges, seeded random start. Every node ends inside the box at a
/// distinct point.
LayoutResult spring_layout(const FlowNetwork& net, LayoutBox box, std::uint64_t seed,
                           SpringOptions options = {});

/// Columns by BFS distance from the source (unreachable nodes form a final
/// column), rows by node id within a column.
LayoutResult layered_layout(const FlowNetwork& net, LayoutBox box);

}  // namespace flowtutor
