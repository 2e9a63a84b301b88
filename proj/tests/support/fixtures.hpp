#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "flowtutor/network.hpp"

namespace flowtutor::testing {

inline FlowNetwork make_net(const std::vector<std::tuple<std::string, std::string, Capacity>>& edges,
                            std::string source = "s", std::string sink = "t") {
  FlowNetwork net;
  net.add_node(source).add_node(sink);
  for (const auto& [u, v, c] : edges) net.add_edge(u, v, c);
  net.source = std::move(source);
  net.sink = std::move(sink);
  return net;
}

/// s->a:3, s->b:2, a->b:1, a->t:2, b->t:3
inline FlowNetwork diamond() {
  return make_net({{"s", "a", 3}, {"s", "b", 2}, {"a", "b", 1}, {"a", "t", 2}, {"b", "t", 3}});
}

/// s->a:1000, s->b:1000, a->b:1, a->t:1000, b->t:1000
inline FlowNetwork zigzag() {
  return make_net(
      {{"s", "a", 1000}, {"s", "b", 1000}, {"a", "b", 1}, {"a", "t", 1000}, {"b", "t", 1000}});
}

/// The bipartite matching instance A-D x E-H reduced to unit-capacity flow.
inline FlowNetwork bipartite() {
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"A", "E"}, {"A", "F"}, {"A", "G"}, {"A", "H"}, {"B", "E"},
      {"B", "F"}, {"B", "G"}, {"C", "E"}, {"C", "F"}, {"D", "E"}};
  std::vector<std::tuple<std::string, std::string, Capacity>> edges;
  for (const char* left : {"A", "B", "C", "D"}) edges.emplace_back("s", left, 1);
  for (const auto& [l, r] : pairs) edges.emplace_back(l, r, 1);
  for (const char* right : {"E", "F", "G", "H"}) edges.emplace_back(right, "t", 1);
  return make_net(edges);
}

inline Flow flow_of(const FlowNetwork& net,
                    const std::vector<std::tuple<std::string, std::string, Capacity>>& values) {
  Flow f = Flow::zero(net);
  for (const auto& [u, v, x] : values) f.values.at(net.find_edge(u, v).value()) = x;
  return f;
}

/// Random valid network on `n` >= 2 nodes named s, t, v1.. with at most one
/// edge per unordered pair and capacities in [0, max_capacity]. With order
/// s, v1, .., t, an edge points forward with probability `forward_bias`.
inline FlowNetwork random_net(std::mt19937_64& rng, int n, Capacity max_capacity = 10,
                              double density = 0.5, double forward_bias = 0.5) {
  FlowNetwork net;
  std::vector<std::string> ids{"s"};
  for (int i = 1; i + 2 <= n; ++i) ids.push_back("v" + std::to_string(i));
  ids.push_back("t");
  for (const auto& id : ids) net.add_node(id);
  net.source = "s";
  net.sink = "t";
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<Capacity> cap(0, max_capacity);
  for (std::size_t i = 0; i < ids.size(); ++i) {
    for (std::size_t j = i + 1; j < ids.size(); ++j) {
      if (coin(rng) >= density) continue;
      if (coin(rng) < forward_bias) {
        net.add_edge(ids[i], ids[j], cap(rng));
      } else {
        net.add_edge(ids[j], ids[i], cap(rng));
      }
    }
  }
  return net;
}

}  // namespace flowtutor::testing
