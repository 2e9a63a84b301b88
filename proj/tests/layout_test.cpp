#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "flowtutor/layout.hpp"
#include "support/fixtures.hpp"

namespace flowtutor {
namespace {

void expect_well_formed(const FlowNetwork& net, const LayoutResult& layout, LayoutBox box) {
  ASSERT_EQ(layout.size(), net.nodes.size());
  std::set<std::pair<double, double>> seen;
  for (const auto& id : net.nodes) {
    const Position& p = layout.at(id);
    EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
    EXPECT_GE(p.x, 0.0);
    EXPECT_LE(p.x, box.width);
    EXPECT_GE(p.y, 0.0);
    EXPECT_LE(p.y, box.height);
    EXPECT_TRUE(seen.insert({p.x, p.y}).second) << "overlap at " << id;
  }
}

double dist(Position a, Position b) { return std::hypot(a.x - b.x, a.y - b.y); }

TEST(SpringLayout, SingleNodeCentered) {
  FlowNetwork net;
  net.add_node("only");
  auto layout = spring_layout(net, {800, 600}, 1);
  EXPECT_EQ(layout.at("only"), (Position{400, 300}));
}

TEST(SpringLayout, TwoConnectedNodesNearIdealLength) {
  auto net = testing::make_net({{"s", "t", 1}});
  const LayoutBox box{800, 600};
  const double k = std::sqrt(box.width * box.height / 2.0);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto layout = spring_layout(net, box, seed);
    const double d = dist(layout.at("s"), layout.at("t"));
    EXPECT_GE(d, k / 2) << seed;
    EXPECT_LE(d, k * 2) << seed;
  }
}

TEST(SpringLayout, DeterministicPerSeed) {
  const auto net = testing::bipartite();
  EXPECT_EQ(spring_layout(net, {}, 42), spring_layout(net, {}, 42));
  EXPECT_NE(spring_layout(net, {}, 42), spring_layout(net, {}, 43));
}

TEST(SpringLayout, ZeroAreaRejected) {
  EXPECT_THROW(spring_layout(testing::diamond(), {0, 600}, 1), FlowError);
  EXPECT_THROW(layered_layout(testing::diamond(), {800, 0}), FlowError);
}

TEST(LayeredLayout, Chain) {
  auto layout = layered_layout(testing::make_net({{"s", "a", 1}, {"a", "t", 1}}), {800, 600});
  EXPECT_LT(layout.at("s").x, layout.at("a").x);
  EXPECT_LT(layout.at("a").x, layout.at("t").x);
}

TEST(LayeredLayout, DiamondColumns) {
  auto layout = layered_layout(testing::diamond(), {800, 600});
  EXPECT_EQ(layout.at("a").x, layout.at("b").x);
  EXPECT_LT(layout.at("s").x, layout.at("a").x);
  EXPECT_LT(layout.at("a").x, layout.at("t").x);
  EXPECT_LT(layout.at("a").y, layout.at("b").y);  // screen y grows downward
}

TEST(LayeredLayout, BipartiteFourLayers) {
  auto layout = layered_layout(testing::bipartite(), {800, 600});
  std::set<double> columns;
  for (const auto& [id, p] : layout) columns.insert(p.x);
  EXPECT_EQ(columns.size(), 4u);
  for (const char* left : {"A", "B", "C", "D"}) EXPECT_EQ(layout.at(left).x, layout.at("A").x);
  for (const char* right : {"E", "F", "G", "H"}) EXPECT_EQ(layout.at(right).x, layout.at("E").x);
  EXPECT_LT(layout.at("s").x, layout.at("A").x);
  EXPECT_LT(layout.at("A").x, layout.at("E").x);
  EXPECT_LT(layout.at("E").x, layout.at("t").x);
}

TEST(LayeredLayout, UnreachableSinkRejected) {
  auto net = testing::make_net({{"s", "a", 1}, {"t", "a", 1}});
  EXPECT_THROW(layered_layout(net, {800, 600}), FlowError);
}

TEST(LayeredLayout, UnreachableNodesGoLast) {
  auto net = testing::make_net({{"s", "t", 1}, {"x", "s", 1}});
  auto layout = layered_layout(net, {800, 600});
  EXPECT_GT(layout.at("x").x, layout.at("t").x);
}

TEST(Layouts, FuzzedNetworksUpTo200Nodes) {
  std::mt19937_64 rng(11);
  for (int n : {2, 3, 5, 10, 30, 80, 200}) {
    for (int trial = 0; trial < 2; ++trial) {
      auto net = testing::random_net(rng, n, 10, n > 50 ? 0.05 : 0.4);
      if (!net.find_edge("s", "t")) net.add_edge("s", "t", 1);
      const LayoutBox box{640, 480};
      auto spring = spring_layout(net, box, rng());
      expect_well_formed(net, spring, box);
      auto layered = layered_layout(net, box);
      expect_well_formed(net, layered, box);
      EXPECT_EQ(layered, layered_layout(net, box));
    }
  }
}

}  // namespace
}  // namespace flowtutor
