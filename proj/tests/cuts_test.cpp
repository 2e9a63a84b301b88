#include <gtest/gtest.h>

#include <random>

#include "flowtutor/cuts.hpp"
#include "flowtutor/paths.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace flowtutor {
namespace {

using testing::diamond;
using testing::make_net;

std::vector<CutFinding> of_kind(const CutVerdict& v, CutFindingKind kind) {
  std::vector<CutFinding> out;
  for (const auto& d : v.diagnostics) {
    if (d.kind == kind) out.push_back(d);
  }
  return out;
}

TEST(CutCapacity, Diamond) {
  EXPECT_EQ(cut_capacity(diamond(), {"s"}), 5);
  EXPECT_EQ(cut_capacity(diamond(), {"s", "b"}), 6);  // s->a 3 + b->t 3
  EXPECT_EQ(cut_capacity(diamond(), {"s", "a"}), 5);  // s->b 2 + a->b 1 + a->t 2
}

TEST(CutCapacity, PreconditionsRejected) {
  EXPECT_THROW(cut_capacity(diamond(), {"a"}), FlowError);
  EXPECT_THROW(cut_capacity(diamond(), {"s", "t"}), FlowError);
}

TEST(CutCapacity, IncomingEdgesDoNotCount) {
  auto net = make_net({{"s", "a", 4}, {"a", "t", 4}, {"b", "a", 9}, {"s", "b", 1}});
  EXPECT_EQ(cut_capacity(net, {"s", "a"}), 4 + 1);
}

TEST(FindMinCut, DiamondSmallestSide) {
  Cut cut = find_min_cut(diamond());
  EXPECT_EQ(cut.source_side, (std::set<NodeId>{"s"}));
  EXPECT_EQ(cut.capacity, 5);
  const auto family = oracle::min_cut_family(diamond());
  EXPECT_EQ(std::set<std::set<NodeId>>(family.begin(), family.end()),
            (std::set<std::set<NodeId>>{{"s"}, {"s", "a"}, {"s", "a", "b"}}));
}

TEST(FindMinCut, Bipartite) {
  EXPECT_EQ(find_min_cut(testing::bipartite()).capacity, 4);
}

TEST(ValidateCut, SinkSideSelectionOnDiamond) {
  auto v = validate_cut(diamond(), {"t"});
  EXPECT_EQ(v.interpretation, CutSide::kSinkSide);
  EXPECT_EQ(v.source_side, (std::set<NodeId>{"s", "a", "b"}));
  EXPECT_EQ(v.proposed_capacity, 5);
  EXPECT_EQ(v.max_flow_value, 5);
  EXPECT_TRUE(v.valid);
  EXPECT_TRUE(v.diagnostics.empty());
}

TEST(ValidateCut, NonMinimalCutGetsWitnesses) {
  const auto net = diamond();
  auto v = validate_cut(net, {"s", "b"});
  EXPECT_EQ(v.interpretation, CutSide::kSourceSide);
  EXPECT_FALSE(v.valid);
  auto gap = of_kind(v, CutFindingKind::kCapacityGap);
  ASSERT_EQ(gap.size(), 1u);
  EXPECT_EQ(gap[0].capacity, 6);
  EXPECT_EQ(gap[0].flow, 5);

  std::set<std::pair<std::string, Capacity>> crossing;
  for (const auto& d : of_kind(v, CutFindingKind::kCrossingEdge)) {
    const Edge& e = net.edges.at(*d.edge);
    crossing.insert({e.tail + "->" + e.head, *d.capacity});
  }
  EXPECT_EQ(crossing, (std::set<std::pair<std::string, Capacity>>{{"s->a", 3}, {"b->t", 3}}));

  // In every maximum flow a->b carries 1 unit (s->a and a->t force it), so it
  // is the witness entering S.
  auto back = of_kind(v, CutFindingKind::kBackwardFlowEdge);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(net.edges.at(*back[0].edge), (Edge{"a", "b", 1}));
}

TEST(ValidateCut, Uninterpretable) {
  for (std::set<NodeId> sel : {std::set<NodeId>{"s", "t"}, std::set<NodeId>{"a"}}) {
    auto v = validate_cut(diamond(), sel);
    EXPECT_EQ(v.interpretation, CutSide::kUninterpretable);
    EXPECT_FALSE(v.valid);
    ASSERT_EQ(v.diagnostics.size(), 1u);
    EXPECT_EQ(v.diagnostics[0].kind, CutFindingKind::kUninterpretable);
  }
  auto both = validate_cut(diamond(), {"s", "t"});
  EXPECT_NE(both.diagnostics[0].message.find("both"), std::string::npos);
}

TEST(ValidateCut, UnknownNode) {
  auto v = validate_cut(diamond(), {"s", "zz"});
  EXPECT_FALSE(v.valid);
  ASSERT_EQ(of_kind(v, CutFindingKind::kUnknownNode).size(), 1u);
}

class CutProperties : public ::testing::TestWithParam<int> {};

TEST_P(CutProperties, FamilyLatticeAndExactAcceptance) {
  std::mt19937_64 rng(500 + GetParam());
  for (int round = 0; round < 20; ++round) {
    const auto net = testing::random_net(rng, 2 + static_cast<int>(rng() % 6));
    const auto family = oracle::min_cut_family(net);
    const std::set<std::set<NodeId>> members(family.begin(), family.end());
    const Capacity best = oracle::min_cut_value(net);

    const Cut found = find_min_cut(net);
    EXPECT_EQ(found.capacity, best);
    EXPECT_TRUE(members.count(found.source_side));
    for (const auto& m : family) {
      EXPECT_TRUE(std::includes(m.begin(), m.end(), found.source_side.begin(), found.source_side.end()));
      for (const auto& n : family) {
        std::set<NodeId> meet;
        std::set<NodeId> join;
        std::set_intersection(m.begin(), m.end(), n.begin(), n.end(), std::inserter(meet, meet.end()));
        std::set_union(m.begin(), m.end(), n.begin(), n.end(), std::inserter(join, join.end()));
        EXPECT_TRUE(members.count(meet));
        EXPECT_TRUE(members.count(join));
      }
    }

    for (const auto& c : oracle::all_cuts(net)) {
      const bool is_min = members.count(c.source_side) != 0;
      EXPECT_EQ(validate_cut(net, c.source_side).valid, is_min);
      std::set<NodeId> t_side;
      std::set_difference(net.nodes.begin(), net.nodes.end(), c.source_side.begin(),
                          c.source_side.end(), std::inserter(t_side, t_side.end()));
      auto v = validate_cut(net, t_side);
      EXPECT_EQ(v.interpretation, CutSide::kSinkSide);
      EXPECT_EQ(v.valid, is_min);
      if (!is_min) {
        EXPECT_FALSE(of_kind(v, CutFindingKind::kCapacityGap).empty());
        // Strict gap implies an unsaturated crossing edge or a backward flow.
        EXPECT_FALSE(of_kind(v, CutFindingKind::kUnsaturatedEdge).empty() &&
                     of_kind(v, CutFindingKind::kBackwardFlowEdge).empty());
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Seeds, CutProperties, ::testing::Range(0, 5));

}  // namespace
}  // namespace flowtutor
