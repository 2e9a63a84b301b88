#include <gtest/gtest.h>

#include <atomic>
#include <thread>

#include "flowtutor/edgelist.hpp"
#include "flowtutor/http_server.hpp"
#include "flowtutor/paths.hpp"
#include "flowtutor/protocol.hpp"
#include "httplib.h"
#include "support/fixtures.hpp"

namespace flowtutor {
namespace {

using nlohmann::json;

json create(Gateway& g, std::uint64_t seed = 0) {
  json out = g.route({{"type", "create_session"}, {"seed", seed}});
  EXPECT_EQ(out["status"], "ok");
  return out;
}

json act_on(Gateway& g, const std::string& id, json action) {
  return g.route({{"type", "action"}, {"session_id", id}, {"action", std::move(action)}});
}

TEST(ActionCodec, EveryActionRoundTrips) {
  const std::vector<Action> all{
      action::AddNode{"a", Position{1.5, 2}}, action::AddNode{"b", std::nullopt},
      action::DeleteNode{"a"}, action::AddEdge{"s", "t", 3}, action::DeleteEdge{"s", "t"},
      action::SetCapacity{"s", "t", 4}, action::SetSource{"s"}, action::SetSink{"t"},
      action::ImportGraph{"source s\nsink t\ns t 1\n"}, action::ConfirmGraph{},
      action::ExportGraph{}, action::ApplyLayout{"spring", 640, 480, 5, true},
      action::MoveNode{"s", {3, 4}}, action::SelectArc{"s", "a"}, action::DeselectArc{"s", "a"},
      action::ValidatePath{}, action::AutoPath{"random", 12}, action::AutoPath{"widest", std::nullopt},
      action::HighlightBottleneck{}, action::SetAmount{2}, action::ConfirmAmount{3},
      action::ConfirmAmount{std::nullopt}, action::CancelPath{}, action::EditResidualArc{"a", "s", 1},
      action::ValidateResidual{}, action::AutoResidual{}, action::ConfirmMaxFlow{5},
      action::ToggleCutNode{"t"}, action::ValidateCut{}, action::FindMinCut{}};
  std::set<std::size_t> kinds;
  for (const auto& a : all) {
    const json wire = action_to_json(a);
    EXPECT_EQ(wire["type"], action_name(a));
    EXPECT_EQ(action_to_json(action_from_json(wire)), wire) << wire.dump();
    kinds.insert(a.index());
  }
  EXPECT_EQ(kinds.size(), std::variant_size_v<Action>);
}

TEST(ActionCodec, FieldLevelErrors) {
  try {
    action_from_json({{"type", "add_edge"}, {"tail", "s"}, {"head", "t"}, {"capacity", "x"}});
    FAIL();
  } catch (const ProtocolError& err) {
    EXPECT_EQ(err.field(), "/action/capacity");
  }
  try {
    action_from_json({{"type", "warp"}});
    FAIL();
  } catch (const ProtocolError& err) {
    EXPECT_EQ(err.field(), "/action/type");
  }
}

TEST(Gateway, CreateStartsAtRevisionZero) {
  Gateway g;
  json out = create(g);
  EXPECT_EQ(out["revision"], 0);
  EXPECT_EQ(out["session_id"].get<std::string>().size(), 32u);
  EXPECT_EQ(out["snapshot"]["stage"], "graph_creation");
  EXPECT_NE(create(g)["session_id"], out["session_id"]);
}

TEST(Gateway, UnknownSessionIsNotFound) {
  Gateway g;
  EXPECT_EQ(act_on(g, "feedface", {{"type", "confirm_graph"}})["status"], "not_found");
  EXPECT_EQ(g.route({{"type", "get_snapshot"}, {"session_id", "nope"}})["status"], "not_found");
}

TEST(Gateway, MalformedRequests) {
  Gateway g;
  const std::string id = create(g)["session_id"];
  json out = act_on(g, id, {{"type", "set_capacity"}, {"tail", "s"}, {"head", 7}, {"capacity", 1}});
  EXPECT_EQ(out["status"], "bad_request");
  EXPECT_EQ(out["error"]["field"], "/action/head");
  EXPECT_EQ(g.route({{"type", "nonsense"}})["status"], "bad_request");
  EXPECT_EQ(g.route(json::array())["status"], "bad_request");
  EXPECT_EQ(g.route({{"type", "create_session"}, {"seed", -1}})["error"]["field"], "/seed");
}

TEST(Gateway, RevisionsAndConflicts) {
  Gateway g;
  const std::string id = create(g)["session_id"];
  json r1 = act_on(g, id, {{"type", "add_node"}, {"id", "s"}});
  EXPECT_EQ(r1["accepted"], true);
  EXPECT_EQ(r1["revision"], 1);
  json rejected = act_on(g, id, {{"type", "add_node"}, {"id", "s"}});
  EXPECT_EQ(rejected["accepted"], false);
  EXPECT_EQ(rejected["revision"], 1);
  EXPECT_FALSE(rejected["findings"].empty());

  json stale = g.route({{"type", "action"},
                        {"session_id", id},
                        {"revision", 0},
                        {"action", {{"type", "add_node"}, {"id", "t"}}}});
  EXPECT_EQ(stale["status"], "conflict");
  EXPECT_EQ(stale["revision"], 1);
  json fresh = g.route({{"type", "action"},
                        {"session_id", id},
                        {"revision", 1},
                        {"action", {{"type", "add_node"}, {"id", "t"}}}});
  EXPECT_EQ(fresh["status"], "ok");
  EXPECT_EQ(fresh["revision"], 2);
}

TEST(Gateway, ImportExport) {
  Gateway g;
  const std::string id = create(g)["session_id"];
  const std::string doc = serialize_edgelist(testing::diamond());
  json imported = g.route({{"type", "import_edgelist"}, {"session_id", id}, {"body", doc}});
  EXPECT_EQ(imported["accepted"], true);
  json exported = g.route({{"type", "export_edgelist"}, {"session_id", id}});
  EXPECT_EQ(exported["document"], doc);
  json bad = g.route({{"type", "import_edgelist"}, {"session_id", id}, {"body", "s t 5\ns t 7\n"}});
  EXPECT_EQ(bad["accepted"], false);
  EXPECT_EQ(bad["findings"][0]["code"], "parse_error");
}

// Drives the matching exercise through the wire protocol, choosing each path
// arc by arc from an independent solve run.
TEST(Gateway, MatchingTranscriptReachesFour) {
  Gateway g;
  const std::string id = create(g, 3)["session_id"];
  ASSERT_EQ(g.route({{"type", "import_edgelist"},
                     {"session_id", id},
                     {"body", serialize_edgelist(testing::bipartite())}})["accepted"],
            true);
  ASSERT_EQ(act_on(g, id, {{"type", "confirm_graph"}})["accepted"], true);
  const SolveResult plan = solve(testing::bipartite(), strategy::Shortest{});
  json last;
  for (const auto& step : plan.history) {
    for (const auto& arc : step.path.arcs) {
      ASSERT_EQ(act_on(g, id, {{"type", "select_arc"}, {"tail", arc.tail}, {"head", arc.head}})["accepted"], true);
    }
    ASSERT_EQ(act_on(g, id, {{"type", "validate_path"}})["accepted"], true);
    ASSERT_EQ(act_on(g, id, {{"type", "confirm_amount"}, {"amount", step.amount}})["accepted"], true);
    last = act_on(g, id, {{"type", "auto_residual"}});
    ASSERT_EQ(last["accepted"], true);
  }
  EXPECT_EQ(last["snapshot"]["flow"]["value"], 4);
  EXPECT_EQ(act_on(g, id, {{"type", "confirm_max_flow"}, {"value", 3}})["accepted"], false);
  json done = act_on(g, id, {{"type", "confirm_max_flow"}, {"value", 4}});
  EXPECT_EQ(done["accepted"], true);
  EXPECT_EQ(done["snapshot"]["stage"], "finalized");
}

TEST(SessionStore, IdleSessionsExpire) {
  auto now = std::chrono::steady_clock::time_point{};
  Gateway g({std::chrono::seconds(60), [&] { return now; }});
  const std::string old_id = create(g)["session_id"];
  now += std::chrono::seconds(50);
  const std::string young_id = create(g)["session_id"];
  EXPECT_EQ(g.route({{"type", "get_snapshot"}, {"session_id", old_id}})["status"], "ok");
  now += std::chrono::seconds(50);
  EXPECT_EQ(g.route({{"type", "get_snapshot"}, {"session_id", young_id}})["status"], "ok");
  EXPECT_EQ(g.route({{"type", "get_snapshot"}, {"session_id", old_id}})["status"], "ok");
  now += std::chrono::seconds(61);
  EXPECT_EQ(g.route({{"type", "get_snapshot"}, {"session_id", old_id}})["status"], "not_found");
  EXPECT_EQ(g.store().size(), 0u);
}

TEST(Gateway, ConcurrentSessionsStayConsistent) {
  Gateway g;
  const std::string shared = create(g)["session_id"];
  std::atomic<int> accepted{0};
  std::vector<std::thread> workers;
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      const std::string own = create(g)["session_id"];
      for (int i = 0; i < 50; ++i) {
        const std::string node = "n" + std::to_string(w) + "_" + std::to_string(i);
        if (act_on(g, shared, {{"type", "add_node"}, {"id", node}})["accepted"] == true) ++accepted;
        act_on(g, own, {{"type", "add_node"}, {"id", node}});
      }
    });
  }
  for (auto& t : workers) t.join();
  json snap = g.route({{"type", "get_snapshot"}, {"session_id", shared}});
  EXPECT_EQ(accepted.load(), 400);
  EXPECT_EQ(snap["revision"], 400);
  EXPECT_EQ(snap["snapshot"]["network"]["nodes"].size(), 400u);
}

class HttpFixture : public ::testing::Test {
 protected:
  void SetUp() override {
    server_ = std::make_unique<HttpServer>(gateway_);
    port_ = server_->bind("127.0.0.1", 0);
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->listen(); });
  }
  void TearDown() override {
    server_->stop();
    if (thread_.joinable()) thread_.join();
  }

  httplib::Client client() { return httplib::Client("127.0.0.1", port_); }

  Gateway gateway_;
  std::unique_ptr<HttpServer> server_;
  int port_ = 0;
  std::thread thread_;
};

TEST_F(HttpFixture, EndpointsAndStatusCodes) {
  auto cli = client();
  auto health = cli.Get("/health");
  ASSERT_TRUE(health);
  EXPECT_EQ(health->status, 200);

  auto created = cli.Post("/sessions", R"({"seed": 4})", "application/json");
  ASSERT_TRUE(created);
  EXPECT_EQ(created->status, 200);
  const std::string id = json::parse(created->body)["session_id"];

  auto put = cli.Put("/sessions/" + id + "/edgelist", serialize_edgelist(testing::diamond()), "text/plain");
  ASSERT_TRUE(put);
  EXPECT_EQ(put->status, 200);
  EXPECT_EQ(json::parse(put->body)["revision"], 1);

  auto stale = cli.Put("/sessions/" + id + "/edgelist?revision=0", "source s\nsink t\ns t 1\n", "text/plain");
  ASSERT_TRUE(stale);
  EXPECT_EQ(stale->status, 409);

  auto doc = cli.Get("/sessions/" + id + "/edgelist");
  ASSERT_TRUE(doc);
  EXPECT_EQ(doc->body, serialize_edgelist(testing::diamond()));

  auto step = cli.Post("/sessions/" + id + "/actions", R"({"action": {"type": "confirm_graph"}})",
                       "application/json");
  ASSERT_TRUE(step);
  EXPECT_EQ(step->status, 200);
  EXPECT_EQ(json::parse(step->body)["snapshot"]["stage"], "iterative");

  auto malformed = cli.Post("/sessions/" + id + "/actions", R"({"action": {"type": 3}})", "application/json");
  ASSERT_TRUE(malformed);
  EXPECT_EQ(malformed->status, 400);
  EXPECT_EQ(json::parse(malformed->body)["error"]["field"], "/action/type");

  auto missing = cli.Get("/sessions/00000000000000000000000000000000");
  ASSERT_TRUE(missing);
  EXPECT_EQ(missing->status, 404);

  auto snap = cli.Get("/sessions/" + id);
  ASSERT_TRUE(snap);
  EXPECT_EQ(json::parse(snap->body)["revision"], 2);
}

}  // namespace
}  // namespace flowtutor
