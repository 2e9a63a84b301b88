#include "flowtutor/protocol.hpp"

#include <cstdio>
#include <random>

#include "flowtutor/edgelist.hpp"

namespace flowtutor {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

class Reader {
 public:
  Reader(const json& body, std::string prefix) : body_(body), prefix_(std::move(prefix)) {
    if (!body_.is_object()) throw ProtocolError(prefix_, "expected an object");
  }

  const json& raw(const char* key) const {
    auto it = body_.find(key);
    if (it == body_.end()) throw ProtocolError(path(key), "missing field");
    return *it;
  }

  bool has(const char* key) const {
    auto it = body_.find(key);
    return it != body_.end() && !it->is_null();
  }

  std::string str(const char* key) const {
    const json& v = raw(key);
    if (!v.is_string()) throw ProtocolError(path(key), "expected a string");
    return v.get<std::string>();
  }

  Capacity integer(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ProtocolError(path(key), "expected an integer");
    return v.get<Capacity>();
  }

  std::uint64_t unsigned_integer(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ProtocolError(path(key), "expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }

  double real(const char* key) const {
    const json& v = raw(key);
    if (!v.is_number()) throw ProtocolError(path(key), "expected a number");
    return v.get<double>();
  }

  bool boolean(const char* key) const {
    const json& v = raw(key);
    if (!v.is_boolean()) throw ProtocolError(path(key), "expected a boolean");
    return v.get<bool>();
  }

  std::string path(const char* key) const { return prefix_ + "/" + key; }

 private:
  const json& body_;
  std::string prefix_;
};

json arc_key_json(const ArcKey& k) { return {{"tail", k.tail}, {"head", k.head}}; }

json residual_arc_json(const ResidualArc& arc) {
  return {{"tail", arc.tail}, {"head", arc.head}, {"capacity", arc.capacity},
          {"kind", to_string(arc.kind)}};
}

json status(const char* code) { return {{"status", code}}; }

json bad_request(const std::string& field, const std::string& message) {
  json out = status("bad_request");
  out["error"] = {{"field", field}, {"message", message}};
  return out;
}

json not_found(const std::string& id) {
  json out = status("not_found");
  out["error"] = {{"field", "/session_id"}, {"message", "unknown session '" + id + "'"}};
  return out;
}

}  // namespace

Action action_from_json(const json& body) {
  const Reader r(body, "/action");
  const std::string type = r.str("type");
  if (type == "add_node") {
    action::AddNode a{r.str("id"), std::nullopt};
    if (r.has("x") || r.has("y")) a.position = Position{r.real("x"), r.real("y")};
    return a;
  }
  if (type == "delete_node") return action::DeleteNode{r.str("id")};
  if (type == "add_edge") return action::AddEdge{r.str("tail"), r.str("head"), r.integer("capacity")};
  if (type == "delete_edge") return action::DeleteEdge{r.str("tail"), r.str("head")};
  if (type == "set_capacity") {
    return action::SetCapacity{r.str("tail"), r.str("head"), r.integer("capacity")};
  }
  if (type == "set_source") return action::SetSource{r.str("id")};
  if (type == "set_sink") return action::SetSink{r.str("id")};
  if (type == "import_graph") return action::ImportGraph{r.str("text")};
  if (type == "confirm_graph") return action::ConfirmGraph{};
  if (type == "export_graph") return action::ExportGraph{};
  if (type == "apply_layout") {
    action::ApplyLayout a{r.str("kind")};
    if (r.has("width")) a.width = r.real("width");
    if (r.has("height")) a.height = r.real("height");
    if (r.has("seed")) a.seed = r.unsigned_integer("seed");
    if (r.has("reset")) a.reset = r.boolean("reset");
    return a;
  }
  if (type == "move_node") return action::MoveNode{r.str("id"), Position{r.real("x"), r.real("y")}};
  if (type == "select_arc") return action::SelectArc{r.str("tail"), r.str("head")};
  if (type == "deselect_arc") return action::DeselectArc{r.str("tail"), r.str("head")};
  if (type == "validate_path") return action::ValidatePath{};
  if (type == "auto_path") {
    action::AutoPath a{r.str("strategy"), std::nullopt};
    if (r.has("seed")) a.seed = r.unsigned_integer("seed");
    return a;
  }
  if (type == "highlight_bottleneck") return action::HighlightBottleneck{};
  if (type == "set_amount") return action::SetAmount{r.integer("amount")};
  if (type == "confirm_amount") {
    action::ConfirmAmount a;
    if (r.has("amount")) a.amount = r.integer("amount");
    return a;
  }
  if (type == "cancel_path") return action::CancelPath{};
  if (type == "edit_residual_arc") {
    return action::EditResidualArc{r.str("tail"), r.str("head"), r.integer("capacity")};
  }
  if (type == "validate_residual") return action::ValidateResidual{};
  if (type == "auto_residual") return action::AutoResidual{};
  if (type == "confirm_max_flow") return action::ConfirmMaxFlow{r.integer("value")};
  if (type == "toggle_cut_node") return action::ToggleCutNode{r.str("id")};
  if (type == "validate_cut") return action::ValidateCut{};
  if (type == "find_min_cut") return action::FindMinCut{};
  throw ProtocolError(r.path("type"), "unknown action type '" + type + "'");
}

json action_to_json(const Action& a) {
  json out = std::visit(
      overloaded{
          [](const action::AddNode& x) {
            json j{{"id", x.id}};
            if (x.position) {
              j["x"] = x.position->x;
              j["y"] = x.position->y;
            }
            return j;
          },
          [](const action::DeleteNode& x) { return json{{"id", x.id}}; },
          [](const action::AddEdge& x) {
            return json{{"tail", x.tail}, {"head", x.head}, {"capacity", x.capacity}};
          },
          [](const action::DeleteEdge& x) { return json{{"tail", x.tail}, {"head", x.head}}; },
          [](const action::SetCapacity& x) {
            return json{{"tail", x.tail}, {"head", x.head}, {"capacity", x.capacity}};
          },
          [](const action::SetSource& x) { return json{{"id", x.id}}; },
          [](const action::SetSink& x) { return json{{"id", x.id}}; },
          [](const action::ImportGraph& x) { return json{{"text", x.text}}; },
          [](const action::ApplyLayout& x) {
            return json{{"kind", x.kind}, {"width", x.width}, {"height", x.height},
                        {"seed", x.seed}, {"reset", x.reset}};
          },
          [](const action::MoveNode& x) {
            return json{{"id", x.id}, {"x", x.position.x}, {"y", x.position.y}};
          },
          [](const action::SelectArc& x) { return json{{"tail", x.tail}, {"head", x.head}}; },
          [](const action::DeselectArc& x) { return json{{"tail", x.tail}, {"head", x.head}}; },
          [](const action::AutoPath& x) {
            json j{{"strategy", x.strategy}};
            if (x.seed) j["seed"] = *x.seed;
            return j;
          },
          [](const action::SetAmount& x) { return json{{"amount", x.amount}}; },
          [](const action::ConfirmAmount& x) {
            json j = json::object();
            if (x.amount) j["amount"] = *x.amount;
            return j;
          },
          [](const action::EditResidualArc& x) {
            return json{{"tail", x.tail}, {"head", x.head}, {"capacity", x.capacity}};
          },
          [](const action::ConfirmMaxFlow& x) { return json{{"value", x.value}}; },
          [](const action::ToggleCutNode& x) { return json{{"id", x.id}}; },
          [](const auto&) { return json::object(); },
      },
      a);
  out["type"] = action_name(a);
  return out;
}

json finding_to_json(const Finding& f) {
  json out{{"code", f.code}, {"message", f.message}};
  if (f.node) out["node"] = *f.node;
  if (f.arc) out["arc"] = arc_key_json(*f.arc);
  if (f.expected) out["expected"] = *f.expected;
  if (f.actual) out["actual"] = *f.actual;
  if (f.line) out["line"] = *f.line;
  return out;
}

json feedback_to_json(const StepFeedback& fb) {
  json findings = json::array();
  for (const auto& f : fb.findings) findings.push_back(finding_to_json(f));
  json out{{"accepted", fb.accepted}, {"findings", std::move(findings)}, {"changed", fb.changed}};
  if (fb.document) out["document"] = *fb.document;
  if (fb.bottleneck) {
    json arcs = json::array();
    for (const auto& arc : fb.bottleneck->arcs) arcs.push_back(residual_arc_json(arc));
    out["bottleneck"] = {{"value", fb.bottleneck->value}, {"arcs", std::move(arcs)}};
  }
  if (fb.verdict) {
    const CutVerdict& v = *fb.verdict;
    out["verdict"] = {{"interpretation", to_string(v.interpretation)},
                      {"valid", v.valid},
                      {"source_side", v.source_side},
                      {"proposed_capacity", v.proposed_capacity ? json(*v.proposed_capacity) : json(nullptr)},
                      {"max_flow_value", v.max_flow_value}};
  }
  if (fb.min_cut) {
    out["min_cut"] = {{"source_side", fb.min_cut->source_side}, {"capacity", fb.min_cut->capacity}};
  }
  return out;
}

SessionStore::SessionStore(std::chrono::seconds idle_timeout, Clock clock)
    : idle_timeout_(idle_timeout), clock_(std::move(clock)), ids_(std::random_device{}()) {}

std::pair<std::string, std::shared_ptr<SessionStore::Entry>> SessionStore::create(
    std::uint64_t seed) {
  auto entry = std::make_shared<Entry>();
  entry->state = new_session(seed);
  entry->last_used = clock_();
  std::unique_lock lock(mutex_);
  std::string id;
  do {
    std::uint64_t hi = 0;
    std::uint64_t lo = 0;
    {
      std::lock_guard ids_lock(ids_mutex_);
      hi = ids_();
      lo = ids_();
    }
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(hi),
                  static_cast<unsigned long long>(lo));
    id = buf;
  } while (sessions_.count(id) != 0);
  sessions_[id] = entry;
  return {id, entry};
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) return nullptr;
  return it->second;
}

std::size_t SessionStore::expire() {
  const auto now = clock_();
  std::unique_lock lock(mutex_);
  std::size_t dropped = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
    // A session mid-action is in use, never idle.
    if (entry_lock.owns_lock() && now - it->second->last_used > idle_timeout_) {
      entry_lock.unlock();
      it = sessions_.erase(it);
      ++dropped;
    } else {
      ++it;
    }
  }
  return dropped;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mutex_);
  return sessions_.size();
}

Gateway::Gateway(GatewayOptions options) : store_(options.idle_timeout, std::move(options.clock)) {}

json Gateway::apply(const std::string& id, const json& request, const Action& a) {
  auto entry = store_.find(id);
  if (!entry) return not_found(id);
  std::lock_guard lock(entry->mutex);
  if (auto it = request.find("revision"); it != request.end() && !it->is_null()) {
    if (!it->is_number_unsigned() && !it->is_number_integer()) {
      return bad_request("/revision", "expected an integer");
    }
    if (it->get<std::int64_t>() != static_cast<std::int64_t>(entry->revision)) {
      json out = status("conflict");
      out["session_id"] = id;
      out["revision"] = entry->revision;
      out["error"] = {{"field", "/revision"},
                      {"message", "session is at revision " + std::to_string(entry->revision)}};
      out["snapshot"] = snapshot(entry->state);
      return out;
    }
  }
  StepResult result = apply_action(std::move(entry->state), a);
  entry->state = std::move(result.state);
  if (!result.feedback.changed.empty()) ++entry->revision;
  entry->last_used = store_.now();
  json out = feedback_to_json(result.feedback);
  out["status"] = "ok";
  out["session_id"] = id;
  out["revision"] = entry->revision;
  out["snapshot"] = snapshot(entry->state);
  return out;
}

json Gateway::route(const json& request) {
  store_.expire();
  if (!request.is_object()) return bad_request("", "request must be an object");
  auto type_it = request.find("type");
  if (type_it == request.end() || !type_it->is_string()) {
    return bad_request("/type", "missing request type");
  }
  const std::string type = type_it->get<std::string>();
  if (type == "health") return status("ok");

  if (type == "create_session") {
    std::uint64_t seed = 0;
    if (auto it = request.find("seed"); it != request.end() && !it->is_null()) {
      if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<std::int64_t>() >= 0)) {
        return bad_request("/seed", "expected a nonnegative integer");
      }
      seed = it->get<std::uint64_t>();
    }
    auto [id, entry] = store_.create(seed);
    std::lock_guard lock(entry->mutex);
    json out = status("ok");
    out["session_id"] = id;
    out["revision"] = entry->revision;
    out["snapshot"] = snapshot(entry->state);
    return out;
  }

  auto id_it = request.find("session_id");
  if (id_it == request.end() || !id_it->is_string()) {
    return bad_request("/session_id", "missing session id");
  }
  const std::string id = id_it->get<std::string>();

  if (type == "get_snapshot" || type == "export_edgelist") {
    auto entry = store_.find(id);
    if (!entry) return not_found(id);
    std::lock_guard lock(entry->mutex);
    entry->last_used = store_.now();
    json out = status("ok");
    out["session_id"] = id;
    out["revision"] = entry->revision;
    if (type == "export_edgelist") {
      out["document"] = serialize_edgelist(entry->state.net);
    } else {
      out["snapshot"] = snapshot(entry->state);
    }
    return out;
  }
  if (type == "action") {
    auto action_it = request.find("action");
    if (action_it == request.end()) return bad_request("/action", "missing field");
    try {
      return apply(id, request, action_from_json(*action_it));
    } catch (const ProtocolError& err) {
      return bad_request(err.field(), err.what());
    }
  }
  if (type == "import_edgelist") {
    auto body_it = request.find("body");
    if (body_it == request.end() || !body_it->is_string()) {
      return bad_request("/body", "expected the edgelist text");
    }
    return apply(id, request, action::ImportGraph{body_it->get<std::string>()});
  }
  return bad_request("/type", "unknown request type '" + type + "'");
}

}  // namespace flowtutor
