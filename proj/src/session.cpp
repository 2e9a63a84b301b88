#include "flowtutor/session.hpp"

#include <algorithm>
#include <cmath>

#include "flowtutor/edgelist.hpp"
#include "flowtutor/layout.hpp"

namespace flowtutor {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string arc_label(const NodeId& tail, const NodeId& head) { return tail + "->" + head; }

std::string_view display_name(Stage stage, Phase phase) {
  switch (stage) {
    case Stage::kGraphCreation: return "GraphCreation";
    case Stage::kFinalized: return "Finalized";
    case Stage::kIterative: break;
  }
  switch (phase) {
    case Phase::kSelectPath: return "SelectPath";
    case Phase::kChooseAmount: return "ChooseAmount";
    case Phase::kUpdateResidual: return "UpdateResidual";
  }
  return "Iterative";
}

// Cheap before-image of a state used to report which fields a step touched.
struct Fingerprint {
  Stage stage;
  Phase phase;
  FlowNetwork net;
  std::set<NodeId> pinned;
  Flow flow;
  std::vector<ArcKey> selected_arcs;
  std::optional<Path> pending_path;
  std::optional<Capacity> draft_amount;
  std::optional<Capacity> pending_amount;
  std::map<ArcKey, Capacity> edit_buffer;
  std::size_t history_size;
  std::set<NodeId> cut_selection;
  bool max_flow_confirmed;
  std::uint64_t random_draws;

  explicit Fingerprint(const SessionState& s)
      : stage(s.stage), phase(s.phase), net(s.net), pinned(s.pinned), flow(s.flow),
        selected_arcs(s.selected_arcs), pending_path(s.pending_path),
        draft_amount(s.draft_amount), pending_amount(s.pending_amount),
        edit_buffer(s.edit_buffer), history_size(s.history.size()),
        cut_selection(s.cut_selection), max_flow_confirmed(s.max_flow_confirmed),
        random_draws(s.random_draws) {}

  std::vector<std::string> diff(const SessionState& s) const {
    std::vector<std::string> out;
    if (stage != s.stage) out.emplace_back("stage");
    if (phase != s.phase) out.emplace_back("phase");
    if (net != s.net || pinned != s.pinned) out.emplace_back("network");
    if (flow != s.flow) out.emplace_back("flow");
    if (selected_arcs != s.selected_arcs) out.emplace_back("selected_arcs");
    if (pending_path != s.pending_path) out.emplace_back("pending_path");
    if (draft_amount != s.draft_amount) out.emplace_back("draft_amount");
    if (pending_amount != s.pending_amount) out.emplace_back("pending_amount");
    if (edit_buffer != s.edit_buffer) out.emplace_back("edit_buffer");
    if (history_size != s.history.size()) out.emplace_back("history");
    if (cut_selection != s.cut_selection) out.emplace_back("cut_selection");
    if (max_flow_confirmed != s.max_flow_confirmed) out.emplace_back("max_flow_confirmed");
    if (random_draws != s.random_draws) out.emplace_back("rng");
    return out;
  }
};

void clear_iteration(SessionState& s) {
  s.selected_arcs.clear();
  s.pending_path.reset();
  s.draft_amount.reset();
  s.pending_amount.reset();
  s.edit_buffer.clear();
}

bool sink_reachable(const FlowNetwork& net, const Flow& flow) {
  return reachable_from(residual_graph(net, flow), net.source_id()).count(net.sink_id()) != 0;
}

// Reads the unordered arc selection as one simple source-to-sink path.
struct PathAssembly {
  std::optional<Path> path;
  std::vector<Finding> findings;
};

PathAssembly assemble_path(const ResidualGraph& residual, const NodeId& source, const NodeId& sink,
                           const std::vector<ArcKey>& selected) {
  PathAssembly out;
  if (selected.empty()) {
    out.findings.push_back({"empty_selection", "no arcs are selected"});
    return out;
  }
  std::map<NodeId, std::vector<const ResidualArc*>> outgoing;
  std::map<NodeId, std::vector<const ResidualArc*>> incoming;
  for (const auto& key : selected) {
    const ResidualArc* arc = residual.find(key.tail, key.head);
    if (arc == nullptr) {
      out.findings.push_back({"arc_not_in_residual",
                              "arc " + arc_label(key.tail, key.head) + " is not in the residual graph",
                              std::nullopt, key});
      continue;
    }
    outgoing[arc->tail].push_back(arc);
    incoming[arc->head].push_back(arc);
  }
  if (!out.findings.empty()) return out;

  // A complete simple path inside the selection makes every other arc redundant.
  std::vector<const ResidualArc*> trail;
  std::set<NodeId> on_trail{source};
  auto search = [&](auto&& self, const NodeId& from) -> bool {
    if (from == sink) return true;
    auto it = outgoing.find(from);
    if (it == outgoing.end()) return false;
    for (const ResidualArc* arc : it->second) {
      if (!on_trail.insert(arc->head).second) continue;
      trail.push_back(arc);
      if (self(self, arc->head)) return true;
      trail.pop_back();
      on_trail.erase(arc->head);
    }
    return false;
  };
  if (search(search, source)) {
    Path found;
    std::set<ArcKey> used;
    for (const ResidualArc* arc : trail) {
      found.arcs.push_back(*arc);
      used.insert({arc->tail, arc->head});
    }
    for (const auto& key : selected) {
      if (used.count(key) == 0) {
        out.findings.push_back({"redundant_arc",
                                "arc " + arc_label(key.tail, key.head) + " is not part of the path " +
                                    format_path(found),
                                std::nullopt, key});
      }
    }
    if (out.findings.empty()) out.path = std::move(found);
    return out;
  }

  Path path;
  std::set<NodeId> visited{source};
  NodeId at = source;
  while (at != sink) {
    auto it = outgoing.find(at);
    if (it == outgoing.end()) break;
    if (it->second.size() > 1) {
      for (std::size_t i = 1; i < it->second.size(); ++i) {
        const ResidualArc* extra = it->second[i];
        out.findings.push_back({"branching_path",
                                "path branches at " + at + "; " +
                                    arc_label(extra->tail, extra->head) + " is redundant",
                                at, ArcKey{extra->tail, extra->head}});
      }
      return out;
    }
    const ResidualArc* next = it->second.front();
    if (!visited.insert(next->head).second) {
      out.findings.push_back({"cycle", "path returns to " + next->head, next->head,
                              ArcKey{next->tail, next->head}});
      return out;
    }
    path.arcs.push_back(*next);
    at = next->head;
  }

  if (path.arcs.empty()) {
    out.findings.push_back(
        {"not_from_source", "path does not start at the source " + source, source});
    return out;
  }
  NodeId back = sink;
  std::set<NodeId> seen_back{sink};
  while (true) {
    auto it = incoming.find(back);
    if (it == incoming.end() || it->second.size() != 1) break;
    const NodeId& tail = it->second.front()->tail;
    if (!seen_back.insert(tail).second || visited.count(tail) != 0) break;
    back = tail;
  }
  if (back == sink && incoming.count(sink) == 0) {
    out.findings.push_back({"not_to_sink", "path does not end at the sink " + sink, sink});
  } else {
    out.findings.push_back(
        {"disconnected", "path is disconnected between " + at + " and " + back, at});
  }
  return out;
}

class Engine {
 public:
  Engine(SessionState& s, StepFeedback& fb) : s_(s), fb_(fb) {}

  // ---- graph creation ----------------------------------------------------

  void operator()(const action::AddNode& a) {
    if (!is_valid_node_id(a.id)) return reject("invalid_node_id", "invalid node id '" + a.id + "'");
    if (s_.net.has_node(a.id)) return reject("duplicate_node", "node " + a.id + " already exists", a.id);
    if (a.position && !finite(*a.position)) return reject("invalid_position", "position must be finite", a.id);
    s_.net.add_node(a.id);
    if (a.position) {
      s_.net.positions[a.id] = *a.position;
      s_.pinned.insert(a.id);
    }
    accept();
  }

  void operator()(const action::DeleteNode& a) {
    if (!require_node(a.id)) return;
    auto& edges = s_.net.edges;
    edges.erase(std::remove_if(edges.begin(), edges.end(),
                               [&](const Edge& e) { return e.tail == a.id || e.head == a.id; }),
                edges.end());
    s_.net.nodes.erase(a.id);
    s_.net.positions.erase(a.id);
    s_.pinned.erase(a.id);
    if (s_.net.source == a.id) s_.net.source.reset();
    if (s_.net.sink == a.id) s_.net.sink.reset();
    accept();
  }

  void operator()(const action::AddEdge& a) {
    if (!require_node(a.tail) || !require_node(a.head)) return;
    const ArcKey key{a.tail, a.head};
    if (a.tail == a.head) return reject("self_loop", "self-loop at " + a.tail, a.tail);
    if (s_.net.find_edge(a.tail, a.head)) {
      return reject("duplicate_edge", "duplicate edge " + arc_label(a.tail, a.head), std::nullopt, key);
    }
    if (s_.net.find_edge(a.head, a.tail)) {
      const auto& [lo, hi] = std::minmax(a.tail, a.head);
      return reject("anti_parallel_pair", "anti-parallel pair (" + lo + "," + hi + ")", std::nullopt, key);
    }
    if (a.capacity < 0) return reject("negative_capacity", "capacity must be nonnegative", std::nullopt, key);
    s_.net.edges.push_back({a.tail, a.head, a.capacity});
    accept();
  }

  void operator()(const action::DeleteEdge& a) {
    auto index = require_edge(a.tail, a.head);
    if (!index) return;
    s_.net.edges.erase(s_.net.edges.begin() + static_cast<std::ptrdiff_t>(*index));
    accept();
  }

  void operator()(const action::SetCapacity& a) {
    auto index = require_edge(a.tail, a.head);
    if (!index) return;
    if (a.capacity < 0) {
      return reject("negative_capacity", "capacity must be nonnegative", std::nullopt,
                    ArcKey{a.tail, a.head});
    }
    s_.net.edges[*index].capacity = a.capacity;
    accept();
  }

  void operator()(const action::SetSource& a) { set_terminal(a.id, true); }
  void operator()(const action::SetSink& a) { set_terminal(a.id, false); }

  void operator()(const action::ImportGraph& a) {
    FlowNetwork net;
    try {
      net = parse_edgelist(a.text, ParseOptions{.allow_missing_terminals = true});
    } catch (const EdgelistError& err) {
      for (const auto& issue : err.issues()) {
        Finding f{"parse_error", "line " + std::to_string(issue.line) + ": " + issue.message};
        f.line = issue.line;
        fb_.findings.push_back(std::move(f));
      }
      return;
    }
    s_.pinned.clear();
    for (const auto& [id, p] : net.positions) s_.pinned.insert(id);
    s_.net = std::move(net);
    accept();
  }

  void operator()(const action::ConfirmGraph&) {
    for (const auto& v : validate_network(s_.net)) {
      Finding f{std::string(to_string(v.kind)), v.message, v.node};
      if (v.edge) f.arc = ArcKey{s_.net.edges[*v.edge].tail, s_.net.edges[*v.edge].head};
      fb_.findings.push_back(std::move(f));
    }
    if (!fb_.findings.empty()) return;
    if (!sink_reachable(s_.net, Flow::zero(s_.net))) {
      return reject("sink_unreachable",
                    "sink " + *s_.net.sink + " is not reachable from source " + *s_.net.source);
    }
    s_.stage = Stage::kIterative;
    s_.phase = Phase::kSelectPath;
    s_.flow = Flow::zero(s_.net);
    s_.history.clear();
    clear_iteration(s_);
    accept();
  }

  // ---- any stage -----------------------------------------------------------

  void operator()(const action::ExportGraph&) {
    fb_.document = serialize_edgelist(s_.net);
    accept();
  }

  void operator()(const action::ApplyLayout& a) {
    if (s_.net.nodes.empty()) return reject("empty_graph", "there are no nodes to lay out");
    LayoutResult placed;
    try {
      if (a.kind == "spring") {
        placed = spring_layout(s_.net, {a.width, a.height}, a.seed);
      } else if (a.kind == "layered") {
        placed = layered_layout(s_.net, {a.width, a.height});
      } else {
        return reject("unknown_layout", "unknown layout '" + a.kind + "'");
      }
    } catch (const FlowError& err) {
      return reject("layout_failed", err.what());
    }
    if (a.reset) s_.pinned.clear();
    for (const auto& [id, p] : placed) {
      if (s_.pinned.count(id) == 0) s_.net.positions[id] = p;
    }
    accept();
  }

  void operator()(const action::MoveNode& a) {
    if (!require_node(a.id)) return;
    if (!finite(a.position)) return reject("invalid_position", "position must be finite", a.id);
    s_.net.positions[a.id] = a.position;
    s_.pinned.insert(a.id);
    accept();
  }

  // ---- select path ---------------------------------------------------------

  void operator()(const action::SelectArc& a) {
    const ArcKey key{a.tail, a.head};
    if (residual().find(a.tail, a.head) == nullptr) {
      return reject("arc_not_in_residual",
                    "arc " + arc_label(a.tail, a.head) + " is not in the residual graph",
                    std::nullopt, key);
    }
    if (std::find(s_.selected_arcs.begin(), s_.selected_arcs.end(), key) != s_.selected_arcs.end()) {
      return reject("already_selected", "arc " + arc_label(a.tail, a.head) + " is already selected",
                    std::nullopt, key);
    }
    s_.selected_arcs.push_back(key);
    accept();
  }

  void operator()(const action::DeselectArc& a) {
    const ArcKey key{a.tail, a.head};
    auto it = std::find(s_.selected_arcs.begin(), s_.selected_arcs.end(), key);
    if (it == s_.selected_arcs.end()) {
      return reject("not_selected", "arc " + arc_label(a.tail, a.head) + " is not selected",
                    std::nullopt, key);
    }
    s_.selected_arcs.erase(it);
    accept();
  }

  void operator()(const action::ValidatePath&) {
    PathAssembly assembled =
        assemble_path(residual(), s_.net.source_id(), s_.net.sink_id(), s_.selected_arcs);
    if (!assembled.path) {
      fb_.findings = std::move(assembled.findings);
      return;
    }
    begin_amount(std::move(*assembled.path));
  }

  void operator()(const action::AutoPath& a) {
    Strategy strategy;
    try {
      strategy = parse_strategy(a.strategy);
    } catch (const FlowError& err) {
      return reject("unknown_strategy", err.what());
    }
    const bool random = std::holds_alternative<strategy::Random>(strategy);
    std::optional<Path> path;
    if (random) {
      const std::uint64_t seed = a.seed ? *a.seed : mix_seed(s_.rng_seed, s_.random_draws);
      path = find_random_path(residual(), s_.net.source_id(), s_.net.sink_id(), seed);
    } else {
      path = find_path(residual(), s_.net.source_id(), s_.net.sink_id(), strategy);
    }
    if (!path) return reject("no_augmenting_path", "no augmenting path exists in the residual graph");
    if (random && !a.seed) ++s_.random_draws;
    begin_amount(std::move(*path));
  }

  // ---- choose amount -------------------------------------------------------

  void operator()(const action::HighlightBottleneck&) {
    Bottleneck b = bottleneck(*s_.pending_path);
    for (const auto& arc : b.arcs) {
      fb_.findings.push_back({"bottleneck_arc",
                              "arc " + arc_label(arc.tail, arc.head) + " has the smallest residual capacity",
                              std::nullopt, ArcKey{arc.tail, arc.head}, std::nullopt, arc.capacity});
    }
    fb_.bottleneck = std::move(b);
    accept();
  }

  void operator()(const action::SetAmount& a) {
    s_.draft_amount = a.amount;
    accept();
  }

  void operator()(const action::ConfirmAmount& a) {
    std::optional<Capacity> amount = a.amount ? a.amount : s_.draft_amount;
    if (!amount) return reject("missing_amount", "enter a flow amount first");
    if (*amount <= 0) return reject("amount_not_positive", "the flow amount must be at least 1");
    const Capacity limit = bottleneck(*s_.pending_path).value;
    if (*amount > limit) {
      Finding f{"amount_exceeds_bottleneck",
                "amount " + std::to_string(*amount) +
                    " is greater than the bottleneck residual capacity " + std::to_string(limit)};
      f.expected = limit;
      f.actual = *amount;
      fb_.findings.push_back(std::move(f));
      return;
    }
    s_.pending_amount = amount;
    s_.draft_amount.reset();
    s_.phase = Phase::kUpdateResidual;
    s_.edit_buffer.clear();
    for (const auto& arc : residual().arcs()) s_.edit_buffer[{arc.tail, arc.head}] = arc.capacity;
    accept();
  }

  void operator()(const action::CancelPath&) {
    clear_iteration(s_);
    s_.phase = Phase::kSelectPath;
    accept();
  }

  // ---- update residual graph -----------------------------------------------

  void operator()(const action::EditResidualArc& a) {
    if (!require_node(a.tail) || !require_node(a.head)) return;
    const ArcKey key{a.tail, a.head};
    if (a.tail == a.head) return reject("self_loop", "self-loop at " + a.tail, a.tail, key);
    if (a.capacity < 0) {
      return reject("negative_capacity", "residual capacity must be nonnegative", std::nullopt, key);
    }
    if (a.capacity == 0) {
      s_.edit_buffer.erase(key);
    } else {
      s_.edit_buffer[key] = a.capacity;
    }
    accept();
  }

  void operator()(const action::ValidateResidual&) {
    const Flow next = augment(s_.net, s_.flow, *s_.pending_path, *s_.pending_amount);
    const ResidualGraph expected = residual_graph(s_.net, next);
    std::map<ArcKey, Capacity> wanted;
    for (const auto& arc : expected.arcs()) wanted[{arc.tail, arc.head}] = arc.capacity;
    for (const auto& [key, cap] : wanted) {
      auto it = s_.edit_buffer.find(key);
      if (it == s_.edit_buffer.end()) {
        fb_.findings.push_back({"missing_arc",
                                "arc " + arc_label(key.tail, key.head) + " is missing",
                                std::nullopt, key});
      } else if (it->second != cap) {
        Finding f{"wrong_capacity",
                  "arc " + arc_label(key.tail, key.head) + " has the wrong residual capacity",
                  std::nullopt, key};
        f.actual = it->second;
        fb_.findings.push_back(std::move(f));
      }
    }
    for (const auto& [key, cap] : s_.edit_buffer) {
      if (wanted.count(key) == 0) {
        Finding f{"extraneous_arc",
                  "arc " + arc_label(key.tail, key.head) + " should not be in the residual graph",
                  std::nullopt, key};
        f.actual = cap;
        fb_.findings.push_back(std::move(f));
      }
    }
    if (!fb_.findings.empty()) return;
    commit(next);
  }

  void operator()(const action::AutoResidual&) {
    const Flow next = augment(s_.net, s_.flow, *s_.pending_path, *s_.pending_amount);
    commit(next);
  }

  // ---- finalization --------------------------------------------------------

  void operator()(const action::ConfirmMaxFlow& a) {
    if (sink_reachable(s_.net, s_.flow)) {
      return reject("augmenting_path_exists",
                    "an augmenting path still exists; continue finding augmenting paths");
    }
    if (a.value != flow_value(s_.net, s_.flow)) {
      return reject("value_incorrect", "the value you entered is not the value of the current flow");
    }
    clear_iteration(s_);
    s_.phase = Phase::kSelectPath;
    s_.stage = Stage::kFinalized;
    s_.max_flow_confirmed = true;
    accept();
  }

  void operator()(const action::ToggleCutNode& a) {
    if (!require_node(a.id)) return;
    if (!s_.cut_selection.erase(a.id)) s_.cut_selection.insert(a.id);
    accept();
  }

  void operator()(const action::ValidateCut&) {
    CutVerdict verdict = validate_cut(s_.net, s_.cut_selection);
    for (const auto& d : verdict.diagnostics) {
      Finding f{std::string(to_string(d.kind)), d.message, d.node};
      if (d.edge) f.arc = ArcKey{s_.net.edges[*d.edge].tail, s_.net.edges[*d.edge].head};
      if (d.kind == CutFindingKind::kCapacityGap) {
        f.expected = d.flow;
        f.actual = d.capacity;
      } else {
        f.expected = d.capacity;
        f.actual = d.flow;
      }
      fb_.findings.push_back(std::move(f));
    }
    fb_.accepted = verdict.valid;
    if (verdict.valid) {
      fb_.findings.push_back({"min_cut_valid",
                              "the selected nodes form the " +
                                  std::string(verdict.interpretation == CutSide::kSourceSide
                                                  ? "source side"
                                                  : "sink side") +
                                  " of a minimum cut"});
    }
    fb_.verdict = std::move(verdict);
  }

  void operator()(const action::FindMinCut&) {
    Cut cut = find_min_cut(s_.net);
    s_.cut_selection = cut.source_side;
    fb_.min_cut = std::move(cut);
    accept();
  }

 private:
  static bool finite(const Position& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

  void accept() { fb_.accepted = true; }

  void reject(std::string code, std::string message, std::optional<NodeId> node = std::nullopt,
              std::optional<ArcKey> arc = std::nullopt) {
    fb_.accepted = false;
    fb_.findings.push_back({std::move(code), std::move(message), std::move(node), std::move(arc)});
  }

  bool require_node(const NodeId& id) {
    if (s_.net.has_node(id)) return true;
    reject("unknown_node", "node " + id + " does not exist", id);
    return false;
  }

  std::optional<std::size_t> require_edge(const NodeId& tail, const NodeId& head) {
    auto index = s_.net.find_edge(tail, head);
    if (!index) {
      reject("unknown_edge", "edge " + arc_label(tail, head) + " does not exist", std::nullopt,
             ArcKey{tail, head});
    }
    return index;
  }

  void set_terminal(const NodeId& id, bool source) {
    if (!require_node(id)) return;
    const std::optional<NodeId>& other = source ? s_.net.sink : s_.net.source;
    if (other == id) {
      return reject("source_equals_sink", "source and sink must be different nodes", id);
    }
    (source ? s_.net.source : s_.net.sink) = id;
    accept();
  }

  const ResidualGraph& residual() {
    if (!residual_) residual_ = residual_graph(s_.net, s_.flow);
    return *residual_;
  }

  void begin_amount(Path path) {
    s_.pending_path = std::move(path);
    s_.selected_arcs.clear();
    s_.draft_amount.reset();
    s_.phase = Phase::kChooseAmount;
    accept();
  }

  void commit(Flow next) {
    s_.history.push_back({*s_.pending_path, *s_.pending_amount});
    s_.flow = std::move(next);
    clear_iteration(s_);
    s_.phase = Phase::kSelectPath;
    accept();
  }

  SessionState& s_;
  StepFeedback& fb_;
  std::optional<ResidualGraph> residual_;
};

bool in_group(const Action& a, std::initializer_list<std::size_t> indices) {
  return std::find(indices.begin(), indices.end(), a.index()) != indices.end();
}

template <class T>
std::size_t idx() {
  return Action(T{}).index();
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::kGraphCreation: return "graph_creation";
    case Stage::kIterative: return "iterative";
    case Stage::kFinalized: return "finalized";
  }
  return "unknown";
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kSelectPath: return "select_path";
    case Phase::kChooseAmount: return "choose_amount";
    case Phase::kUpdateResidual: return "update_residual";
  }
  return "unknown";
}

SessionState new_session(std::uint64_t rng_seed) {
  SessionState s;
  s.rng_seed = rng_seed;
  return s;
}

std::string_view action_name(const Action& a) {
  return std::visit(
      overloaded{
          [](const action::AddNode&) { return "add_node"; },
          [](const action::DeleteNode&) { return "delete_node"; },
          [](const action::AddEdge&) { return "add_edge"; },
          [](const action::DeleteEdge&) { return "delete_edge"; },
          [](const action::SetCapacity&) { return "set_capacity"; },
          [](const action::SetSource&) { return "set_source"; },
          [](const action::SetSink&) { return "set_sink"; },
          [](const action::ImportGraph&) { return "import_graph"; },
          [](const action::ConfirmGraph&) { return "confirm_graph"; },
          [](const action::ExportGraph&) { return "export_graph"; },
          [](const action::ApplyLayout&) { return "apply_layout"; },
          [](const action::MoveNode&) { return "move_node"; },
          [](const action::SelectArc&) { return "select_arc"; },
          [](const action::DeselectArc&) { return "deselect_arc"; },
          [](const action::ValidatePath&) { return "validate_path"; },
          [](const action::AutoPath&) { return "auto_path"; },
          [](const action::HighlightBottleneck&) { return "highlight_bottleneck"; },
          [](const action::SetAmount&) { return "set_amount"; },
          [](const action::ConfirmAmount&) { return "confirm_amount"; },
          [](const action::CancelPath&) { return "cancel_path"; },
          [](const action::EditResidualArc&) { return "edit_residual_arc"; },
          [](const action::ValidateResidual&) { return "validate_residual"; },
          [](const action::AutoResidual&) { return "auto_residual"; },
          [](const action::ConfirmMaxFlow&) { return "confirm_max_flow"; },
          [](const action::ToggleCutNode&) { return "toggle_cut_node"; },
          [](const action::ValidateCut&) { return "validate_cut"; },
          [](const action::FindMinCut&) { return "find_min_cut"; },
      },
      a);
}

bool action_allowed(const Action& a, Stage stage, Phase phase) {
  using namespace action;
  if (in_group(a, {idx<ExportGraph>(), idx<ApplyLayout>(), idx<MoveNode>()})) return true;
  switch (stage) {
    case Stage::kGraphCreation:
      return in_group(a, {idx<AddNode>(), idx<DeleteNode>(), idx<AddEdge>(), idx<DeleteEdge>(),
                          idx<SetCapacity>(), idx<SetSource>(), idx<SetSink>(),
                          idx<ImportGraph>(), idx<ConfirmGraph>()});
    case Stage::kFinalized:
      return in_group(a, {idx<ToggleCutNode>(), idx<ValidateCut>(), idx<FindMinCut>()});
    case Stage::kIterative:
      break;
  }
  if (in_group(a, {idx<ConfirmMaxFlow>()})) return true;
  switch (phase) {
    case Phase::kSelectPath:
      return in_group(a, {idx<SelectArc>(), idx<DeselectArc>(), idx<ValidatePath>(),
                          idx<AutoPath>()});
    case Phase::kChooseAmount:
      return in_group(a, {idx<HighlightBottleneck>(), idx<SetAmount>(), idx<ConfirmAmount>(),
                          idx<CancelPath>()});
    case Phase::kUpdateResidual:
      return in_group(a, {idx<EditResidualArc>(), idx<ValidateResidual>(), idx<AutoResidual>(),
                          idx<CancelPath>()});
  }
  return false;
}

StepResult apply_action(SessionState state, const Action& a) {
  StepFeedback fb;
  if (!action_allowed(a, state.stage, state.phase)) {
    fb.findings.push_back({"illegal_action", "action " + std::string(action_name(a)) +
                                                 " not valid in " +
                                                 std::string(display_name(state.stage, state.phase))});
    return {std::move(state), std::move(fb)};
  }
  const Fingerprint before(state);
  // Handlers validate everything before their first write, so a rejected
  // action leaves `state` as it was.
  std::visit(Engine(state, fb), a);
  if (state.stage == Stage::kGraphCreation) state.flow = Flow::zero(state.net);
  if (!fb.accepted && fb.findings.empty()) {
    fb.findings.push_back({"rejected", "action was rejected"});
  }
  fb.changed = before.diff(state);
  return {std::move(state), std::move(fb)};
}

std::vector<std::string> check_invariants(const SessionState& s) {
  std::vector<std::string> out;
  for (const auto& v : check_flow(s.net, s.flow)) out.push_back("flow: " + v.message);
  const bool iterative = s.stage == Stage::kIterative;
  const bool amount_phase = iterative && (s.phase == Phase::kChooseAmount ||
                                          s.phase == Phase::kUpdateResidual);
  const bool residual_phase = iterative && s.phase == Phase::kUpdateResidual;
  if (s.pending_path && !amount_phase) out.emplace_back("pending path outside amount/residual phases");
  if (amount_phase && !s.pending_path) out.emplace_back("amount/residual phase without pending path");
  if (s.pending_amount && !residual_phase) out.emplace_back("pending amount outside residual phase");
  if (residual_phase && !s.pending_amount) out.emplace_back("residual phase without pending amount");
  if (!s.edit_buffer.empty() && !residual_phase) out.emplace_back("edit buffer outside residual phase");
  if (!s.selected_arcs.empty() && !(iterative && s.phase == Phase::kSelectPath)) {
    out.emplace_back("arc selection outside select-path phase");
  }
  if (!s.cut_selection.empty() && s.stage != Stage::kFinalized) {
    out.emplace_back("cut selection outside finalization");
  }
  if (s.max_flow_confirmed != (s.stage == Stage::kFinalized)) {
    out.emplace_back("max-flow confirmation does not match stage");
  }
  if (s.stage == Stage::kGraphCreation) {
    if (!s.history.empty()) out.emplace_back("history during graph creation");
    if (s.flow != Flow::zero(s.net)) out.emplace_back("nonzero flow during graph creation");
  } else {
    if (!validate_network(s.net).empty()) out.emplace_back("confirmed network is invalid");
    try {
      if (replay(s.net, s.history) != s.flow) out.emplace_back("history does not reproduce flow");
    } catch (const FlowError& err) {
      out.push_back(std::string("history does not replay: ") + err.what());
    }
    if (s.pending_path) {
      try {
        const auto problems = check_path(residual_graph(s.net, s.flow), s.net.source_id(),
                                         s.net.sink_id(), *s.pending_path);
        if (!problems.empty()) out.push_back("pending path invalid: " + problems.front());
        if (s.pending_amount &&
            (*s.pending_amount < 1 || *s.pending_amount > bottleneck(*s.pending_path).value)) {
          out.emplace_back("pending amount outside [1, bottleneck]");
        }
      } catch (const FlowError& err) {
        out.push_back(std::string("pending path check failed: ") + err.what());
      }
    }
  }
  if (s.stage == Stage::kFinalized && check_flow(s.net, s.flow).empty() &&
      sink_reachable(s.net, s.flow)) {
    out.emplace_back("finalized with an augmenting path remaining");
  }
  return out;
}

namespace {

nlohmann::json arc_json(const ResidualArc& arc) {
  return {{"tail", arc.tail}, {"head", arc.head}, {"capacity", arc.capacity},
          {"kind", to_string(arc.kind)}};
}

nlohmann::json path_json(const Path& path) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& arc : path.arcs) arcs.push_back(arc_json(arc));
  return {{"nodes", path.nodes()}, {"arcs", std::move(arcs)}, {"text", format_path(path)}};
}

template <class T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json snapshot(const SessionState& s) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& id : s.net.nodes) {
    nlohmann::json node{{"id", id}, {"pinned", s.pinned.count(id) != 0}};
    if (auto it = s.net.positions.find(id); it != s.net.positions.end()) {
      node["x"] = it->second.x;
      node["y"] = it->second.y;
    }
    nodes.push_back(std::move(node));
  }
  nlohmann::json edges = nlohmann::json::array();
  for (std::size_t i = 0; i < s.net.edges.size(); ++i) {
    const Edge& e = s.net.edges[i];
    const Capacity f = i < s.flow.values.size() ? s.flow.values[i] : 0;
    edges.push_back({{"tail", e.tail}, {"head", e.head}, {"capacity", e.capacity}, {"flow", f},
                     {"label", std::to_string(f) + "/" + std::to_string(e.capacity)}});
  }

  nlohmann::json residual = nlohmann::json::array();
  nlohmann::json value = nullptr;
  if (check_flow(s.net, s.flow).empty()) {
    for (const auto& arc : residual_graph(s.net, s.flow).arcs()) residual.push_back(arc_json(arc));
    if (s.net.source && s.net.sink) value = flow_value(s.net, s.flow);
  }

  nlohmann::json selected = nlohmann::json::array();
  for (const auto& key : s.selected_arcs) selected.push_back({{"tail", key.tail}, {"head", key.head}});
  nlohmann::json buffer = nlohmann::json::array();
  for (const auto& [key, cap] : s.edit_buffer) {
    buffer.push_back({{"tail", key.tail}, {"head", key.head}, {"capacity", cap}});
  }
  nlohmann::json history = nlohmann::json::array();
  for (const auto& step : s.history) {
    history.push_back({{"path", format_path(step.path)}, {"nodes", step.path.nodes()},
                       {"amount", step.amount}});
  }

  return {
      {"stage", to_string(s.stage)},
      {"phase", s.stage == Stage::kIterative ? nlohmann::json(to_string(s.phase)) : nlohmann::json(nullptr)},
      {"network",
       {{"source", optional_json(s.net.source)}, {"sink", optional_json(s.net.sink)},
        {"nodes", std::move(nodes)}, {"edges", std::move(edges)}}},
      {"flow", {{"value", value}}},
      {"residual", std::move(residual)},
      {"selected_arcs", std::move(selected)},
      {"pending_path", s.pending_path ? path_json(*s.pending_path) : nlohmann::json(nullptr)},
      {"draft_amount", optional_json(s.draft_amount)},
      {"pending_amount", optional_json(s.pending_amount)},
      {"edit_buffer", std::move(buffer)},
      {"history", std::move(history)},
      {"cut_selection", s.cut_selection},
      {"max_flow_confirmed", s.max_flow_confirmed},
      {"rng", {{"seed", s.rng_seed}, {"draws", s.random_draws}}},
  };
}

}  // namespace flowtutor
