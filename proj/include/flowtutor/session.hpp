#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "flowtutor/cuts.hpp"
#include "flowtutor/network.hpp"
#include "flowtutor/paths.hpp"

namespace flowtutor {

enum class Stage { kGraphCreation, kIterative, kFinalized };
enum class Phase { kSelectPath, kChooseAmount, kUpdateResidual };

std::string_view to_string(Stage stage);
std::string_view to_string(Phase phase);

struct ArcKey {
  NodeId tail;
  NodeId head;
  friend auto operator<=>(const ArcKey&, const ArcKey&) = default;
  friend bool operator==(const ArcKey&, const ArcKey&) = default;
};

struct SessionState {
  Stage stage = Stage::kGraphCreation;
  Phase phase = Phase::kSelectPath;  // meaningful only while Iterative
  FlowNetwork net;
  Flow flow;
  std::vector<ArcKey> selected_arcs;
  std::optional<Path> pending_path;
  std::optional<Capacity> draft_amount;
  std::optional<Capacity> pending_amount;
  std::map<ArcKey, Capacity> edit_buffer;
  std::vector<Augmentation> history;
  std::uint64_t rng_seed = 0;
  std::uint64_t random_draws = 0;
  bool max_flow_confirmed = false;
  std::set<NodeId> cut_selection;
  std::set<NodeId> pinned;  // nodes placed by hand or by an imported pos line
};

SessionState new_session(std::uint64_t rng_seed = 0);

namespace action {
// Graph creation.
struct AddNode { NodeId id; std::optional<Position> position; };
struct DeleteNode { NodeId id; };
struct AddEdge { NodeId tail; NodeId head; Capacity capacity = 0; };
struct DeleteEdge { NodeId tail; NodeId head; };
struct SetCapacity { NodeId tail; NodeId head; Capacity capacity = 0; };
struct SetSource { NodeId id; };
struct SetSink { NodeId id; };
struct ImportGraph { std::string text; };
struct ConfirmGraph {};
// Any stage.
struct ExportGraph {};
struct ApplyLayout {
  std::string kind;  // "spring" | "layered"
  double width = 800.0;
  double height = 600.0;
  std::uint64_t seed = 0;
  bool reset = false;  // also move pinned nodes
};
struct MoveNode { NodeId id; Position position; };
// Select path.
struct SelectArc { NodeId tail; NodeId head; };
struct DeselectArc { NodeId tail; NodeId head; };
struct ValidatePath {};
struct AutoPath { std::string strategy; std::optional<std::uint64_t> seed; };
// Choose amount.
struct HighlightBottleneck {};
struct SetAmount { Capacity amount = 0; };
struct ConfirmAmount { std::optional<Capacity> amount; };
struct CancelPath {};
// Update residual graph.
struct EditResidualArc { NodeId tail; NodeId head; Capacity capacity = 0; };
struct ValidateResidual {};
struct AutoResidual {};
// Finalization.
struct ConfirmMaxFlow { Capacity value = 0; };
struct ToggleCutNode { NodeId id; };
struct ValidateCut {};
struct FindMinCut {};
}  // namespace action

using Action = std::variant<
    action::AddNode, action::DeleteNode, action::AddEdge, action::DeleteEdge,
    action::SetCapacity, action::SetSource, action::SetSink, action::ImportGraph,
    action::ConfirmGraph, action::ExportGraph, action::ApplyLayout, action::MoveNode,
    action::SelectArc, action::DeselectArc, action::ValidatePath, action::AutoPath,
    action::HighlightBottleneck, action::SetAmount, action::ConfirmAmount, action::CancelPath,
    action::EditResidualArc, action::ValidateResidual, action::AutoResidual,
    action::ConfirmMaxFlow, action::ToggleCutNode, action::ValidateCut, action::FindMinCut>;

/// snake_case wire tag, e.g. "select_arc".
std::string_view action_name(const Action& a);

/// Whether `a` may be applied in the given stage/phase.
bool action_allowed(const Action& a, Stage stage, Phase phase);

struct Finding {
  std::string code;
  std::string message;
  std::optional<NodeId> node;
  std::optional<ArcKey> arc;
  std::optional<Capacity> expected;
  std::optional<Capacity> actual;
  std::optional<std::size_t> line;
};

struct StepFeedback {
  bool accepted = false;
  std::vector<Finding> findings;
  std::vector<std::string> changed;  // snapshot fields touched by the step
  std::optional<std::string> document;
  std::optional<Bottleneck> bottleneck;
  std::optional<CutVerdict> verdict;
  std::optional<Cut> min_cut;
};

struct StepResult {
  SessionState state;
  StepFeedback feedback;
};

/// Applies one user action. A rejected action returns the input state
/// untouched together with at least one finding.
StepResult apply_action(SessionState state, const Action& a);

/// Violated SessionState laws; empty when the state is consistent.
std::vector<std::string> check_invariants(const SessionState& state);

/// Self-contained view of the session for rendering.
nlohmann::json snapshot(const SessionState& state);

}  // namespace flowtutor
