#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "flowtutor/network.hpp"

// Line-oriented edgelist format:
//
//   # comment               also allowed after a record
//   source <id>
//   sink <id>
//   node <id>               isolated node that no other line mentions
//   pos <id> <x> <y>
//   <tail> <head> <capacity>
//
// Records are told apart by token count, so a node may be called "source".
// Canonical output order: source, sink, node lines, pos lines by id, edges
// by (tail, head).

namespace flowtutor {

struct ParseIssue {
  std::size_t line = 0;  // 1-based
  std::string message;
};

class EdgelistError : public std::runtime_error {
 public:
  explicit EdgelistError(std::vector<ParseIssue> issues);
  const std::vector<ParseIssue>& issues() const { return issues_; }

 private:
  std::vector<ParseIssue> issues_;
};

struct ParseOptions {
  /// Accept documents without source/sink directives (graph drafts).
  bool allow_missing_terminals = false;
};

/// Throws EdgelistError listing every problem with its line number.
FlowNetwork parse_edgelist(std::string_view text, ParseOptions options = {});

std::string serialize_edgelist(const FlowNetwork& net);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_coordinate(double value);

}  // namespace flowtutor
