#include "flowtutor/edgelist.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>

namespace flowtutor {

namespace {

std::string join_issues(const std::vector<ParseIssue>& issues) {
  std::ostringstream out;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i > 0) out << "; ";
    out << "line " << issues[i].line << ": " << issues[i].message;
  }
  return out.str();
}

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    if (i < line.size() && line[i] == '#') break;  // comment runs to end of line
    std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::optional<double> parse_real(std::string_view token) {
  double value = 0.0;
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) return std::nullopt;
  return value;
}

}  // namespace

EdgelistError::EdgelistError(std::vector<ParseIssue> issues)
    : std::runtime_error(join_issues(issues)), issues_(std::move(issues)) {}

FlowNetwork parse_edgelist(std::string_view text, ParseOptions options) {
  FlowNetwork net;
  std::vector<ParseIssue> issues;
  std::map<std::pair<std::string, std::string>, std::size_t> edge_lines;
  std::vector<std::size_t> line_of_edge;
  std::size_t sink_line = 0;
  std::map<NodeId, std::size_t> node_lines;

  auto declare = [&](std::string_view token, std::size_t line_no) -> bool {
    if (!is_valid_node_id(token)) {
      issues.push_back({line_no, "invalid node id '" + std::string(token) + "'"});
      return false;
    }
    net.nodes.emplace(token);
    node_lines.emplace(std::string(token), line_no);
    return true;
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (end == text.size() && line.empty()) break;

    auto tokens = split_tokens(line);
    if (tokens.empty()) continue;

    const std::string_view head = tokens.front();
    if (tokens.size() == 2) {
      if (head == "source" || head == "sink") {
        const bool is_source = head == "source";
        std::optional<NodeId>& slot = is_source ? net.source : net.sink;
        if (slot) {
          issues.push_back({line_no, "duplicate " + std::string(head) + " directive"});
        } else if (declare(tokens[1], line_no)) {
          slot = std::string(tokens[1]);
          if (!is_source) sink_line = line_no;
        }
      } else if (head == "node") {
        declare(tokens[1], line_no);
      } else {
        issues.push_back({line_no, "unknown directive '" + std::string(head) + "'"});
      }
    } else if (tokens.size() == 4) {
      if (head != "pos") {
        issues.push_back({line_no, "unknown directive '" + std::string(head) + "'"});
        continue;
      }
      auto x = parse_real(tokens[2]);
      auto y = parse_real(tokens[3]);
      if (!x || !y) {
        issues.push_back({line_no, "malformed coordinate"});
      } else if (net.positions.count(std::string(tokens[1])) != 0) {
        issues.push_back({line_no, "duplicate position for " + std::string(tokens[1])});
      } else if (declare(tokens[1], line_no)) {
        net.positions[std::string(tokens[1])] = Position{*x, *y};
      }
    } else if (tokens.size() == 3) {
      const std::string_view cap_text = tokens[2];
      Capacity capacity = 0;
      const char* cap_end = cap_text.data() + cap_text.size();
      auto [ptr, ec] = std::from_chars(cap_text.data(), cap_end, capacity);
      if (ec == std::errc::result_out_of_range) {
        issues.push_back({line_no, "capacity out of range"});
        continue;
      }
      if (ec != std::errc() || ptr != cap_end) {
        issues.push_back({line_no, "non-integer capacity '" + std::string(cap_text) + "'"});
        continue;
      }
      if (capacity < 0) {
        issues.push_back({line_no, "negative capacity"});
        continue;
      }
      if (!declare(tokens[0], line_no) || !declare(tokens[1], line_no)) continue;
      std::pair<std::string, std::string> key{tokens[0], tokens[1]};
      if (auto it = edge_lines.find(key); it != edge_lines.end()) {
        issues.push_back({line_no, "duplicate edge " + key.first + "->" + key.second + " at line " +
                                       std::to_string(line_no)});
        continue;
      }
      edge_lines.emplace(key, line_no);
      line_of_edge.push_back(line_no);
      net.edges.push_back(Edge{key.first, key.second, capacity});
    } else {
      issues.push_back({line_no, "malformed record"});
    }
  }

  if (issues.empty()) {
    const std::size_t last_line = line_no;
    for (const auto& v : validate_network(net)) {
      if (options.allow_missing_terminals &&
          (v.kind == ViolationKind::kMissingSource || v.kind == ViolationKind::kMissingSink)) {
        continue;
      }
      std::size_t at = last_line;
      if (v.edge) {
        at = line_of_edge[*v.edge];
      } else if (v.kind == ViolationKind::kSourceEqualsSink) {
        at = sink_line;
      } else if (v.node && node_lines.count(*v.node) != 0) {
        at = node_lines[*v.node];
      }
      issues.push_back({at, v.message});
    }
  }
  if (!issues.empty()) {
    std::stable_sort(issues.begin(), issues.end(),
                     [](const ParseIssue& a, const ParseIssue& b) { return a.line < b.line; });
    throw EdgelistError(std::move(issues));
  }
  return net;
}

std::string format_coordinate(double value) {
  if (!std::isfinite(value)) throw FlowError("cannot format non-finite coordinate");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc()) throw FlowError("cannot format coordinate");
  return std::string(buf, ptr);
}

std::string serialize_edgelist(const FlowNetwork& net) {
  std::string out;
  if (net.source) out += "source " + *net.source + "\n";
  if (net.sink) out += "sink " + *net.sink + "\n";

  std::set<std::string_view> mentioned;
  if (net.source) mentioned.insert(*net.source);
  if (net.sink) mentioned.insert(*net.sink);
  for (const auto& [id, p] : net.positions) mentioned.insert(id);
  for (const auto& e : net.edges) {
    mentioned.insert(e.tail);
    mentioned.insert(e.head);
  }
  for (const auto& id : net.nodes) {
    if (mentioned.count(id) == 0) out += "node " + id + "\n";
  }
  for (const auto& [id, p] : net.positions) {
    out += "pos " + id + " " + format_coordinate(p.x) + " " + format_coordinate(p.y) + "\n";
  }
  std::vector<const Edge*> edges;
  for (const auto& e : net.edges) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->tail, a->head) < std::tie(b->tail, b->head);
  });
  for (const Edge* e : edges) {
    out += e->tail + " " + e->head + " " + std::to_string(e->capacity) + "\n";
  }
  return out;
}

}  // namespace flowtutor
