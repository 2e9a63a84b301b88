#include "flowtutor/layout.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <set>
#include <vector>

namespace flowtutor {

namespace {

void check_box(const LayoutBox& box) {
  if (!(box.width > 0.0) || !(box.height > 0.0) || !std::isfinite(box.width) ||
      !std::isfinite(box.height)) {
    throw FlowError("layout box must have positive finite width and height");
  }
}

double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

// Moves coincident points apart along the diagonal until all are distinct.
void separate(std::vector<Position>& pos, const LayoutBox& box) {
  const double step = std::min(box.width, box.height) * 1e-6;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    for (int guard = 0; guard < 1000; ++guard) {
      bool clash = false;
      for (std::size_t j = 0; j < i; ++j) {
        if (pos[j] == pos[i]) {
          clash = true;
          break;
        }
      }
      if (!clash) break;
      pos[i].x = std::clamp(pos[i].x + step, 0.0, box.width);
      pos[i].y = std::clamp(pos[i].y + (pos[i].x >= box.width ? step : 0.0), 0.0, box.height);
      if (pos[i].x >= box.width && pos[i].y >= box.height) pos[i] = {0.0, pos[i].y - step};
    }
  }
}

}  // namespace

LayoutResult spring_layout(const FlowNetwork& net, LayoutBox box, std::uint64_t seed,
                           SpringOptions options) {
  check_box(box);
  if (net.nodes.empty()) throw FlowError("layout needs at least one node");
  const std::vector<NodeId> ids(net.nodes.begin(), net.nodes.end());
  const std::size_t n = ids.size();
  LayoutResult out;
  if (n == 1) {
    out[ids.front()] = {box.width / 2, box.height / 2};
    return out;
  }

  auto index_of = [&](const NodeId& id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
  };
  std::vector<std::pair<std::size_t, std::size_t>> springs;
  for (const auto& e : net.edges) {
    if (net.has_node(e.tail) && net.has_node(e.head) && e.tail != e.head) {
      springs.emplace_back(index_of(e.tail), index_of(e.head));
    }
  }

  const double k = options.ideal_length > 0.0 ? options.ideal_length
                                              : std::sqrt(box.width * box.height / n);
  std::mt19937_64 rng(seed);
  std::vector<Position> pos(n);
  for (auto& p : pos) {
    p.x = unit_draw(rng) * box.width;
    p.y = unit_draw(rng) * box.height;
  }

  const double t0 = options.initial_temperature * box.width;
  const double eps = 1e-9 * k;
  std::vector<Position> disp(n);
  for (int it = 0; it < options.iterations; ++it) {
    const double temperature = t0 * (1.0 - static_cast<double>(it) / options.iterations);
    std::fill(disp.begin(), disp.end(), Position{});
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double dx = pos[i].x - pos[j].x;
        double dy = pos[i].y - pos[j].y;
        double d = std::hypot(dx, dy);
        if (d < eps) {
          // Coincident: push apart along a fixed direction keyed by index.
          dx = static_cast<double>(i + 1);
          dy = static_cast<double>(j + 1);
          d = std::hypot(dx, dy);
          dx *= eps / d;
          dy *= eps / d;
          d = eps;
        }
        const double force = k * k / d;
        disp[i].x += dx / d * force;
        disp[i].y += dy / d * force;
        disp[j].x -= dx / d * force;
        disp[j].y -= dy / d * force;
      }
    }
    for (auto [u, v] : springs) {
      const double dx = pos[u].x - pos[v].x;
      const double dy = pos[u].y - pos[v].y;
      const double d = std::hypot(dx, dy);
      if (d < eps) continue;
      const double force = d * d / k;
      disp[u].x -= dx / d * force;
      disp[u].y -= dy / d * force;
      disp[v].x += dx / d * force;
      disp[v].y += dy / d * force;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double len = std::hypot(disp[i].x, disp[i].y);
      if (len > 0.0) {
        const double step = std::min(len, temperature);
        pos[i].x += disp[i].x / len * step;
        pos[i].y += disp[i].y / len * step;
      }
      pos[i].x = std::clamp(pos[i].x, 0.0, box.width);
      pos[i].y = std::clamp(pos[i].y, 0.0, box.height);
    }
  }
  separate(pos, box);
  for (std::size_t i = 0; i < n; ++i) out[ids[i]] = pos[i];
  return out;
}

LayoutResult layered_layout(const FlowNetwork& net, LayoutBox box) {
  check_box(box);
  const NodeId& source = net.source_id();
  const NodeId& sink = net.sink_id();
  if (!net.has_node(source) || !net.has_node(sink)) throw FlowError("terminals are not nodes");

  std::map<NodeId, std::size_t> layer{{source, 0}};
  std::deque<NodeId> queue{source};
  while (!queue.empty()) {
    const NodeId node = queue.front();
    queue.pop_front();
    for (const auto& e : net.edges) {
      if (e.tail == node && layer.emplace(e.head, layer[node] + 1).second) queue.push_back(e.head);
    }
  }
  if (layer.count(sink) == 0) throw FlowError("sink is not reachable from the source");

  std::size_t deepest = 0;
  for (const auto& [id, l] : layer) deepest = std::max(deepest, l);
  std::vector<std::vector<NodeId>> columns(deepest + 1);
  bool has_unreachable = false;
  for (const auto& id : net.nodes) {
    auto it = layer.find(id);
    if (it == layer.end()) {
      has_unreachable = true;
    } else {
      columns[it->second].push_back(id);
    }
  }
  if (has_unreachable) {
    columns.emplace_back();
    for (const auto& id : net.nodes) {
      if (layer.count(id) == 0) columns.back().push_back(id);
    }
  }

  LayoutResult out;
  const double cols = static_cast<double>(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const double x = box.width * (static_cast<double>(c) + 1.0) / (cols + 1.0);
    const double rows = static_cast<double>(columns[c].size());
    for (std::size_t r = 0; r < columns[c].size(); ++r) {
      out[columns[c][r]] = {x, box.height * (static_cast<double>(r) + 1.0) / (rows + 1.0)};
    }
  }
  return out;
}

}  // namespace flowtutor
