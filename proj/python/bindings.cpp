#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "flowtutor/cuts.hpp"
#include "flowtutor/edgelist.hpp"
#include "flowtutor/layout.hpp"
#include "flowtutor/paths.hpp"
#include "flowtutor/protocol.hpp"

namespace py = pybind11;
using namespace flowtutor;

namespace {

py::dict verdict_dict(const CutVerdict& v) {
  py::list diagnostics;
  for (const auto& d : v.diagnostics) {
    py::dict item;
    item["kind"] = std::string(to_string(d.kind));
    item["message"] = d.message;
    item["edge"] = d.edge;
    item["node"] = d.node;
    item["flow"] = d.flow;
    item["capacity"] = d.capacity;
    diagnostics.append(item);
  }
  py::dict out;
  out["interpretation"] = std::string(to_string(v.interpretation));
  out["valid"] = v.valid;
  out["source_side"] = v.source_side;
  out["proposed_capacity"] = v.proposed_capacity;
  out["max_flow_value"] = v.max_flow_value;
  out["diagnostics"] = diagnostics;
  return out;
}

py::list residual_list(const ResidualGraph& g) {
  py::list out;
  for (const auto& arc : g.arcs()) {
    out.append(py::make_tuple(arc.tail, arc.head, arc.capacity, std::string(to_string(arc.kind))));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Max-flow / min-cut tutoring engine";

  py::register_exception<FlowError>(m, "FlowError", PyExc_ValueError);
  py::register_exception<EdgelistError>(m, "EdgelistError", PyExc_ValueError);

  py::class_<FlowNetwork>(m, "FlowNetwork")
      .def(py::init<>())
      .def("add_node", [](FlowNetwork& n, const std::string& id) { n.add_node(id); })
      .def("add_edge", [](FlowNetwork& n, const std::string& u, const std::string& v,
                          Capacity c) { n.add_edge(u, v, c); })
      .def_property_readonly("nodes", [](const FlowNetwork& n) {
        return std::vector<NodeId>(n.nodes.begin(), n.nodes.end());
      })
      .def_property_readonly("edges", [](const FlowNetwork& n) {
        std::vector<std::tuple<NodeId, NodeId, Capacity>> out;
        for (const auto& e : n.edges) out.emplace_back(e.tail, e.head, e.capacity);
        return out;
      })
      .def_readwrite("source", &FlowNetwork::source)
      .def_readwrite("sink", &FlowNetwork::sink)
      .def_property_readonly("positions", [](const FlowNetwork& n) {
        std::map<NodeId, std::pair<double, double>> out;
        for (const auto& [id, p] : n.positions) out[id] = {p.x, p.y};
        return out;
      })
      .def("set_position", [](FlowNetwork& n, const std::string& id, double x, double y) {
        n.positions[id] = Position{x, y};
      })
      .def("__eq__", [](const FlowNetwork& a, const FlowNetwork& b) {
        return canonical(a) == canonical(b);
      });

  m.def("validate_network", [](const FlowNetwork& net) {
    std::vector<std::string> out;
    for (const auto& v : validate_network(net)) out.push_back(v.message);
    return out;
  });

  m.def("parse_edgelist", [](const std::string& text) { return parse_edgelist(text); },
        py::arg("text"));
  m.def("serialize_edgelist", &serialize_edgelist, py::arg("net"));

  m.def("residual_graph",
        [](const FlowNetwork& net, const std::vector<Capacity>& flow) {
          return residual_list(residual_graph(net, Flow{flow}));
        },
        py::arg("net"), py::arg("flow"));

  m.def("flow_value",
        [](const FlowNetwork& net, const std::vector<Capacity>& flow) {
          return flow_value(net, Flow{flow});
        },
        py::arg("net"), py::arg("flow"));

  m.def("solve",
        [](const FlowNetwork& net, const std::string& strategy, std::uint64_t seed) {
          SolveResult r;
          {
            py::gil_scoped_release release;
            r = solve(net, parse_strategy(strategy, seed));
          }
          py::list history;
          for (const auto& step : r.history) history.append(py::make_tuple(step.path.nodes(), step.amount));
          py::dict out;
          out["value"] = r.value;
          out["iterations"] = r.iterations;
          out["flow"] = r.max_flow.values;
          out["history"] = history;
          return out;
        },
        py::arg("net"), py::arg("strategy") = "shortest", py::arg("seed") = 0);

  m.def("cut_capacity",
        [](const FlowNetwork& net, const std::set<NodeId>& side) { return cut_capacity(net, side); },
        py::arg("net"), py::arg("source_side"));

  m.def("find_min_cut",
        [](const FlowNetwork& net) {
          Cut cut = find_min_cut(net);
          return py::make_tuple(cut.source_side, cut.capacity);
        },
        py::arg("net"));

  m.def("validate_cut",
        [](const FlowNetwork& net, const std::set<NodeId>& selected) {
          return verdict_dict(validate_cut(net, selected));
        },
        py::arg("net"), py::arg("selected"));

  m.def("spring_layout",
        [](const FlowNetwork& net, double width, double height, std::uint64_t seed) {
          std::map<NodeId, std::pair<double, double>> out;
          for (const auto& [id, p] : spring_layout(net, {width, height}, seed)) out[id] = {p.x, p.y};
          return out;
        },
        py::arg("net"), py::arg("width") = 800.0, py::arg("height") = 600.0, py::arg("seed") = 0);

  m.def("layered_layout",
        [](const FlowNetwork& net, double width, double height) {
          std::map<NodeId, std::pair<double, double>> out;
          for (const auto& [id, p] : layered_layout(net, {width, height})) out[id] = {p.x, p.y};
          return out;
        },
        py::arg("net"), py::arg("width") = 800.0, py::arg("height") = 600.0);

  py::class_<Gateway>(m, "_Gateway")
      .def(py::init([](long idle_timeout_seconds) {
             return std::make_unique<Gateway>(
                 GatewayOptions{std::chrono::seconds(idle_timeout_seconds)});
           }),
           py::arg("idle_timeout_seconds") = 24 * 3600)
      .def("route_json", [](Gateway& g, const std::string& request) {
        nlohmann::json parsed = nlohmann::json::parse(request, nullptr, false);
        nlohmann::json response;
        {
          py::gil_scoped_release release;
          response = parsed.is_discarded()
                         ? nlohmann::json{{"status", "bad_request"},
                                          {"error", {{"field", ""}, {"message", "invalid JSON"}}}}
                         : g.route(parsed);
        }
        return response.dump();
      });
}
