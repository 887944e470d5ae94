// Python module: diagrams travel as opaque Diagram objects or MCD text.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cablegraph/analysis.hpp"
#include "cablegraph/corpus.hpp"
#include "cablegraph/mcd.hpp"
#include "cablegraph/moves.hpp"
#include "cablegraph/planner.hpp"

namespace py = pybind11;
using namespace cablegraph;

namespace {

KnotClass class_or_throw(const std::string& name) {
  auto kind = knot_class_from_name(name);
  if (!kind) throw py::value_error("unknown knot class '" + name + "'");
  return *kind;
}

py::dict visit_dict(const Visit& v) {
  py::dict d;
  d["crossing"] = v.crossing;
  d["depth"] = v.depth;
  return d;
}

py::dict step_dict(const TraceStep& s) {
  py::dict d;
  d["step"] = s.index;
  d["kind"] = to_string(s.action.kind);
  d["targets"] = describe_targets(s.action);
  d["grasp"] = s.action.grasp;
  d["potential_before"] = s.potential_before;
  d["potential_after"] = s.potential_after;
  d["executed"] = s.executed;
  d["spawned"] = s.spawned ? py::cast(*s.spawned) : py::none();
  return d;
}

std::optional<NoiseConfig> noise_from(double p_fail, double p_spawn, std::uint64_t seed) {
  if (p_fail == 0.0 && p_spawn == 0.0) return std::nullopt;
  NoiseConfig cfg{p_fail, p_spawn, seed};
  check_noise(cfg);
  return cfg;
}

}  // namespace

PYBIND11_MODULE(cablegraph, m) {
  m.doc() = "Multi-cable knot diagrams, reduction analysis and a disentangling planner";

  // Translators run newest first, so the base class goes in before its subclasses.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<MoveError>(m, "MoveError", PyExc_RuntimeError);

  py::class_<Diagram>(m, "Diagram")
      .def(py::init<>())
      .def_property_readonly("cables",
                             [](const Diagram& d) {
                               py::dict out;
                               for (const auto& [id, visits] : d.cables()) {
                                 py::list l;
                                 for (const auto& v : visits) l.append(visit_dict(v));
                                 out[py::cast(id)] = l;
                               }
                               return out;
                             })
      .def_property_readonly("crossings",
                             [](const Diagram& d) {
                               std::vector<CrossingId> ids;
                               for (const auto& [id, c] : d.crossings()) ids.push_back(id);
                               return ids;
                             })
      .def_property_readonly("endpoint_order",
                             [](const Diagram& d) {
                               std::vector<std::string> out;
                               for (const auto& e : d.endpoint_order()) out.push_back(to_string(e));
                               return out;
                             })
      .def_property_readonly("terminated", &Diagram::terminated)
      .def_property_readonly("live_cable_count", &Diagram::live_cable_count)
      .def("workspace_empty", &Diagram::workspace_empty)
      .def("arity", [](const Diagram& d, CrossingId id) {
        const Crossing* c = d.find_crossing(id);
        if (!c) throw py::key_error("no crossing " + std::to_string(id));
        return c->arity();
      })
      .def("__eq__", [](const Diagram& a, const Diagram& b) { return a == b; })
      .def("__repr__", [](const Diagram& d) {
        return "<Diagram cables=" + std::to_string(d.live_cable_count()) +
               " crossings=" + std::to_string(d.crossings().size()) + ">";
      });

  m.def("parse_mcd", [](const std::string& text) { return parse_mcd(text); }, py::arg("text"));
  m.def("serialize_mcd", &serialize_mcd, py::arg("diagram"));
  m.def("read_mcd_file", &read_mcd_file, py::arg("path"));
  m.def("write_mcd_file", &write_mcd_file, py::arg("path"), py::arg("diagram"));
  m.def(
      "validate",
      [](const Diagram& d) {
        std::vector<std::string> out;
        for (const auto& v : validate(d).violations) out.push_back(v.kind + " " + v.subject + (v.detail.empty() ? "" : ": " + v.detail));
        return out;
      },
      py::arg("diagram"), "Violation messages; empty when the diagram is well formed.");
  m.def("potential", &potential, py::arg("diagram"));

  m.def(
      "classify_trivial",
      [](const Diagram& d) {
        auto report = classify_trivial(d);
        return py::make_tuple(report.trivial, report.reduced);
      },
      py::arg("diagram"), "Returns (trivial crossing ids, reduced diagram).");
  m.def("is_semi_disentangled", py::overload_cast<const Diagram&, CableId>(&is_semi_disentangled),
        py::arg("diagram"), py::arg("cable"));

  m.def("knot_classes", [] {
    std::vector<std::string> out;
    for (KnotClass k : all_knot_classes()) out.push_back(to_string(k));
    return out;
  });
  m.def(
      "tier",
      [](const std::string& name) { return tier_of(class_or_throw(name)); }, py::arg("knot"));
  m.def(
      "generate",
      [](const std::string& name, unsigned n, unsigned slack) {
        return generate(KnotSpec{class_or_throw(name), n, slack});
      },
      py::arg("knot"), py::arg("n") = 0, py::arg("slack") = 0);
  m.def("generate_random", &generate_random, py::arg("seed"), py::arg("cables"), py::arg("crossings"));

  m.def(
      "plan_step",
      [](const Diagram& d, bool did_initial_reidemeister) {
        const Action a = plan_step(d, did_initial_reidemeister);
        return py::make_tuple(to_string(a.kind), describe_targets(a));
      },
      py::arg("diagram"), py::arg("did_initial_reidemeister") = false,
      "Next action as (kind, target description).");

  m.def(
      "run",
      [](const Diagram& d, std::size_t budget, double p_fail, double p_spawn, std::uint64_t seed) {
        const RolloutTrace t = run(d, Budget{budget}, noise_from(p_fail, p_spawn, seed));
        py::list steps;
        for (const auto& s : t.steps) steps.append(step_dict(s));
        py::dict out;
        out["outcome"] = to_string(t.outcome);
        out["disentangling_actions"] = t.disentangling_actions;
        out["recovery_actions"] = t.recovery_actions;
        out["total_actions"] = t.total_actions;
        out["steps"] = steps;
        out["final_diagram"] = t.final_diagram;
        out["detail"] = t.detail;
        return out;
      },
      py::arg("diagram"), py::arg("budget") = 30, py::arg("p_fail") = 0.0, py::arg("p_spawn") = 0.0,
      py::arg("seed") = 0);

  m.def(
      "bfs_solve",
      [](const Diagram& d, std::size_t max_depth, std::size_t max_states) {
        const OracleResult r = bfs_solve(d, max_depth, max_states);
        py::dict out;
        out["status"] = to_string(r.status);
        out["min_moves"] = r.min_moves ? py::cast(*r.min_moves) : py::none();
        out["states"] = r.states;
        if (r.witness) {
          py::list w;
          for (const auto& a : *r.witness) w.append(py::make_tuple(to_string(a.kind), describe_targets(a)));
          out["witness"] = w;
          out["witness_replays"] = replay_witness(d, *r.witness);
        } else {
          out["witness"] = py::none();
        }
        return out;
      },
      py::arg("diagram"), py::arg("max_depth") = 12, py::arg("max_states") = 2'000'000);
}
