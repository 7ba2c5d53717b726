// Python bindings. Manifolds cross the boundary as gm/1 JSON text; reports
// come back as JSON text and are decoded on the Python side.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "graphmanifold/charge.hpp"
#include "graphmanifold/cli.hpp"
#include "graphmanifold/errors.hpp"
#include "graphmanifold/generators.hpp"
#include "graphmanifold/invariants.hpp"
#include "graphmanifold/json_io.hpp"
#include "graphmanifold/report.hpp"
#include "graphmanifold/transform.hpp"

namespace py = pybind11;

namespace {

gm::GraphManifold load(const std::string& text, bool transpose) { return gm::parse_manifold(text, {transpose}); }

gm::RandomTarget parse_target(const std::string& name) {
  for (auto t : {gm::RandomTarget::TypeTwoUnit, gm::RandomTarget::Unconstrained, gm::RandomTarget::MixedSecondary})
    if (gm::target_name(t) == name) return t;
  throw std::invalid_argument("unknown target " + name);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact invariants and transformations of 4-dimensional graph-manifolds";

  auto base = py::register_exception<gm::Error>(m, "GraphManifoldError", PyExc_RuntimeError);
  py::register_exception<gm::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<gm::InvalidManifold>(m, "InvalidManifold", base.ptr());
  py::register_exception<gm::PreconditionFailed>(m, "PreconditionFailed", base.ptr());
  py::register_exception<gm::TypeObstruction>(m, "TypeObstruction", base.ptr());
  py::register_exception<gm::SecondaryIndexObstruction>(m, "SecondaryIndexObstruction", base.ptr());
  py::register_exception<gm::SearchBudgetExceeded>(m, "SearchBudgetExceeded", base.ptr());
  py::register_exception<gm::BudgetExceeded>(m, "BudgetExceeded", base.ptr());

  m.def("normalize", [](const std::string& text, bool transpose) { return gm::dump_document(gm::parse_document(text, {transpose})); },
        py::arg("text"), py::arg("transpose_gluing") = false);
  m.def("validate", [](const std::string& text) { return gm::validation_json(gm::validate(load(text, false))).dump(); },
        py::arg("text"));
  m.def(
      "invariants",
      [](const std::string& text, bool transpose) {
        gm::GraphManifold g = load(text, transpose);
        gm::require_valid(g);
        return gm::invariants_json(g, gm::compute_invariants(g)).dump();
      },
      py::arg("text"), py::arg("transpose_gluing") = false);
  m.def(
      "charge",
      [](const std::string& text) {
        gm::GraphManifold g = load(text, false);
        gm::require_valid(g);
        return gm::charge_json(g, gm::compute_invariants(g)).dump();
      },
      py::arg("text"));
  m.def(
      "check_orthogonal",
      [](const std::string& text) {
        gm::GraphManifold g = load(text, false);
        return gm::verdict_json(gm::orthogonality_criterion(g)).dump();
      },
      py::arg("text"));
  m.def(
      "witness",
      [](const std::string& text, std::size_t max_blocks) {
        gm::GraphManifold g = load(text, false);
        gm::require_valid(g);
        return gm::witness_json(g, gm::orthogonality_witness(g, max_blocks)).dump();
      },
      py::arg("text"), py::arg("max_blocks") = 24);
  m.def(
      "reglue",
      [](const std::string& text) {
        gm::GraphManifold g = load(text, false);
        gm::require_valid(g);
        return gm::reglue_json(gm::reglue(g)).dump();
      },
      py::arg("text"));
  m.def(
      "unwind",
      [](const std::string& text) {
        gm::GraphManifold g = load(text, false);
        gm::require_valid(g);
        return gm::unwind_json(gm::unwind(g)).dump();
      },
      py::arg("text"));
  m.def(
      "orthogonalize",
      [](const std::string& text) {
        gm::GraphManifold g = load(text, false);
        gm::require_valid(g);
        return gm::pipeline_json(gm::orthogonalize(g)).dump();
      },
      py::arg("text"));

  m.def("generate_cycle", [](std::size_t k, bool perturbed) { return gm::dump_manifold(gm::gen_cycle_example(k, perturbed)); },
        py::arg("k") = 3, py::arg("perturbed") = false);
  m.def("generate_alternating", [](std::size_t k) { return gm::dump_manifold(gm::gen_alternating_cycle(k)); },
        py::arg("k") = 4);
  m.def(
      "generate_random",
      [](std::uint64_t seed, const std::string& target, std::size_t min_vertices, std::size_t max_vertices) {
        gm::RandomOptions o;
        o.target = parse_target(target);
        o.min_vertices = min_vertices;
        o.max_vertices = max_vertices;
        return gm::dump_manifold(gm::gen_random(seed, o));
      },
      py::arg("seed"), py::arg("target") = "i1j1type2", py::arg("min_vertices") = 2, py::arg("max_vertices") = 8);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args, const std::string& stdin_text) {
        std::istringstream in(stdin_text);
        std::ostringstream out, err;
        int code = gm::run_cli(args, in, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), py::arg("stdin") = "");
}
