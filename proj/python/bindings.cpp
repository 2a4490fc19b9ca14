#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <vector>

#include "ordfix/instance_io.hpp"
#include "ordfix/runner.hpp"

namespace py = pybind11;
using namespace ordfix;

namespace {

std::vector<Element> to_starts(const ProblemInstance& instance,
                               const std::vector<double>& raw) {
  std::vector<Element> out;
  for (double v : raw) {
    if (instance.space.is_finite()) {
      out.push_back(Element::finite(static_cast<int>(v)));
    } else {
      out.push_back(Element::scalar(v));
    }
  }
  return out;
}

py::tuple outcome_tuple(const RunOutcome& outcome) {
  return py::make_tuple(outcome.exit_code, outcome.report.to_json_text());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fixed point certification and iteration on ordered partial metric spaces";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ExprParseError", PyExc_ValueError);
  py::register_exception<EvalError>(m, "EvalError", PyExc_ValueError);

  py::class_<ProblemInstance>(m, "Instance")
      .def_property_readonly("label",
                             [](const ProblemInstance& i) { return i.label; })
      .def_property_readonly(
          "is_finite", [](const ProblemInstance& i) { return i.space.is_finite(); })
      .def_readwrite("tol", &ProblemInstance::tol)
      .def_readwrite("max_iter", &ProblemInstance::max_iter)
      .def_readwrite("samples", &ProblemInstance::sample_count)
      .def_readwrite("seed", &ProblemInstance::seed)
      .def("__repr__", [](const ProblemInstance& i) {
        return "<ordfix.Instance '" + i.label + "'>";
      });

  m.def("load_instance",
        [](const std::string& path) { return load_instance(path); },
        py::arg("path"), "Load and validate an instance document");
  m.def("parse_instance_text",
        [](const std::string& text) { return parse_instance_text(text); },
        py::arg("text"));
  m.def("instance_json",
        [](const ProblemInstance& i) { return instance_to_json_text(i); },
        py::arg("instance"));

  m.def("gallery_names", &gallery_names);
  m.def(
      "gallery_instance",
      [](const std::string& name) {
        std::optional<GalleryEntry> entry = find_gallery_entry(name);
        if (!entry) throw DomainError("unknown gallery entry '" + name + "'");
        return entry->instance;
      },
      py::arg("name"));
  m.def(
      "run_gallery",
      [](const std::string& name) {
        std::optional<GalleryEntry> entry = find_gallery_entry(name);
        if (!entry) throw DomainError("unknown gallery entry '" + name + "'");
        return outcome_tuple(run_gallery_entry(*entry));
      },
      py::arg("name"), "Returns (exit_code, report_json)");

  m.def(
      "certify",
      [](const ProblemInstance& instance) {
        return outcome_tuple(run_certify(instance));
      },
      py::arg("instance"), "Returns (exit_code, report_json)");
  m.def(
      "solve",
      [](const ProblemInstance& instance, const std::vector<double>& extra_starts) {
        return outcome_tuple(run_solve(instance, to_starts(instance, extra_starts)));
      },
      py::arg("instance"), py::arg("extra_starts") = std::vector<double>{},
      "Returns (exit_code, report_json)");

  m.def(
      "eval_expr",
      [](const std::string& text, std::optional<double> x, std::optional<double> y,
         std::optional<double> t) {
        EvalEnv env;
        env.x = x;
        env.y = y;
        env.t = t;
        return evaluate(*parse_expr(text), env);
      },
      py::arg("text"), py::arg("x") = std::nullopt, py::arg("y") = std::nullopt,
      py::arg("t") = std::nullopt,
      "Evaluate a distance/map/control expression at a point");
}
