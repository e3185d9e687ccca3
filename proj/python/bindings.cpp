#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conelab/classify.hpp"
#include "conelab/errors.hpp"
#include "conelab/runner.hpp"

namespace py = pybind11;
using namespace conelab;

namespace {

// Structured results cross the boundary as JSON text; the Python side decodes them.
std::string run_checks_json(const std::optional<std::string>& registry_json, const std::string& checks,
                            std::uint64_t seed, double tol, std::size_t jobs) {
  CheckOptions opts;
  opts.checks = parse_check_list(checks);
  opts.seed = seed;
  opts.tol = tol;
  opts.jobs = jobs;
  const Registry reg = registry_json ? parse_registry(*registry_json, "<python>") : builtin_fixtures();
  py::gil_scoped_release release;
  return run_checks(reg, opts).to_json().dump();
}

std::string classify_json(const std::string& procedure, std::size_t max_rank, std::size_t summands) {
  if (procedure == "local-tomography") return survivors_local_tomography(max_rank).to_json().dump();
  if (procedure == "injective-composite") return survivors_injective_composite(max_rank).to_json().dump();
  if (procedure == "classicality") return survivors_classicality(max_rank, summands).to_json().dump();
  throw ParseError("unknown procedure \"" + procedure + "\"");
}

JordanAlgebra make_algebra(const std::vector<std::pair<std::string, std::size_t>>& summands) {
  std::vector<SimpleFactor> fs;
  for (const auto& [name, param] : summands) {
    switch (parse_family(name)) {
      case Family::RealSym: fs.push_back(SimpleFactor::real_sym(param)); break;
      case Family::ComplexHerm: fs.push_back(SimpleFactor::complex_herm(param)); break;
      case Family::QuatHerm: fs.push_back(SimpleFactor::quat_herm(param)); break;
      case Family::SpinFactor: fs.push_back(SimpleFactor::spin(param)); break;
      case Family::Albert: throw Unsupported("the Albert algebra is not constructible");
    }
  }
  return JordanAlgebra(std::move(fs));
}

CompositeSystem composite_fixture(const std::string& name) {
  const Registry reg = builtin_fixtures();
  const FixtureSpec* spec = reg.find(name);
  if (!spec || spec->kind != FixtureKind::Composite) throw PreconditionViolation("no composite fixture \"" + name + "\"");
  return *build_fixture(reg, *spec).composite;
}

}  // namespace

PYBIND11_MODULE(_conelab, m) {
  m.doc() = "Order-theoretic checks on cones, Euclidean Jordan algebras and composites";
  m.attr("__version__") = CONELAB_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", base.ptr());
  py::register_exception<Unsupported>(m, "Unsupported", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  m.def("builtin_registry_json", [] { return registry_to_json(builtin_fixtures()).dump(); });
  m.def("run_checks_json", &run_checks_json, py::arg("registry_json") = py::none(), py::arg("checks") = "all",
        py::arg("seed") = 0, py::arg("tol") = kSpectralTol, py::arg("jobs") = 1);
  m.def("classify_json", &classify_json, py::arg("procedure"), py::arg("max_rank") = 8, py::arg("summands") = 1);

  py::class_<JordanAlgebra>(m, "JordanAlgebra")
      .def(py::init(&make_algebra), py::arg("summands"),
           "Direct sum of simple factors given as (family, rank) pairs; spin factors take their dimension.")
      .def_property_readonly("dim", &JordanAlgebra::dim)
      .def_property_readonly("rank", &JordanAlgebra::rank)
      .def("describe", &JordanAlgebra::describe)
      .def("unit", &JordanAlgebra::unit)
      .def("product", &JordanAlgebra::product)
      .def("trace_inner", &JordanAlgebra::trace_inner)
      .def("eigenvalues", [](const JordanAlgebra& a, const Vector& x) { return a.spectral(x).eigenvalues; })
      .def("random_element", [](const JordanAlgebra& a, std::uint64_t seed) {
        Rng rng(seed);
        return a.random_element(rng);
      }, py::arg("seed") = 0)
      .def("random_pure", [](const JordanAlgebra& a, std::uint64_t seed) {
        Rng rng(seed);
        return a.random_pure(rng);
      }, py::arg("seed") = 0);

  m.def(
      "canonical_state",
      [](const std::string& fixture) { return canonical_self_steering_state(composite_fixture(fixture)); },
      py::arg("fixture"));
  m.def(
      "steer_json",
      [](const std::string& fixture, const std::vector<Vector>& ensemble, const std::optional<Vector>& state) {
        const CompositeSystem c = composite_fixture(fixture);
        const Vector w = state ? *state : canonical_self_steering_state(c);
        return to_json(steer(c, w, ensemble)).dump();
      },
      py::arg("fixture"), py::arg("ensemble"), py::arg("state") = py::none());
}
