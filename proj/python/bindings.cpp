#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "chabauty/cli.hpp"
#include "chabauty/descriptors.hpp"
#include "chabauty/errors.hpp"
#include "chabauty/heisenberg.hpp"
#include "chabauty/invariants.hpp"
#include "chabauty/metric.hpp"
#include "chabauty/sphere.hpp"

namespace py = pybind11;
using namespace chabauty;

namespace {

// Descriptors cross the boundary as JSON text; the Python side wraps them in dicts.
std::string dist_json(const std::string& space, const std::string& lhs, const std::string& rhs, double tol) {
  MetricConfig cfg;
  cfg.tol = tol;
  Space s = parse_space(space);
  auto a = view_of(parse_descriptor(s, json::parse(lhs)));
  auto b = view_of(parse_descriptor(s, json::parse(rhs)));
  auto d = chabauty_distance(*a, *b, cfg);
  return json{{"distance", d.distance}, {"lower", d.lower}}.dump();
}

std::string classify_c(const std::string& desc) {
  auto c = parse_subgroup_c(json::parse(desc));
  json out = to_json(c);
  if (c.is_lattice()) out["covolume"] = covolume(c);
  return out.dump();
}

std::string forward(std::complex<double> a, std::complex<double> b) {
  return to_json(forward_f(SpherePoint::finite(a, b))).dump();
}

py::object inverse(const std::string& desc) {
  auto p = inverse_f(parse_subgroup_c(json::parse(desc)));
  if (p.infinite) return py::none();
  return py::make_tuple(p.a, p.b);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "closed subgroups of R, C and the Heisenberg group";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<NumericFailure>(m, "NumericFailure", PyExc_ArithmeticError);
  py::register_exception<EnumerationOverflow>(m, "EnumerationOverflow");

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        auto r = cli::run(args);
        return py::make_tuple(r.exit_code, r.payload.dump());
      },
      py::arg("args"));

  m.def("g_prime", [](const std::string& desc) { return extended_g_prime(parse_subgroup_c(json::parse(desc))); });
  m.def("invert_g", [](std::complex<double> a, std::complex<double> b, double tol) {
    return to_json(invert_g(a, b, tol)).dump();
  }, py::arg("a"), py::arg("b"), py::arg("tol") = 1e-9);
  m.def("klein_j", &klein_j);
  m.def("classify_c", &classify_c);
  m.def("dual", [](const std::string& desc) { return to_json(dual(parse_subgroup_c(json::parse(desc)))).dump(); });
  m.def("distance", &dist_json, py::arg("space"), py::arg("lhs"), py::arg("rhs"), py::arg("tol") = 1e-3);
  m.def("forward_f", &forward);
  m.def("inverse_f", &inverse);
  m.def("center_index", [](const std::string& desc) {
    auto s = parse_heis(json::parse(desc));
    auto* l = std::get_if<HeisSubgroup::Lattice>(&s.data());
    if (!l) throw DomainError("not a lattice in H");
    return center_index(l->lattice);
  });
  m.def("heis_label", [](const std::string& desc) { return classify_heis(parse_heis(json::parse(desc))).label; });
}
