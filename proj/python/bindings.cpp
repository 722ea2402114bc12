#include "nsforge/cli.hpp"
#include "nsforge/functorial.hpp"
#include "nsforge/io.hpp"
#include "nsforge/oracle.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace nsforge;

namespace {

py::int_ to_py(const Integer& v) {
  if (v.fits_slong_p()) return py::int_(v.get_si());
  return py::reinterpret_steal<py::int_>(PyLong_FromString(v.get_str().c_str(), nullptr, 10));
}

py::list to_py(const IntVector& v) {
  py::list out;
  for (const auto& x : v) out.append(to_py(x));
  return out;
}

py::list to_py(const IntMatrix& m) {
  py::list out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.append(to_py(m.row(i)));
  return out;
}

Integer from_py(const py::handle& h) { return Integer(py::str(h).cast<std::string>()); }

IntVector vector_from_py(const py::sequence& s) {
  IntVector v;
  for (const auto& x : s) v.push_back(from_py(x));
  return v;
}

IntMatrix matrix_from_py(const py::sequence& rows, std::size_t cols) {
  std::vector<IntVector> out;
  for (const auto& r : rows) out.push_back(vector_from_py(r.cast<py::sequence>()));
  if (!out.empty()) cols = out[0].size();
  return IntMatrix::from_rows(out, cols);
}

CurveModel make_curve(std::size_t genus, const std::optional<py::sequence>& involution,
                      const std::optional<py::sequence>& unit) {
  if (!involution && !unit) return CurveModel::generic(genus);
  if (!involution || !unit) throw InputError("an endomorphism ring needs both involution and unit");
  const IntVector u = vector_from_py(*unit);
  return CurveModel::make(genus, EndRing::make(matrix_from_py(*involution, u.size()), u));
}

py::object json_loads(const io::Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Neron-Severi lattices of moduli of G-bundles (C++ core)";

  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ComputationError>(m, "ComputationError", PyExc_RuntimeError);

  py::class_<Reductive>(m, "Group")
      .def_property_readonly("name", &Reductive::name)
      .def_property_readonly("n", &Reductive::n)
      .def_property_readonly("semisimple_rank", &Reductive::l)
      .def_property_readonly("roots", [](const Reductive& g) { return to_py(g.roots()); })
      .def_property_readonly("coroots", [](const Reductive& g) { return to_py(g.coroots()); })
      .def_property_readonly("cartan", [](const Reductive& g) { return to_py(g.cartan()); })
      .def_property_readonly("type", [](const Reductive& g) { return g.datum().type_string(); })
      .def_property_readonly("pi1", [](const Reductive& g) { return g.pi1_group().to_string(); })
      .def_property_readonly("pi1_free_rank", [](const Reductive& g) { return g.pi1_group().free_rank; })
      .def_property_readonly("pi1_torsion", [](const Reductive& g) { return to_py(g.pi1_group().torsion); })
      .def_property_readonly("center_basis", [](const Reductive& g) { return to_py(g.center_basis()); })
      .def_property_readonly("basic_forms", [](const Reductive& g) {
        py::list out;
        for (std::size_t f = 0; f < g.factors().size(); ++f) out.append(to_py(g.factor_form(f)));
        return out;
      })
      .def("component_of", [](const Reductive& g, const py::sequence& v) { return to_py(g.component_of(vector_from_py(v))); })
      .def("lift_component", [](const Reductive& g, const py::sequence& d) { return to_py(g.lift_component(vector_from_py(d))); })
      .def("__repr__", [](const Reductive& g) { return "<Group " + g.name() + " " + g.datum().type_string() + ">"; });

  m.def("catalog", [](const std::string& name, std::optional<long> n) { return catalog(name, n); }, py::arg("name"),
        py::arg("n") = py::none(), "Catalog group by name, e.g. GL2, PGL3, SL2xT1.");
  m.def("standard_catalog", &standard_catalog);
  m.def(
      "group_from_root_datum",
      [](std::size_t n, const py::sequence& roots, const py::sequence& coroots, const std::string& name) {
        return Reductive::derive(build_root_datum(n, matrix_from_py(roots, n), matrix_from_py(coroots, n)), name);
      },
      py::arg("n"), py::arg("roots"), py::arg("coroots"), py::arg("name") = "G");
  m.def("product", &product);

  m.def(
      "ns_basis",
      [](const Reductive& g, const py::sequence& d, std::size_t genus, std::optional<py::sequence> involution,
         std::optional<py::sequence> unit) {
        return to_py(ns_reductive(g, vector_from_py(d), make_curve(genus, involution, unit)).basis);
      },
      py::arg("group"), py::arg("component"), py::arg("genus") = 2, py::arg("involution") = py::none(),
      py::arg("unit") = py::none(), "Hermite basis of NS(M_G^d) in ambient coordinates.");
  m.def(
      "ns_bruteforce",
      [](const Reductive& g, const py::sequence& d, std::size_t genus) {
        return to_py(oracle::ns_reductive_bruteforce(g, vector_from_py(d), CurveModel::generic(genus)));
      },
      py::arg("group"), py::arg("component"), py::arg("genus") = 2);
  m.def(
      "rank_formula",
      [](const Reductive& g, std::size_t genus, std::optional<py::sequence> involution, std::optional<py::sequence> unit) {
        return rank_formula(g, make_curve(genus, involution, unit));
      },
      py::arg("group"), py::arg("genus") = 2, py::arg("involution") = py::none(), py::arg("unit") = py::none());
  m.def(
      "report",
      [](const Reductive& g, const py::sequence& d, std::size_t genus) {
        return json_loads(io::report_to_json(picard_report(g, vector_from_py(d), CurveModel::generic(genus))));
      },
      py::arg("group"), py::arg("component"), py::arg("genus") = 2, "Picard report as a dict.");
  m.def(
      "pullback",
      [](const Reductive& source, const Reductive& target, const py::sequence& cochar, const py::sequence& d,
         std::size_t genus) {
        const auto phi = GroupHom::make(source, target, matrix_from_py(cochar, source.n()));
        return json_loads(io::map_to_json(phi_ns(phi, vector_from_py(d), CurveModel::generic(genus))));
      },
      py::arg("source"), py::arg("target"), py::arg("cochar"), py::arg("component"), py::arg("genus") = 2,
      "Pull-back NS(M_H^e) -> NS(M_G^d) along G -> H as a dict with bases and matrices.");
  m.def(
      "dynkin_index",
      [](const Reductive& source, const Reductive& target, const py::sequence& cochar) {
        return to_py(dynkin_index(GroupHom::make(source, target, matrix_from_py(cochar, source.n()))).value);
      },
      py::arg("source"), py::arg("target"), py::arg("cochar"));
  m.def(
      "dynkin_by_weights",
      [](const Reductive& g, const py::sequence& weights) { return to_py(dynkin_by_weights(g, matrix_from_py(weights, g.n()))); },
      py::arg("group"), py::arg("weights"));
  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "nsforge");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command line front end; returns (exit code, stdout, stderr).");
}
