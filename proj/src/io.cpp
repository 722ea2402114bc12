#include "nsforge/io.hpp"

#include <algorithm>
#include <sstream>

namespace nsforge::io {

Json to_json(const Integer& v) {
  if (v.fits_slong_p()) return Json(v.get_si());
  return Json(v.get_str());
}

Json to_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

Json to_json(const FinAbGroup& g) {
  return Json{{"free_rank", g.free_rank}, {"torsion", to_json(g.torsion)}, {"text", g.to_string()}};
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0) throw InputError("not an integer: " + j.get<std::string>());
    return v;
  }
  throw InputError("expected an integer, got " + j.dump());
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw InputError("expected an integer array, got " + j.dump());
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw InputError("expected a matrix (array of rows), got " + j.dump());
  if (j.empty()) return IntMatrix(0, cols);
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(vector_from_json(r));
  const std::size_t width = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != width) throw InputError("matrix rows have different lengths");
  return IntMatrix::from_rows(rows, width);
}

void reject_unknown_fields(const Json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw InputError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      throw InputError("unknown field '" + key + "' in " + where);
  }
}

namespace {

void check_schema(const Json& j, const std::string& where) {
  if (!j.contains("schema")) throw InputError(where + " lacks the \"schema\" field");
  if (j.at("schema") != kSchema) throw InputError(where + " has unsupported schema " + j.at("schema").dump());
}

Reductive factor_from_json(const Json& j) {
  if (j.contains("catalog")) {
    reject_unknown_fields(j, {"schema", "catalog", "n"}, "group factor");
    std::optional<long> n;
    if (j.contains("n")) n = j.at("n").get<long>();
    return catalog(j.at("catalog").get<std::string>(), n);
  }
  reject_unknown_fields(j, {"schema", "name", "n", "roots", "coroots"}, "group factor");
  for (const char* key : {"n", "roots", "coroots"})
    if (!j.contains(key)) throw InputError(std::string("group factor lacks \"") + key + "\"");
  const long n = j.at("n").get<long>();
  if (n < 0) throw InputError("group factor has negative rank");
  const auto dim = static_cast<std::size_t>(n);
  const IntMatrix roots = matrix_from_json(j.at("roots"), dim);
  const IntMatrix coroots = matrix_from_json(j.at("coroots"), dim);
  const std::string name = j.value("name", std::string("G"));
  return Reductive::derive(build_root_datum(dim, roots, coroots), name);
}

std::string matrix_text(const IntMatrix& m) {
  std::ostringstream s;
  s << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) s << (i ? ", " : "") << to_string(m.row(i));
  s << "]";
  return s.str();
}

} // namespace

std::vector<Reductive> groups_from_json(const Json& j) {
  check_schema(j, "group descriptor");
  if (j.contains("factors")) {
    reject_unknown_fields(j, {"schema", "factors"}, "group descriptor");
    if (!j.at("factors").is_array() || j.at("factors").empty())
      throw InputError("\"factors\" must be a nonempty array");
    std::vector<Reductive> out;
    for (const auto& f : j.at("factors")) out.push_back(factor_from_json(f));
    return out;
  }
  return {factor_from_json(j)};
}

Json group_to_json(const Reductive& g) {
  return Json{{"schema", kSchema},
              {"name", g.name()},
              {"n", g.n()},
              {"roots", to_json(g.roots())},
              {"coroots", to_json(g.coroots())}};
}

EndRing end_ring_from_json(const Json& j) {
  check_schema(j, "endomorphism ring");
  reject_unknown_fields(j, {"schema", "involution", "unit"}, "endomorphism ring");
  if (!j.contains("involution") || !j.contains("unit"))
    throw InputError("endomorphism ring needs \"involution\" and \"unit\"");
  const IntVector unit = vector_from_json(j.at("unit"));
  return EndRing::make(matrix_from_json(j.at("involution"), unit.size()), unit);
}

Json curve_to_json(const CurveModel& c) {
  return Json{{"genus", c.genus},
              {"end_rank", c.end.module_rank},
              {"involution", to_json(c.end.involution)},
              {"unit", to_json(c.end.unit)},
              {"ns_jc_rank", c.ns_jc_rank}};
}

Json ns_to_json(const NSLattice& ns) {
  return Json{{"schema", kSchema},
              {"group", ns.group},
              {"component", to_json(ns.component)},
              {"genus", ns.curve.genus},
              {"ambient", Json{{"z", ns.z}, {"h", ns.h}, {"s", ns.s}}},
              {"ns_rank", ns.rank()},
              {"ns_basis", to_json(ns.basis)}};
}

Json report_to_json(const PicardReport& r) {
  const auto& e = r.extension;
  return Json{{"schema", kSchema},
              {"group", r.group},
              {"component", to_json(r.component)},
              {"curve", curve_to_json(r.ns.curve)},
              {"pi1", to_json(r.pi1)},
              {"continuous_part", r.continuous_part},
              {"ambient", Json{{"z", r.ns.z}, {"h", r.ns.h}, {"s", r.ns.s}}},
              {"ns_basis", to_json(r.ns.basis)},
              {"ns_rank", r.ns.rank()},
              {"rank_formula", r.rank_formula},
              {"extension", Json{{"qstar_rank", e.qstar_rank},
                                 {"pr2_image", to_json(e.pr2_image)},
                                 {"exact", e.exact},
                                 {"characterized", to_json(e.characterized)},
                                 {"characterization_match", e.characterization_match}}}};
}

Json map_to_json(const NSMap& m) {
  return Json{{"schema", kSchema},
              {"label", m.label},
              {"source_basis", to_json(m.source_basis)},
              {"target_basis", to_json(m.target_basis)},
              {"matrix", to_json(m.matrix)},
              {"lattice_matrix", to_json(m.lattice_matrix())}};
}

std::string ns_to_text(const NSLattice& ns) {
  std::ostringstream s;
  s << "NS(M_" << ns.group << "^" << to_string(ns.component) << "), genus " << ns.curve.genus << "\n"
    << "  coordinates: l_Z " << ns.z << ", b_Z " << ns.h << ", basic forms " << ns.s << "\n"
    << "  rank " << ns.rank() << "\n"
    << "  basis " << matrix_text(ns.basis) << "\n";
  return s.str();
}

std::string report_to_text(const PicardReport& r) {
  const auto& e = r.extension;
  std::ostringstream s;
  s << "group           " << r.group << "\n"
    << "component       " << to_string(r.component) << "\n"
    << "genus           " << r.ns.curve.genus << "\n"
    << "pi1             " << r.pi1.to_string() << "\n"
    << "continuous part " << r.continuous_part << "\n"
    << "NS rank         " << r.ns.rank() << " (formula " << r.rank_formula << ")\n"
    << "NS basis        " << matrix_text(r.ns.basis) << "\n"
    << "q* rank         " << e.qstar_rank << "\n"
    << "pr2 image       " << matrix_text(e.pr2_image) << "\n"
    << "characterized   " << matrix_text(e.characterized) << (e.characterization_match ? " (match)" : " (MISMATCH)")
    << "\n"
    << "exact           " << (e.exact ? "yes" : "no") << "\n";
  return s.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

} // namespace nsforge::io
