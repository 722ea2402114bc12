#include "nsforge/curve.hpp"

#include "nsforge/lattice.hpp"

namespace nsforge {

EndRing EndRing::integers() { return EndRing{1, IntMatrix{{1}}, IntVector{1}}; }

EndRing EndRing::zero() { return EndRing{0, IntMatrix(0, 0), IntVector{}}; }

EndRing EndRing::make(const IntMatrix& involution, const IntVector& unit) {
  const std::size_t m = involution.rows();
  if (involution.cols() != m) throw InputError("involution of the endomorphism ring must be square");
  if (unit.size() != m) throw InputError("unit has " + std::to_string(unit.size()) + " coordinates, expected " +
                                         std::to_string(m));
  if (!(involution * involution == IntMatrix::identity(m))) throw InputError("Rosati involution does not square to the identity");
  if (involution.apply(unit) != unit) throw InputError("Rosati involution does not fix the unit");
  return EndRing{m, involution, unit};
}

CurveModel CurveModel::make(std::size_t genus, const EndRing& end) {
  const EndRing checked = EndRing::make(end.involution, end.unit);
  if (genus == 0 && checked.module_rank != 0) throw InputError("genus 0 requires the zero endomorphism ring");
  if (genus > 0) {
    Integer g = 0;
    for (const auto& x : checked.unit) g = gcd(g, x);
    if (g != 1) throw InputError("unit of the endomorphism ring must be a primitive vector for genus >= 1");
  }
  CurveModel c;
  c.genus = genus;
  c.end = checked;
  const std::size_t m = checked.module_rank;
  c.ns_jc_rank = m - (m ? rank(checked.involution - IntMatrix::identity(m)) : 0);
  return c;
}

CurveModel CurveModel::generic(std::size_t genus) {
  return make(genus, genus == 0 ? EndRing::zero() : EndRing::integers());
}

IntMatrix hom_s_basis(std::size_t r, const EndRing& end) {
  const std::size_t m = end.module_rank;
  const std::size_t size = r * r * m;
  std::vector<Constraint> cons;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j)
      for (std::size_t t = 0; t < m; ++t) {
        // b_ji[t] - Σ_s J[t][s] b_ij[s] = 0
        IntVector coeffs(size);
        coeffs[(j * r + i) * m + t] += 1;
        for (std::size_t s = 0; s < m; ++s) coeffs[(i * r + j) * m + s] -= end.involution(t, s);
        cons.push_back(Constraint::equal(std::move(coeffs)));
      }
  return solution_lattice(cons, size);
}

bool is_hom_s(const IntVector& coords, std::size_t r, const EndRing& end) {
  const std::size_t m = end.module_rank;
  if (coords.size() != r * r * m) return false;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      for (std::size_t t = 0; t < m; ++t) {
        Integer v = 0;
        for (std::size_t s = 0; s < m; ++s) v += end.involution(t, s) * coords[(i * r + j) * m + s];
        if (v != coords[(j * r + i) * m + t]) return false;
      }
  return true;
}

IntVector pull_back_form(const IntMatrix& map, const IntVector& coords, std::size_t m) {
  const std::size_t t = map.rows(), r = map.cols();
  if (coords.size() != t * t * m) throw InputError("form coordinates do not match the map");
  IntVector out(r * r * m);
  for (std::size_t i = 0; i < t; ++i)
    for (std::size_t j = 0; j < t; ++j)
      for (std::size_t e = 0; e < m; ++e) {
        const Integer& v = coords[(i * t + j) * m + e];
        if (v == 0) continue;
        for (std::size_t a = 0; a < r; ++a) {
          if (map(i, a) == 0) continue;
          for (std::size_t b = 0; b < r; ++b) out[(a * r + b) * m + e] += map(i, a) * map(j, b) * v;
        }
      }
  return out;
}

} // namespace nsforge
