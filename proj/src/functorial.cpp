#include "nsforge/functorial.hpp"

namespace nsforge {

namespace {

IntVector iota_with_basis(const NSContext& ctx, const IntMatrix& torus_hom_s, const IntVector& delta,
                          const IntVector& x) {
  const RatVector xr = to_rational(x);
  const RatVector lin = ctx.linear_rows(ctx.group->coroot_coordinates(delta)).apply(xr);
  const RatVector raw = ctx.form_rows().apply(xr);
  if (!is_integral(lin) || !is_integral(raw))
    throw ComputationError("triple does not extend integrally to the cocharacter lattice");
  IntVector out = to_integer(lin);
  if (ctx.m > 0) {
    auto coords = hermite_coordinates(torus_hom_s, to_integer(raw));
    if (!coords) throw ComputationError("extended form is not symmetric for the involution");
    out.insert(out.end(), coords->begin(), coords->end());
  }
  return out;
}

IntMatrix columns(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

} // namespace

IntMatrix NSMap::lattice_matrix() const {
  IntMatrix out(target_basis.rows(), matrix.cols());
  for (std::size_t j = 0; j < matrix.cols(); ++j) {
    auto c = hermite_coordinates(target_basis, matrix.col(j));
    if (!c) throw ComputationError(label + ": image of basis vector " + std::to_string(j) + " is outside the target lattice");
    for (std::size_t i = 0; i < c->size(); ++i) out(i, j) = (*c)[i];
  }
  return out;
}

GroupHom GroupHom::make(const Reductive& source, const Reductive& target, const IntMatrix& cochar) {
  if (cochar.rows() != target.n() || cochar.cols() != source.n())
    throw InputError("cocharacter map " + source.name() + " -> " + target.name() + " must be " +
                     std::to_string(target.n()) + " x " + std::to_string(source.n()));
  GroupHom phi{source, target, cochar, IntMatrix(target.l(), source.l())};
  const RatMatrix tc = to_rational(target.coroots());
  for (std::size_t j = 0; j < source.l(); ++j) {
    const IntVector img = cochar.apply(source.coroots().row(j));
    std::optional<RatVector> c;
    if (target.l() > 0) c = solve_in_row_span(tc, to_rational(img));
    else if (std::all_of(img.begin(), img.end(), [](const Integer& v) { return v == 0; })) c = RatVector{};
    if (!c || !is_integral(*c))
      throw InputError("cocharacter map sends the coroot " + std::to_string(j) + " of " + source.name() +
                       " outside the coroot lattice of " + target.name());
    for (std::size_t i = 0; i < target.l(); ++i) phi.coroot_map(i, j) = (*c)[i].get_num();
  }
  return phi;
}

GroupHom GroupHom::compose(const GroupHom& inner) const {
  if (inner.target.n() != source.n()) throw InputError("composition of incompatible homomorphisms");
  return GroupHom{inner.source, target, cochar * inner.cochar, coroot_map * inner.coroot_map};
}

IntVector GroupHom::push_component(const IntVector& d) const {
  return target.component_of(cochar.apply(source.lift_component(d)));
}

NSLattice ns_maximal_torus(const Reductive& g, const CurveModel& curve) {
  NSLattice t;
  t.group = "T(" + g.name() + ")";
  t.component = IntVector(g.n());
  t.curve = curve;
  t.z = g.n();
  t.h = hom_s_basis(g.n(), curve.end).rows();
  t.basis = IntMatrix::identity(t.ambient());
  return t;
}

IntVector iota_apply(const NSContext& ctx, const IntVector& delta, const IntVector& x) {
  return iota_with_basis(ctx, hom_s_basis(ctx.group->n(), ctx.curve.end), delta, x);
}

NSMap iota_ns(const Reductive& g, const IntVector& delta, const CurveModel& curve) {
  const NSContext ctx(g, curve);
  const NSLattice src = ns_reductive_with_lift(g, delta, curve);
  const NSLattice tgt = ns_maximal_torus(g, curve);
  const IntMatrix torus_hom_s = hom_s_basis(g.n(), curve.end);
  std::vector<IntVector> cols;
  for (std::size_t r = 0; r < src.rank(); ++r) cols.push_back(iota_with_basis(ctx, torus_hom_s, delta, src.basis.row(r)));
  return NSMap{"iota(" + g.name() + ")", src.basis, tgt.basis, columns(cols, tgt.ambient())};
}

NSMap phi_ns(const GroupHom& phi, const IntVector& d, const CurveModel& curve, const std::optional<IntVector>& delta) {
  const Reductive& G = phi.source;
  const Reductive& H = phi.target;
  const IntVector dl = delta ? *delta : G.lift_component(d);
  if (G.component_of(dl) != G.pi1().normalize(d)) throw InputError("lift does not belong to the component");
  const IntVector eta = phi.cochar.apply(dl);
  const IntVector e = H.component_of(eta);

  const NSContext ctx_h(H, curve), ctx_g(G, curve);
  const NSLattice src = ns_reductive(H, e, curve);
  const NSLattice tgt = ns_reductive(G, d, curve);
  const IntMatrix torus_hom_s = hom_s_basis(H.n(), curve.end);
  const IntMatrix zeta = phi.cochar * ctx_g.zbasis.transpose(); // n_H x z_G
  const IntMatrix phit = phi.coroot_map.transpose();

  std::vector<IntVector> cols;
  for (std::size_t r = 0; r < src.rank(); ++r) {
    const IntVector x = src.basis.row(r);
    const IntVector img = iota_with_basis(ctx_h, torus_hom_s, eta, x);
    const IntVector lin(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(H.n()));
    IntVector out(ctx_g.ambient());
    for (std::size_t a = 0; a < ctx_g.z; ++a)
      for (std::size_t k = 0; k < H.n(); ++k) out[a] += lin[k] * zeta(k, a);
    if (ctx_g.m > 0 && ctx_g.z > 0) {
      IntVector raw(H.n() * H.n() * curve.end.module_rank);
      for (std::size_t i = 0; i < torus_hom_s.rows(); ++i)
        for (std::size_t c = 0; c < raw.size(); ++c) raw[c] += img[H.n() + i] * torus_hom_s(i, c);
      auto coords = hermite_coordinates(ctx_g.hom_s, pull_back_form(zeta, raw, curve.end.module_rank));
      if (!coords) throw ComputationError("restricted form is not symmetric for the involution");
      for (std::size_t k = 0; k < ctx_g.h; ++k) out[ctx_g.z + k] = (*coords)[k];
    }
    const IntMatrix pulled = phit * ctx_h.form_of(x) * phi.coroot_map;
    auto k = decompose_form(G, pulled);
    if (!k) throw ComputationError("pulled back form is not a combination of basic inner products of " + G.name());
    for (std::size_t f = 0; f < ctx_g.s; ++f) out[ctx_g.z + ctx_g.h + f] = (*k)[f];
    if (!tgt.contains(out)) throw ComputationError("pull-back leaves NS of " + G.name());
    cols.push_back(std::move(out));
  }
  return NSMap{"phi(" + G.name() + " -> " + H.name() + ")", src.basis, tgt.basis, columns(cols, tgt.ambient())};
}

NSMap qstar(const Reductive& g, const IntVector& d, const CurveModel& curve) {
  const NSContext ctx(g, curve);
  const NSLattice tgt = ns_reductive(g, d, curve);
  const IntMatrix q = qstar_matrix(ctx);
  if (rank(q) != q.cols()) throw ComputationError("q* is not injective for " + g.name());
  NSMap out{"qstar(" + g.name() + ")", IntMatrix::identity(q.cols()), tgt.basis, q};
  out.lattice_matrix();
  return out;
}

IntMatrix torus_pullback(const GroupHom& phi, const CurveModel& curve) {
  const std::size_t ng = phi.source.n(), nh = phi.target.n(), m = curve.end.module_rank;
  const IntMatrix hg = hom_s_basis(ng, curve.end);
  const IntMatrix hh = hom_s_basis(nh, curve.end);
  IntMatrix out(ng + hg.rows(), nh + hh.rows());
  for (std::size_t i = 0; i < nh; ++i)
    for (std::size_t a = 0; a < ng; ++a) out(a, i) = phi.cochar(i, a);
  for (std::size_t col = 0; col < hh.rows(); ++col) {
    auto coords = hermite_coordinates(hg, pull_back_form(phi.cochar, hh.row(col), m));
    if (!coords) throw ComputationError("pulled back torus form is not symmetric for the involution");
    for (std::size_t k = 0; k < hg.rows(); ++k) out(ng + k, nh + col) = (*coords)[k];
  }
  return out;
}

IntMatrix cartesian_lattice(const Reductive& g, const IntVector& delta, const CurveModel& curve) {
  const NSContext ctx(g, curve);
  const std::size_t n = g.n(), z = ctx.z, l = g.l(), m = ctx.m, amb = ctx.ambient();
  const std::size_t w = z + l; // rank of Λ_Z⁰ ⊕ Λ_G̃
  const IntMatrix torus_hom_s = hom_s_basis(n, curve.end);
  const std::size_t ht = torus_hom_s.rows();
  const std::size_t unknowns = amb + n + ht; // x, then y = (linear part, form coordinates)

  IntMatrix split(n, w); // Λ_Z⁰ ⊕ Λ_G̃ -> Λ_G
  for (std::size_t a = 0; a < z; ++a)
    for (std::size_t k = 0; k < n; ++k) split(k, a) = ctx.zbasis(a, k);
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t k = 0; k < n; ++k) split(k, z + j) = g.coroots()(j, k);

  const RatVector delta_bar = g.coroot_coordinates(delta);
  std::vector<Constraint> cons;
  auto add = [&](const RatVector& row) {
    const Integer den = common_denominator(row);
    IntVector c(row.size());
    for (std::size_t i = 0; i < row.size(); ++i) c[i] = Rational(row[i] * den).get_num();
    cons.push_back(Constraint::equal(std::move(c)));
  };

  // linear parts
  for (std::size_t c = 0; c < w; ++c) {
    RatVector row(unknowns);
    if (c < z) {
      row[c] = 1;
    } else {
      for (std::size_t f = 0; f < ctx.s; ++f) {
        Rational v = 0;
        for (std::size_t i = 0; i < l; ++i) v += delta_bar[i] * Rational(ctx.forms[f](i, c - z));
        row[z + ctx.h + f] = -v;
      }
    }
    for (std::size_t k = 0; k < n; ++k) row[amb + k] -= Rational(split(k, c));
    add(row);
  }
  // form parts
  std::vector<IntVector> pulled;
  for (std::size_t r = 0; r < ht; ++r) pulled.push_back(pull_back_form(split, torus_hom_s.row(r), m));
  for (std::size_t a = 0; a < w; ++a)
    for (std::size_t b = 0; b < w; ++b)
      for (std::size_t t = 0; t < m; ++t) {
        const std::size_t idx = (a * w + b) * m + t;
        RatVector row(unknowns);
        if (a < z && b < z) {
          for (std::size_t r = 0; r < ctx.h; ++r) row[z + r] = Rational(ctx.hom_s(r, (a * z + b) * m + t));
        } else if (a >= z && b >= z) {
          for (std::size_t f = 0; f < ctx.s; ++f)
            row[z + ctx.h + f] = Rational(curve.end.unit[t] * ctx.forms[f](a - z, b - z));
        }
        for (std::size_t r = 0; r < ht; ++r) row[amb + n + r] -= Rational(pulled[r][idx]);
        add(row);
      }
  const IntMatrix sol = solution_lattice(cons, unknowns);
  IntMatrix proj(sol.rows(), amb);
  for (std::size_t i = 0; i < sol.rows(); ++i)
    for (std::size_t j = 0; j < amb; ++j) proj(i, j) = sol(i, j);
  return hermite_basis(proj);
}

DynkinIndex dynkin_index(const GroupHom& phi) {
  if (phi.source.factors().size() != 1 || phi.target.factors().size() != 1)
    throw InputError("Dynkin index needs almost simple source and target");
  const IntMatrix pulled = phi.coroot_map.transpose() * phi.target.factor_form(0) * phi.coroot_map;
  if (pulled.is_zero()) return {Integer(0), true};
  const IntMatrix& bg = phi.source.factors()[0].form;
  if (pulled(0, 0) % bg(0, 0) != 0) throw ComputationError("pulled back basic form is not a multiple of the basic form");
  const Integer d = pulled(0, 0) / bg(0, 0);
  if (!(d * bg == pulled)) throw ComputationError("pulled back basic form is not a multiple of the basic form");
  return {d, false};
}

Integer dynkin_by_weights(const Reductive& g, const IntMatrix& weights) {
  if (g.factors().size() != 1) throw InputError("Dynkin index by weights needs an almost simple group");
  if (weights.cols() != g.n()) throw InputError("weights must have " + std::to_string(g.n()) + " coordinates");
  for (std::size_t k = 0; k < g.n(); ++k) {
    Integer s = 0;
    for (std::size_t i = 0; i < weights.rows(); ++i) s += weights(i, k);
    if (s != 0) throw InputError("weights do not sum to zero");
  }
  const IntMatrix& b = g.factors()[0].form;
  std::size_t shortest = 0;
  for (std::size_t i = 1; i < b.rows(); ++i)
    if (b(i, i) < b(shortest, shortest)) shortest = i;
  const IntVector coroot = g.coroots().row(g.factors()[0].type.nodes[shortest]);
  Integer sum = 0;
  for (std::size_t i = 0; i < weights.rows(); ++i) {
    const Integer p = dot(weights.row(i), coroot);
    sum += p * p;
  }
  if (sum % b(shortest, shortest) != 0) throw ComputationError("weight sum is not divisible by the short coroot norm");
  return sum / b(shortest, shortest);
}

GroupHom representation_hom(const Reductive& g, const IntMatrix& weights) {
  const std::size_t dim = weights.rows();
  if (dim < 2) throw InputError("a representation needs dimension at least 2");
  if (weights.cols() != g.n()) throw InputError("weights must have " + std::to_string(g.n()) + " coordinates");
  IntMatrix cochar(dim - 1, g.n());
  for (std::size_t j = 0; j + 1 < dim; ++j)
    for (std::size_t k = 0; k < g.n(); ++k) cochar(j, k) = (j ? cochar(j - 1, k) : Integer(0)) + weights(j, k);
  IntVector total(g.n());
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < g.n(); ++k) total[k] += weights(i, k);
  for (const auto& v : total)
    if (v != 0) throw InputError("weights do not sum to zero");
  return GroupHom::make(g, catalog("SL", static_cast<long>(dim)), cochar);
}

} // namespace nsforge
