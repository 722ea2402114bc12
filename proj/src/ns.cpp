#include "nsforge/ns.hpp"

namespace nsforge {

namespace {

Rational bilinear(const IntMatrix& b, const RatVector& u, const RatVector& v) {
  Rational s = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * Rational(b(i, j)) * v[j];
  }
  return s;
}

IntMatrix flatten(const std::vector<IntMatrix>& forms, std::size_t dim) {
  IntMatrix out(0, dim * dim);
  for (const auto& f : forms) out.append_row(f.data());
  return out;
}

} // namespace

NSContext::NSContext(const Reductive& g, const CurveModel& c) : group(&g), curve(c) {
  const std::size_t n = g.n(), l = g.l();
  zbasis = g.center_basis();
  z = zbasis.rows();
  m = curve.end.module_rank;
  IntMatrix stacked = zbasis;
  for (std::size_t i = 0; i < l; ++i) stacked.append_row(g.coroots().row(i));
  if (stacked.rows() != n) throw ComputationError("center and coroots do not span the cocharacter lattice rationally");
  const RatMatrix minv = n ? inverse(to_rational(stacked)) : RatMatrix(0, 0);
  zc = RatMatrix(n, z);
  pc = RatMatrix(n, l);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < z; ++a) zc(k, a) = minv(k, a);
    for (std::size_t j = 0; j < l; ++j) pc(k, j) = minv(k, z + j);
  }
  hom_s = hom_s_basis(z, curve.end);
  h = hom_s.rows();
  for (std::size_t f = 0; f < g.factors().size(); ++f) forms.push_back(g.factor_form(f));
  s = forms.size();
}

IntMatrix NSContext::form_of(const IntVector& x) const {
  const std::size_t l = group->l();
  IntMatrix b(l, l);
  for (std::size_t f = 0; f < s; ++f)
    if (x[z + h + f] != 0) b = b + x[z + h + f] * forms[f];
  return b;
}

IntVector NSContext::bz_of(const IntVector& x) const {
  IntVector out(z * z * m);
  for (std::size_t r = 0; r < h; ++r)
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += x[z + r] * hom_s(r, i);
  return out;
}

RatMatrix NSContext::linear_rows(const RatVector& delta_bar) const {
  const std::size_t n = group->n();
  RatMatrix rows(n, ambient());
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t a = 0; a < z; ++a) rows(k, a) = zc(k, a);
    const RatVector p = pc.row(k);
    for (std::size_t f = 0; f < s; ++f) rows(k, z + h + f) = -bilinear(forms[f], delta_bar, p);
  }
  return rows;
}

RatMatrix NSContext::form_rows() const {
  const std::size_t n = group->n();
  RatMatrix rows(n * n * m, ambient());
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      std::vector<Rational> forms_kl(s);
      for (std::size_t f = 0; f < s; ++f) forms_kl[f] = bilinear(forms[f], pc.row(k), pc.row(l));
      for (std::size_t t = 0; t < m; ++t) {
        const std::size_t row = (k * n + l) * m + t;
        for (std::size_t r = 0; r < h; ++r) {
          Rational v = 0;
          for (std::size_t a = 0; a < z; ++a) {
            if (zc(k, a) == 0) continue;
            for (std::size_t b = 0; b < z; ++b) v += zc(k, a) * zc(l, b) * Rational(hom_s(r, (a * z + b) * m + t));
          }
          rows(row, z + r) = v;
        }
        for (std::size_t f = 0; f < s; ++f) rows(row, z + h + f) = Rational(curve.end.unit[t]) * forms_kl[f];
      }
    }
  return rows;
}

NSTriple triple_of(const NSContext& ctx, const IntVector& x) {
  if (x.size() != ctx.ambient()) throw InputError("triple has wrong number of coordinates");
  NSTriple t;
  t.l_z.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(ctx.z));
  t.b_z = ctx.bz_of(x);
  t.b = ctx.form_of(x);
  return t;
}

bool NSLattice::contains(const IntVector& x) const {
  if (x.size() != ambient()) return false;
  return hermite_coordinates(basis, x).has_value();
}

bool satisfies_conditions(const NSContext& ctx, const IntVector& x, const IntVector& delta) {
  const RatVector xr = to_rational(x);
  const RatMatrix lin = ctx.linear_rows(ctx.group->coroot_coordinates(delta));
  if (!is_integral(lin.apply(xr))) return false;
  return is_integral(ctx.form_rows().apply(xr));
}

std::size_t rank_formula(const Reductive& g, const CurveModel& curve) {
  const std::size_t r = g.abelian_rank();
  return r + r * curve.ns_jc_rank + r * (r - 1) / 2 * curve.end.module_rank + g.factors().size();
}

NSLattice ns_reductive_with_lift(const Reductive& g, const IntVector& delta, const CurveModel& curve) {
  const NSContext ctx(g, curve);
  std::vector<Constraint> cons = Constraint::integral(ctx.linear_rows(g.coroot_coordinates(delta)));
  for (auto& c : Constraint::integral(ctx.form_rows())) cons.push_back(std::move(c));
  NSLattice out;
  out.group = g.name();
  out.component = g.component_of(delta);
  out.curve = curve;
  out.z = ctx.z;
  out.h = ctx.h;
  out.s = ctx.s;
  out.basis = solution_lattice(cons, ctx.ambient());
  const std::size_t expected = rank_formula(g, curve);
  if (out.rank() != expected)
    throw ComputationError("rank of NS(" + g.name() + ") is " + std::to_string(out.rank()) +
                           " but the rank formula gives " + std::to_string(expected));
  return out;
}

NSLattice ns_reductive(const Reductive& g, const IntVector& d, const CurveModel& curve) {
  return ns_reductive_with_lift(g, g.lift_component(d), curve);
}

NSLattice ns_torus(const Reductive& t, const CurveModel& curve) {
  if (t.l() != 0) throw InputError("ns_torus needs a group without roots, " + t.name() + " has roots");
  return ns_reductive(t, IntVector(t.pi1_group().num_generators()), curve);
}

bool is_ns_simply_connected_form(const Reductive& g, const IntMatrix& form) {
  const std::size_t l = g.l();
  if (form.rows() != l || form.cols() != l) return false;
  if (!(form.transpose() == form)) return false;
  for (std::size_t i = 0; i < l; ++i)
    if (form(i, i) % 2 != 0) return false;
  for (const auto& s : g.coroot_reflections())
    if (!(s.transpose() * form * s == form)) return false;
  return true;
}

std::optional<IntVector> decompose_form(const Reductive& g, const IntMatrix& form) {
  const std::size_t l = g.l();
  if (form.rows() != l || form.cols() != l) return std::nullopt;
  IntVector k(g.factors().size());
  IntMatrix rebuilt(l, l);
  for (std::size_t f = 0; f < g.factors().size(); ++f) {
    const std::size_t i = g.factors()[f].type.nodes.front();
    const Integer& bii = g.factors()[f].form(0, 0);
    if (form(i, i) % bii != 0) return std::nullopt;
    k[f] = form(i, i) / bii;
    rebuilt = rebuilt + k[f] * g.factor_form(f);
  }
  if (!(rebuilt == form)) return std::nullopt;
  return k;
}

NSLattice ns_simply_connected(const Reductive& g) {
  if (!g.pi1_group().is_trivial()) throw InputError(g.name() + " is not simply connected");
  const std::size_t l = g.l();
  const auto inv = invariant_symmetric_forms(g.coroot_reflections(), l);
  std::vector<Constraint> even;
  for (std::size_t a = 0; a < l; ++a) {
    IntVector coeffs(inv.size());
    for (std::size_t i = 0; i < inv.size(); ++i) coeffs[i] = inv[i](a, a);
    even.push_back(Constraint::divisible(std::move(coeffs), 2));
  }
  const IntMatrix sol = solution_lattice(even, inv.size());
  std::vector<IntMatrix> even_forms;
  for (std::size_t r = 0; r < sol.rows(); ++r) {
    IntMatrix f(l, l);
    for (std::size_t i = 0; i < inv.size(); ++i) f = f + sol(r, i) * inv[i];
    even_forms.push_back(std::move(f));
  }
  std::vector<IntMatrix> basic;
  for (std::size_t f = 0; f < g.factors().size(); ++f) basic.push_back(g.factor_form(f));
  if (!same_lattice(flatten(even_forms, l), flatten(basic, l)))
    throw ComputationError("even invariant forms of " + g.name() + " differ from the basic inner products");

  NSLattice out;
  out.group = g.name();
  out.curve = CurveModel::generic(0);
  out.s = basic.size();
  out.basis = IntMatrix::identity(out.s);
  return out;
}

std::string hom_pi1_jacobian(const Reductive& g) {
  const FinAbGroup& p = g.pi1_group();
  std::vector<std::string> parts;
  if (p.free_rank == 1) parts.emplace_back("J_C");
  if (p.free_rank > 1) parts.push_back("J_C^" + std::to_string(p.free_rank));
  for (const auto& t : p.torsion) parts.push_back("J_C[" + t.get_str() + "]");
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
  return s;
}

IntMatrix qstar_matrix(const NSContext& ctx) {
  const Reductive& g = *ctx.group;
  const IntMatrix q = g.pi1().free_projection() * ctx.zbasis.transpose(); // r x z
  const std::size_t r = q.rows(), z = ctx.z, m = ctx.m;
  const IntMatrix src_hom = hom_s_basis(r, ctx.curve.end);
  IntMatrix out(ctx.ambient(), r + src_hom.rows());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t a = 0; a < z; ++a) out(a, i) = q(i, a);
  for (std::size_t col = 0; col < src_hom.rows(); ++col) {
    const IntVector raw = pull_back_form(q, src_hom.row(col), m);
    auto coords = hermite_coordinates(ctx.hom_s, raw);
    if (!coords) throw ComputationError("pulled back form is not symmetric for the involution");
    for (std::size_t k = 0; k < ctx.h; ++k) out(z + k, r + col) = (*coords)[k];
  }
  return out;
}

ExtensionAnalysis ns_extension_analysis(const Reductive& g, const IntVector& d, const CurveModel& curve) {
  const NSContext ctx(g, curve);
  const NSLattice ns = ns_reductive(g, d, curve);
  const std::size_t s = ctx.s, amb = ctx.ambient(), first = ctx.z + ctx.h;
  ExtensionAnalysis out;

  IntMatrix lk(ns.rank(), s);
  for (std::size_t i = 0; i < ns.rank(); ++i)
    for (std::size_t f = 0; f < s; ++f) lk(i, f) = ns.basis(i, first + f);
  out.pr2_image = hermite_basis(lk);
  const IntMatrix coeffs = integer_kernel(lk.transpose());
  out.kernel_pr2 = hermite_basis(coeffs * ns.basis);

  const IntMatrix q = qstar_matrix(ctx);
  out.qstar_rank = rank(q);
  out.qstar_image = hermite_basis(q.transpose());
  if (out.qstar_image.rows() == 0) out.qstar_image = IntMatrix(0, amb);
  if (out.kernel_pr2.rows() == 0) out.kernel_pr2 = IntMatrix(0, amb);
  out.exact = same_lattice(out.kernel_pr2, out.qstar_image) && out.qstar_rank == q.cols();

  std::vector<RatVector> left;
  if (curve.genus >= 1) {
    for (std::size_t i = 0; i < g.gbar_lattice().rank(); ++i) left.push_back(g.gbar_lattice().basis().row(i));
  } else {
    left.push_back(g.coroot_coordinates(g.lift_component(d)));
  }
  std::vector<Constraint> cons;
  for (const auto& u : left)
    for (std::size_t j = 0; j < g.gprime_lattice().rank(); ++j) {
      const RatVector v = g.gprime_lattice().basis().row(j);
      RatVector c(s);
      for (std::size_t f = 0; f < s; ++f) c[f] = bilinear(ctx.forms[f], u, v);
      cons.push_back(Constraint::integral(c));
    }
  out.characterized = solution_lattice(cons, s);
  out.characterization_match = same_lattice(out.characterized, out.pr2_image);
  return out;
}

PicardReport picard_report(const Reductive& g, const IntVector& d, const CurveModel& curve) {
  PicardReport r;
  r.group = g.name();
  r.component = g.pi1().normalize(d);
  r.pi1 = g.pi1_group();
  r.continuous_part = hom_pi1_jacobian(g);
  r.ns = ns_reductive(g, d, curve);
  r.rank_formula = rank_formula(g, curve);
  r.extension = ns_extension_analysis(g, d, curve);
  return r;
}

} // namespace nsforge
