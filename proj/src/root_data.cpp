#include "nsforge/root_data.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace nsforge {

namespace {

std::string entry_text(const IntMatrix& c, std::size_t i, std::size_t j) {
  return "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " + c(i, j).get_str();
}

[[noreturn]] void not_cartan(const std::string& why) { throw InputError("not a Cartan matrix: " + why); }

CartanComponent classify_component(const IntMatrix& c, std::vector<std::size_t> nodes) {
  std::sort(nodes.begin(), nodes.end());
  const std::size_t k = nodes.size();
  CartanComponent comp;
  comp.nodes = nodes;
  comp.rank = k;

  std::map<std::size_t, std::vector<std::size_t>> adj;
  std::size_t edges = 0;
  std::vector<std::pair<std::size_t, std::size_t>> multiple; // (long, short)
  bool triple = false;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a + 1; b < k; ++b) {
      const std::size_t i = nodes[a], j = nodes[b];
      if (c(i, j) == 0) continue;
      adj[i].push_back(j);
      adj[j].push_back(i);
      ++edges;
      const Integer prod = c(i, j) * c(j, i);
      if (prod == 2 || prod == 3) {
        const bool i_long = c(i, j) != -1;
        multiple.emplace_back(i_long ? i : j, i_long ? j : i);
        triple = triple || prod == 3;
      }
    }
  if (edges + 1 != k) not_cartan("Dynkin graph contains a cycle");

  // leading principal minors of a finite type Cartan matrix are positive
  for (std::size_t m = 1; m <= k; ++m) {
    std::vector<std::size_t> idx(nodes.begin(), nodes.begin() + static_cast<std::ptrdiff_t>(m));
    if (determinant(c.select_rows(idx).select_cols(idx)) <= 0) not_cartan("not of finite type");
  }

  if (k == 1) {
    comp.family = 'A';
    return comp;
  }
  if (multiple.size() > 1) not_cartan("more than one multiple bond");

  std::vector<std::size_t> leaves, branch;
  for (auto i : nodes) {
    if (adj[i].size() == 1) leaves.push_back(i);
    if (adj[i].size() > 3) not_cartan("Dynkin graph has a node of degree > 3");
    if (adj[i].size() == 3) branch.push_back(i);
  }

  if (triple) {
    if (k != 2) not_cartan("triple bond outside G2");
    comp.family = 'G';
    return comp;
  }
  if (!multiple.empty()) {
    if (!branch.empty()) not_cartan("branched graph with a double bond");
    if (k == 2) {
      comp.family = 'B';
      return comp;
    }
    const auto [lg, sh] = multiple[0];
    const bool long_leaf = adj[lg].size() == 1;
    const bool short_leaf = adj[sh].size() == 1;
    if (short_leaf) {
      comp.family = 'B';
      return comp;
    }
    if (long_leaf) {
      comp.family = 'C';
      return comp;
    }
    if (k == 4) {
      comp.family = 'F';
      return comp;
    }
    not_cartan("double bond in the interior of a graph of rank " + std::to_string(k));
  }

  if (branch.empty()) {
    comp.family = 'A';
    return comp;
  }
  if (branch.size() > 1) not_cartan("Dynkin graph has two branch nodes");
  std::vector<std::size_t> arms;
  for (auto start : adj[branch[0]]) {
    std::size_t len = 1, prev = branch[0], cur = start;
    while (adj[cur].size() == 2) {
      const std::size_t next = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) {
    comp.family = 'D';
    return comp;
  }
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) {
    comp.family = 'E';
    return comp;
  }
  not_cartan("branched graph of infinite type");
}

IntMatrix cartan_from(const IntMatrix& roots, const IntMatrix& coroots) { return roots * coroots.transpose(); }

} // namespace

std::vector<CartanComponent> classify_cartan(const IntMatrix& c) {
  const std::size_t l = c.rows();
  if (c.cols() != l) not_cartan("matrix is not square");
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) {
      if (i == j) {
        if (c(i, i) != 2) not_cartan(entry_text(c, i, j));
        continue;
      }
      if (c(i, j) > 0) not_cartan(entry_text(c, i, j));
      if ((c(i, j) == 0) != (c(j, i) == 0)) not_cartan(entry_text(c, i, j) + " but its transpose is not zero");
      const Integer prod = c(i, j) * c(j, i);
      if (prod > 3) not_cartan(entry_text(c, i, j));
    }
  std::vector<int> seen(l, -1);
  std::vector<CartanComponent> out;
  for (std::size_t s = 0; s < l; ++s) {
    if (seen[s] >= 0) continue;
    std::vector<std::size_t> nodes;
    std::deque<std::size_t> queue{s};
    seen[s] = static_cast<int>(out.size());
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      nodes.push_back(i);
      for (std::size_t j = 0; j < l; ++j)
        if (j != i && c(i, j) != 0 && seen[j] < 0) {
          seen[j] = static_cast<int>(out.size());
          queue.push_back(j);
        }
    }
    out.push_back(classify_component(c, nodes));
  }
  return out;
}

IntMatrix cartan_of_type(char family, std::size_t rank) {
  const std::size_t k = rank;
  IntMatrix c(k, k);
  auto link = [&](std::size_t i, std::size_t j) { c(i, j) = c(j, i) = -1; };
  for (std::size_t i = 0; i < k; ++i) c(i, i) = 2;
  switch (family) {
  case 'A':
    if (k < 1) break;
    for (std::size_t i = 0; i + 1 < k; ++i) link(i, i + 1);
    return c;
  case 'B':
  case 'C':
    if (k < 2) break;
    for (std::size_t i = 0; i + 1 < k; ++i) link(i, i + 1);
    // B: α_k short, C: α_k long
    if (family == 'B') c(k - 2, k - 1) = -2;
    else c(k - 1, k - 2) = -2;
    return c;
  case 'D':
    if (k < 3) break;
    for (std::size_t i = 0; i + 2 < k; ++i) link(i, i + 1);
    link(k - 3, k - 1);
    return c;
  case 'E':
    if (k < 6 || k > 8) break;
    link(0, 2);
    link(1, 3);
    for (std::size_t i = 2; i + 1 < k; ++i) link(i, i + 1);
    return c;
  case 'F':
    if (k != 4) break;
    link(0, 1);
    link(1, 2);
    link(2, 3);
    c(1, 2) = -2;
    return c;
  case 'G':
    if (k != 2) break;
    c(0, 1) = -1;
    c(1, 0) = -3;
    return c;
  default:
    break;
  }
  throw InputError(std::string("invalid Dynkin type ") + family + std::to_string(rank));
}

std::string RootDatum::type_string() const {
  std::string s;
  for (const auto& c : cartan_type) s += (s.empty() ? "" : "x") + c.name();
  const std::size_t central = n - semisimple_rank();
  if (central > 0) s += (s.empty() ? "" : "x") + std::string("T") + std::to_string(central);
  return s.empty() ? "trivial" : s;
}

RootDatum build_root_datum(std::size_t n, const IntMatrix& roots, const IntMatrix& coroots) {
  const std::size_t l = roots.rows();
  if (coroots.rows() != l) throw InputError("number of simple roots and simple coroots differ");
  if (l > 0 && (roots.cols() != n || coroots.cols() != n))
    throw InputError("simple roots and coroots must have " + std::to_string(n) + " coordinates");
  RootDatum d;
  d.n = n;
  d.simple_roots = l ? roots : IntMatrix(0, n);
  d.simple_coroots = l ? coroots : IntMatrix(0, n);
  if (l > 0 && rank(coroots) != l) throw InputError("coroots dependent");
  d.cartan = l ? cartan_from(roots, coroots) : IntMatrix(0, 0);
  d.cartan_type = classify_cartan(d.cartan);
  return d;
}

// ---------------------------------------------------------------------------

Reductive Reductive::derive(const RootDatum& datum, std::string name) {
  Reductive g;
  g.datum_ = datum;
  g.name_ = name.empty() ? datum.type_string() : std::move(name);
  const std::size_t n = datum.n, l = datum.semisimple_rank();

  g.coroot_lattice_ = RationalSubgroup::generated_by(n, datum.simple_coroots);
  g.center_lattice_ = RationalSubgroup::generated_by(n, integer_kernel(datum.simple_roots));
  g.derived_lattice_ = saturate(g.coroot_lattice_);

  if (l > 0) {
    const RatMatrix cinv = inverse(to_rational(datum.cartan));
    g.projection_ = cinv * to_rational(datum.simple_roots);
    g.gbar_lattice_ = RationalSubgroup::generated_by(l, g.projection_.transpose());
    g.gad_lattice_ = RationalSubgroup::generated_by(l, cinv.transpose());
    g.gprime_lattice_ = RationalSubgroup::generated_by(l, g.derived_lattice_.basis() * g.projection_.transpose());
  } else {
    g.projection_ = RatMatrix(0, n);
    g.gbar_lattice_ = g.gad_lattice_ = g.gprime_lattice_ = RationalSubgroup::zero(0);
  }
  g.pi1_ = QuotientPresentation(n, datum.simple_coroots);

  for (const auto& comp : datum.cartan_type) {
    const IntMatrix c = datum.cartan.select_rows(comp.nodes).select_cols(comp.nodes);
    g.factors_.push_back({comp, basic_inner_product(c)});
  }
  return g;
}

RatVector Reductive::coroot_coordinates(const IntVector& v) const {
  if (v.size() != n()) throw InputError("vector length does not match the cocharacter lattice");
  return projection_.apply(to_rational(v));
}

IntVector Reductive::lift_component(const IntVector& d) const {
  return reduce_modulo(pi1_.lift(d), coroots());
}

IntMatrix Reductive::factor_form(std::size_t f) const {
  const auto& fac = factors_.at(f);
  IntMatrix out(l(), l());
  for (std::size_t a = 0; a < fac.type.nodes.size(); ++a)
    for (std::size_t b = 0; b < fac.type.nodes.size(); ++b) out(fac.type.nodes[a], fac.type.nodes[b]) = fac.form(a, b);
  return out;
}

std::vector<IntMatrix> Reductive::simple_reflections() const {
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < l(); ++i) {
    IntMatrix s = IntMatrix::identity(n());
    for (std::size_t a = 0; a < n(); ++a)
      for (std::size_t b = 0; b < n(); ++b) s(a, b) -= coroots()(i, a) * roots()(i, b);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

std::vector<IntMatrix> reflections_from_cartan(const IntMatrix& c) {
  const std::size_t l = c.rows();
  std::vector<IntMatrix> out;
  for (std::size_t i = 0; i < l; ++i) {
    IntMatrix s = IntMatrix::identity(l);
    for (std::size_t b = 0; b < l; ++b) s(i, b) -= c(i, b);
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace

std::vector<IntMatrix> Reductive::coroot_reflections() const { return reflections_from_cartan(cartan()); }

std::vector<IntMatrix> invariant_symmetric_forms(const std::vector<IntMatrix>& reflections, std::size_t dim) {
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = a; b < dim; ++b) {
      index[{a, b}] = unknowns.size();
      unknowns.emplace_back(a, b);
    }
  std::vector<Constraint> cons;
  for (const auto& s : reflections)
    for (std::size_t p = 0; p < dim; ++p)
      for (std::size_t q = p; q < dim; ++q) {
        IntVector coeffs(unknowns.size());
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
          const auto [a, b] = unknowns[u];
          coeffs[u] = s(a, p) * s(b, q);
          if (a != b) coeffs[u] += s(b, p) * s(a, q);
        }
        coeffs[index[{p, q}]] -= 1;
        cons.push_back(Constraint::equal(std::move(coeffs)));
      }
  const IntMatrix sol = solution_lattice(cons, unknowns.size());
  std::vector<IntMatrix> out;
  for (std::size_t r = 0; r < sol.rows(); ++r) {
    IntMatrix f(dim, dim);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      const auto [a, b] = unknowns[u];
      f(a, b) = f(b, a) = sol(r, u);
    }
    out.push_back(std::move(f));
  }
  return out;
}

IntMatrix basic_inner_product(const IntMatrix& cartan) {
  const auto comps = classify_cartan(cartan);
  if (comps.size() != 1) throw InputError("basic inner product requested for a factor that is not almost simple");
  const auto forms = invariant_symmetric_forms(reflections_from_cartan(cartan), cartan.rows());
  if (forms.size() != 1) throw ComputationError("invariant forms of an irreducible root system are not of rank one");
  IntMatrix g = forms[0];
  if (g(0, 0) < 0) g = Integer(-1) * g;
  Integer min_diag = g(0, 0);
  for (std::size_t i = 0; i < g.rows(); ++i) min_diag = std::min(min_diag, Integer(g(i, i)));
  if (min_diag <= 0) throw ComputationError("invariant form is not positive");
  Rational factor(2, min_diag);
  factor.canonicalize();
  const RatMatrix scaled = factor * to_rational(g);
  if (!is_integral(scaled)) throw ComputationError("basic inner product is not integral");
  IntMatrix b = to_integer(scaled);
  for (std::size_t m = 1; m <= b.rows(); ++m) {
    std::vector<std::size_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = i;
    if (determinant(b.select_rows(idx).select_cols(idx)) <= 0)
      throw ComputationError("basic inner product is not positive definite");
  }
  return b;
}

IntMatrix basic_inner_product(const Reductive& g, std::size_t factor) {
  if (factor >= g.factors().size()) throw InputError("factor index out of range");
  return g.factors()[factor].form;
}

std::vector<IntVector> all_coroots(const IntMatrix& cartan) {
  const auto refl = reflections_from_cartan(cartan);
  const std::size_t l = cartan.rows();
  std::set<IntVector> seen;
  std::deque<IntVector> queue;
  for (std::size_t i = 0; i < l; ++i) {
    IntVector e(l);
    e[i] = 1;
    if (seen.insert(e).second) queue.push_back(e);
  }
  while (!queue.empty()) {
    const IntVector v = queue.front();
    queue.pop_front();
    for (const auto& s : refl) {
      IntVector w = s.apply(v);
      if (seen.insert(w).second) queue.push_back(std::move(w));
    }
  }
  return {seen.begin(), seen.end()};
}

IntVector find_injective_lift(const Reductive& g, const IntVector& d, std::size_t genus) {
  IntVector delta = g.lift_component(d);
  if (genus >= 1) return delta;
  const RatVector bar = g.coroot_coordinates(delta);
  for (const auto& f : g.factors()) {
    bool vanishes = true;
    for (auto i : f.type.nodes) vanishes = vanishes && bar[i] == 0;
    if (!vanishes) continue;
    const IntVector a = g.coroots().row(f.type.nodes.front());
    for (std::size_t k = 0; k < delta.size(); ++k) delta[k] += a[k];
  }
  return delta;
}

GhatExtension ghat_extension(const Reductive& g, const IntVector& d) {
  const std::size_t n = g.n(), l = g.l();
  const IntVector delta = g.lift_component(d);
  IntMatrix gens(0, n + 1);
  for (std::size_t i = 0; i < l; ++i) {
    IntVector row = g.coroots().row(i);
    row.push_back(0);
    gens.append_row(row);
  }
  IntVector top = delta;
  top.push_back(1);
  gens.append_row(top);

  GhatExtension out;
  out.basis = hermite_basis(gens);
  const std::size_t m = out.basis.rows();
  if (m != l + 1) throw ComputationError("extension lattice has unexpected rank");

  IntMatrix coroots(l, m), roots(l, m);
  for (std::size_t i = 0; i < l; ++i) {
    auto c = hermite_coordinates(out.basis, gens.row(i));
    if (!c) throw ComputationError("coroot outside the extension lattice");
    coroots.set_row(i, *c);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t a = 0; a < n; ++a) roots(i, k) += g.roots()(i, a) * out.basis(k, a);
  }
  out.pi_hat = IntMatrix(n, m);
  out.dt = IntMatrix(1, m);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t a = 0; a < n; ++a) out.pi_hat(a, k) = out.basis(k, a);
    out.dt(0, k) = out.basis(k, n);
  }
  out.ghat = Reductive::derive(build_root_datum(m, roots, coroots), "hat(" + g.name() + ")");

  const FinAbGroup& p = out.ghat.pi1_group();
  out.pi1_is_z = p.free_rank == 1 && p.torsion.empty();
  if (out.pi1_is_z) {
    out.generator = out.ghat.pi1().lift({Integer(1)});
    const Integer t = out.dt.apply(out.generator)[0];
    if (t == -1)
      for (auto& x : out.generator) x = -x;
    else if (t != 1)
      throw ComputationError("generator of the extension has degree " + t.get_str());
    out.generator_maps_to_d = g.component_of(out.pi_hat.apply(out.generator)) == g.pi1().normalize(d);
  }
  return out;
}

MappingCone mapping_cone(const Reductive& g) {
  const IntMatrix zb = g.center_basis();
  const std::size_t z = zb.rows(), n = g.n(), l = g.l();
  MappingCone mc;
  mc.f = IntMatrix(z + n, z + l);
  for (std::size_t i = 0; i < z; ++i) {
    mc.f(i, i) = 1;
    for (std::size_t a = 0; a < n; ++a) mc.f(z + a, i) = -zb(i, a);
  }
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t a = 0; a < n; ++a) mc.f(z + a, z + j) = -g.coroots()(j, a);

  const std::size_t gens = g.pi1_group().num_generators();
  mc.g = IntMatrix(gens, z + n);
  auto image = [&](const IntVector& x) {
    IntVector v(x.begin() + static_cast<std::ptrdiff_t>(z), x.end());
    for (std::size_t i = 0; i < z; ++i)
      for (std::size_t a = 0; a < n; ++a) v[a] += x[i] * zb(i, a);
    return g.component_of(v);
  };
  for (std::size_t k = 0; k < z + n; ++k) {
    IntVector e(z + n);
    e[k] = 1;
    const IntVector c = image(e);
    for (std::size_t i = 0; i < gens; ++i) mc.g(i, k) = c[i];
  }

  mc.composite_zero = true;
  for (std::size_t j = 0; j < z + l; ++j)
    mc.composite_zero = mc.composite_zero && image(mc.f.col(j)) == IntVector(gens);
  mc.injective = rank(mc.f) == z + l;
  mc.cokernel_matches = cokernel(mc.f) == g.pi1_group();

  IntMatrix with_relations(gens, z + n + g.pi1_group().torsion.size());
  for (std::size_t i = 0; i < gens; ++i)
    for (std::size_t k = 0; k < z + n; ++k) with_relations(i, k) = mc.g(i, k);
  for (std::size_t t = 0; t < g.pi1_group().torsion.size(); ++t) with_relations(t, z + n + t) = g.pi1_group().torsion[t];
  mc.surjective = cokernel(with_relations).is_trivial();
  return mc;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

Reductive simply_connected_of(const IntMatrix& c, const std::string& name) {
  return Reductive::derive(build_root_datum(c.rows(), c, IntMatrix::identity(c.rows())), name);
}

Reductive adjoint_of(const IntMatrix& c, const std::string& name) {
  return Reductive::derive(build_root_datum(c.rows(), IntMatrix::identity(c.rows()), c.transpose()), name);
}

Reductive torus(std::size_t r, const std::string& name) {
  return Reductive::derive(build_root_datum(r, IntMatrix(0, r), IntMatrix(0, r)), name);
}

IntVector unit(std::size_t n, std::size_t i, long s = 1) {
  IntVector v(n);
  v[i] = s;
  return v;
}

IntVector diff(std::size_t n, std::size_t i, std::size_t j) {
  IntVector v(n);
  v[i] = 1;
  v[j] = -1;
  return v;
}

// Realisations of the classical groups on the standard torus.
void classical_type_b(std::size_t m, IntMatrix& roots, IntMatrix& coroots) {
  roots = IntMatrix(0, m);
  coroots = IntMatrix(0, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    roots.append_row(diff(m, i, i + 1));
    coroots.append_row(diff(m, i, i + 1));
  }
  roots.append_row(unit(m, m - 1));
  coroots.append_row(unit(m, m - 1, 2));
}

void classical_type_c(std::size_t m, IntMatrix& roots, IntMatrix& coroots) {
  roots = IntMatrix(0, m);
  coroots = IntMatrix(0, m);
  for (std::size_t i = 0; i + 1 < m; ++i) {
    roots.append_row(diff(m, i, i + 1));
    coroots.append_row(diff(m, i, i + 1));
  }
  roots.append_row(unit(m, m - 1, 2));
  coroots.append_row(unit(m, m - 1));
}

void classical_type_d(std::size_t m, IntMatrix& roots, IntMatrix& coroots) {
  roots = IntMatrix(0, m);
  for (std::size_t i = 0; i + 1 < m; ++i) roots.append_row(diff(m, i, i + 1));
  IntVector last(m);
  last[m - 2] = 1;
  last[m - 1] = 1;
  roots.append_row(last);
  coroots = roots;
}

Reductive special_orthogonal(long size, bool spin, const std::string& name) {
  if (size < 3) throw InputError("SO and Spin need matrix size at least 3");
  const std::size_t m = static_cast<std::size_t>(size / 2);
  IntMatrix roots, coroots;
  if (size % 2) classical_type_b(m, roots, coroots);
  else classical_type_d(m, roots, coroots);
  if (!spin) return Reductive::derive(build_root_datum(m, roots, coroots), name);
  return simply_connected_of(roots * coroots.transpose(), name);
}

Reductive single(const std::string& family, std::optional<long> n, const std::string& name) {
  static const std::map<std::string, std::pair<char, std::size_t>> exceptional = {
      {"E6", {'E', 6}}, {"E7", {'E', 7}}, {"E8", {'E', 8}}, {"F4", {'F', 4}}, {"G2", {'G', 2}}};
  if (auto it = exceptional.find(family); it != exceptional.end())
    return simply_connected_of(cartan_of_type(it->second.first, it->second.second), name);
  if (family.size() == 4 && family.substr(2) == "ad")
    if (auto it = exceptional.find(family.substr(0, 2)); it != exceptional.end())
      return adjoint_of(cartan_of_type(it->second.first, it->second.second), name);

  if (!n) throw InputError("catalog group " + family + " needs a size");
  const long k = *n;
  if (family == "T" || family == "torus") {
    if (k < 0) throw InputError("invalid rank for a torus");
    return torus(static_cast<std::size_t>(k), name);
  }
  if (family == "SL" || family == "PGL" || family == "GL") {
    if (k < 1 || (k < 2 && family != "GL")) throw InputError("invalid rank for " + family);
    const std::size_t s = static_cast<std::size_t>(k);
    if (family == "SL") return simply_connected_of(cartan_of_type('A', s - 1), name);
    if (family == "PGL") return adjoint_of(cartan_of_type('A', s - 1), name);
    IntMatrix roots(0, s);
    for (std::size_t i = 0; i + 1 < s; ++i) roots.append_row(diff(s, i, i + 1));
    return Reductive::derive(build_root_datum(s, roots, roots), name);
  }
  if (family == "Sp") {
    if (k < 2 || k % 2) throw InputError("Sp needs an even matrix size");
    IntMatrix roots, coroots;
    classical_type_c(static_cast<std::size_t>(k / 2), roots, coroots);
    return Reductive::derive(build_root_datum(static_cast<std::size_t>(k / 2), roots, coroots), name);
  }
  if (family == "SO") return special_orthogonal(k, false, name);
  if (family == "Spin") return special_orthogonal(k, true, name);
  throw InputError("unknown catalog group " + family);
}

} // namespace

Reductive product(const std::vector<Reductive>& groups) {
  if (groups.size() == 1) return groups[0];
  std::vector<IntMatrix> roots, coroots;
  std::size_t n = 0;
  std::string name;
  for (const auto& g : groups) {
    roots.push_back(g.roots());
    coroots.push_back(g.coroots());
    n += g.n();
    name += (name.empty() ? "" : "x") + g.name();
  }
  return Reductive::derive(build_root_datum(n, block_diagonal(roots), block_diagonal(coroots)), name);
}

Reductive catalog(const std::string& name, std::optional<long> n) {
  if (name.find('x') != std::string::npos) {
    std::vector<Reductive> parts;
    std::size_t start = 0;
    while (start <= name.size()) {
      const std::size_t end = std::min(name.find('x', start), name.size());
      parts.push_back(catalog(name.substr(start, end - start), n));
      start = end + 1;
    }
    return product(parts);
  }
  static const std::vector<std::string> families = {"torus", "Spin", "PGL", "GL", "SL", "Sp", "SO", "T"};
  for (const auto& ex : {"E6ad", "E7ad", "E8ad", "F4ad", "G2ad", "E6", "E7", "E8", "F4", "G2"})
    if (name == ex) return single(name, std::nullopt, name);
  for (const auto& fam : families) {
    if (name.rfind(fam, 0) != 0) continue;
    const std::string suffix = name.substr(fam.size());
    std::optional<long> size;
    if (suffix.empty() || suffix == "n") {
      size = n;
    } else if (std::all_of(suffix.begin(), suffix.end(), [](unsigned char ch) { return std::isdigit(ch); }) &&
               suffix.size() < 6) {
      size = std::stol(suffix);
    } else {
      continue;
    }
    if (!size) throw InputError("catalog group " + name + " needs a size (use a numeral or --n)");
    return single(fam, size, fam + std::to_string(*size));
  }
  throw InputError("unknown catalog group '" + name + "'");
}

std::vector<std::pair<std::string, std::string>> catalog_families() {
  return {
      {"SLn", "special linear group, simply connected, type A(n-1)"},
      {"GLn", "general linear group"},
      {"PGLn", "projective linear group, adjoint, type A(n-1)"},
      {"Spn", "symplectic group of matrix size n (even), type C(n/2)"},
      {"SOn", "special orthogonal group of matrix size n >= 3"},
      {"Spinn", "spin group of matrix size n >= 3, simply connected"},
      {"Tn", "split torus of rank n (also torusn)"},
      {"E6, E7, E8, F4, G2", "simply connected exceptional groups"},
      {"E6ad, E7ad, E8ad, F4ad, G2ad", "adjoint exceptional groups"},
      {"AxB", "products, e.g. GL2xSL3"},
  };
}

std::vector<std::string> standard_catalog() {
  return {"SL2",  "SL3",  "SL4",  "SL5",  "GL1",  "GL2",  "GL3",   "GL4",   "PGL2",  "PGL3", "PGL4",
          "Sp4",  "Sp6",  "Sp8",  "SO3",  "SO4",  "SO5",  "SO6",   "SO7",   "SO8",   "SO9",  "Spin5",
          "Spin6", "Spin7", "Spin8", "Spin9", "G2", "F4", "E6",  "E7",    "E8",    "E6ad", "E7ad",
          "T1",   "T2",   "T3",   "GL2xSL2", "SL2xSL3", "PGL2xT1", "SL2xPGL2", "GL2xGL2", "SO3xSp4"};
}

} // namespace nsforge
