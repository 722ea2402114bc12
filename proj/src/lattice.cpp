#include "nsforge/lattice.hpp"

#include <algorithm>
#include <utility>

namespace nsforge {

namespace {

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer trunc_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer floor_mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

void swap_rows(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMatrix& m, std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row[dst] -= q * row[src]
void row_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t j = 0; j < m.cols(); ++j) m(dst, j) -= q * m(src, j);
}

void col_axpy(IntMatrix& m, std::size_t dst, std::size_t src, const Integer& q) {
  if (q == 0) return;
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= q * m(i, src);
}

void negate_row(IntMatrix& m, std::size_t r) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(r, j) = -m(r, j);
}

IntMatrix reverse_cols(const IntMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, m.cols() - 1 - j);
  return r;
}

// Pivot column of each row of an echelon matrix.
std::vector<std::size_t> pivots(const IntMatrix& h) {
  std::vector<std::size_t> p;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::size_t j = 0;
    while (j < h.cols() && h(i, j) == 0) ++j;
    p.push_back(j);
  }
  return p;
}

} // namespace

LatticeMap LatticeMap::make(FreeLattice source, FreeLattice target, IntMatrix matrix) {
  if (matrix.rows() != target.rank || matrix.cols() != source.rank)
    throw InputError("lattice map " + source.label + " -> " + target.label + " has wrong shape");
  return LatticeMap{std::move(source), std::move(target), std::move(matrix)};
}

LatticeMap LatticeMap::identity(const FreeLattice& l) { return LatticeMap{l, l, IntMatrix::identity(l.rank)}; }

LatticeMap LatticeMap::compose(const LatticeMap& inner) const {
  if (inner.target.rank != source.rank) throw InputError("composition of incompatible lattice maps");
  return LatticeMap{inner.source, target, matrix * inner.matrix};
}

std::string FinAbGroup::to_string() const {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.emplace_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& n : torsion) parts.push_back("Z/" + n.get_str());
  if (parts.empty()) return "0";
  std::string s = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) s += " x " + parts[i];
  return s;
}

SmithDecomposition smith_decompose(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix u = IntMatrix::identity(rows);
  IntMatrix v = IntMatrix::identity(cols);
  const std::size_t steps = std::min(rows, cols);
  for (std::size_t t = 0; t < steps; ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block goes to (t, t)
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) {
          if (a(i, j) == 0) continue;
          Integer av = abs(a(i, j));
          if (!found || av < best) {
            found = true;
            best = av;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        // trailing block is zero
        for (std::size_t k = 0; k < steps; ++k)
          if (a(k, k) < 0) {
            negate_row(a, k);
            negate_row(u, k);
          }
        return {u, a, v};
      }
      swap_rows(a, t, pi);
      swap_rows(u, t, pi);
      swap_cols(a, t, pj);
      swap_cols(v, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const Integer q = trunc_div(a(i, t), a(t, t));
        row_axpy(a, i, t, q);
        row_axpy(u, i, t, q);
        if (a(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const Integer q = trunc_div(a(t, j), a(t, t));
        col_axpy(a, j, t, q);
        col_axpy(v, j, t, q);
        if (a(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility of the trailing block by the pivot
      bool divisible = true;
      for (std::size_t i = t + 1; i < rows && divisible; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a(i, j) % a(t, t) != 0) {
            row_axpy(a, t, i, Integer(-1));
            row_axpy(u, t, i, Integer(-1));
            divisible = false;
            break;
          }
      if (divisible) break;
    }
    if (a(t, t) < 0) {
      negate_row(a, t);
      negate_row(u, t);
    }
  }
  return {u, a, v};
}

IntVector invariant_factors(const IntMatrix& m) {
  const auto s = smith_decompose(m);
  IntVector out;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    if (s.D(i, i) != 0) out.push_back(s.D(i, i));
  return out;
}

HermiteResult hermite_with_transform(const IntMatrix& m) {
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  IntMatrix a = m;
  IntMatrix w = IntMatrix::identity(rows);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    while (true) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a(i, c) != 0 && (best == rows || abs(a(i, c)) < abs(a(best, c)))) best = i;
      if (best == rows) break;
      swap_rows(a, r, best);
      swap_rows(w, r, best);
      bool done = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a(i, c) == 0) continue;
        const Integer q = floor_div(a(i, c), a(r, c));
        row_axpy(a, i, r, q);
        row_axpy(w, i, r, q);
        if (a(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (a(r, c) == 0) continue;
    if (a(r, c) < 0) {
      negate_row(a, r);
      negate_row(w, r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      const Integer q = floor_div(a(i, c), a(r, c));
      row_axpy(a, i, r, q);
      row_axpy(w, i, r, q);
    }
    ++r;
  }
  HermiteResult out;
  out.rank = r;
  out.H = IntMatrix(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.H(i, j) = a(i, j);
  out.W = std::move(w);
  return out;
}

IntMatrix hermite_basis(const IntMatrix& m) {
  if (m.rows() == 0) return IntMatrix(0, m.cols());
  return hermite_with_transform(m).H;
}

RatMatrix hermite_basis(const RatMatrix& m) {
  const Integer d = common_denominator(m);
  IntMatrix scaled(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational x = m(i, j) * d;
      scaled(i, j) = x.get_num();
    }
  const IntMatrix h = hermite_basis(scaled);
  RatMatrix out(h.rows(), h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) {
      out(i, j) = Rational(h(i, j), d);
      out(i, j).canonicalize();
    }
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const std::size_t n = m.cols();
  if (m.rows() == 0) return IntMatrix::identity(n);
  const auto hr = hermite_with_transform(m.transpose());
  IntMatrix kernel(n - hr.rank, n);
  for (std::size_t i = hr.rank; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) kernel(i - hr.rank, j) = hr.W(i, j);
  return hermite_basis(kernel);
}

FinAbGroup cokernel(const IntMatrix& matrix) {
  FinAbGroup g;
  std::size_t nonzero = 0;
  for (const auto& d : invariant_factors(matrix)) {
    ++nonzero;
    if (d > 1) g.torsion.push_back(d);
  }
  g.free_rank = matrix.rows() - nonzero;
  return g;
}

FinAbGroup cokernel(const LatticeMap& map) { return cokernel(map.matrix); }

// ---------------------------------------------------------------------------

RationalSubgroup RationalSubgroup::generated_by(std::size_t dim, const RatMatrix& generators) {
  if (generators.rows() > 0 && generators.cols() != dim)
    throw InputError("generator length does not match the ambient dimension");
  RationalSubgroup s;
  s.dim_ = dim;
  s.basis_ = generators.rows() ? hermite_basis(generators) : RatMatrix(0, dim);
  return s;
}

RationalSubgroup RationalSubgroup::generated_by(std::size_t dim, const IntMatrix& generators) {
  return generated_by(dim, to_rational(generators));
}

RationalSubgroup RationalSubgroup::full(std::size_t dim) {
  return generated_by(dim, IntMatrix::identity(dim));
}

RationalSubgroup RationalSubgroup::zero(std::size_t dim) {
  RationalSubgroup s;
  s.dim_ = dim;
  s.basis_ = RatMatrix(0, dim);
  return s;
}

RationalSubgroup RationalSubgroup::from_canonical(std::size_t dim, const RatMatrix& basis) {
  auto s = generated_by(dim, basis);
  if (!(s.basis_ == basis)) throw InputError("subgroup basis is not in canonical Hermite form");
  return s;
}

std::optional<IntVector> RationalSubgroup::coordinates(const RatVector& v) const {
  if (v.size() != dim_) throw InputError("vector length does not match the ambient dimension");
  RatVector rest = v;
  IntVector coords(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    std::size_t p = 0;
    while (basis_(i, p) == 0) ++p;
    const Rational c = rest[p] / basis_(i, p);
    if (c.get_den() != 1) return std::nullopt;
    coords[i] = c.get_num();
    if (c != 0)
      for (std::size_t j = 0; j < dim_; ++j) rest[j] -= c * basis_(i, j);
  }
  for (const auto& x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

bool RationalSubgroup::contains(const RatVector& v) const { return coordinates(v).has_value(); }

bool RationalSubgroup::contains(const RationalSubgroup& other) const {
  if (other.dim_ != dim_) return false;
  for (std::size_t i = 0; i < other.rank(); ++i)
    if (!contains(other.basis_.row(i))) return false;
  return true;
}

bool RationalSubgroup::same_span(const RationalSubgroup& other) const {
  if (other.dim_ != dim_) return false;
  RatMatrix both = basis_;
  for (std::size_t i = 0; i < other.rank(); ++i) both.append_row(other.basis_.row(i));
  const std::size_t r = nsforge::rank(both);
  return r == rank() && r == other.rank();
}

Integer RationalSubgroup::index_in(const RationalSubgroup& other) const {
  if (other.rank() != rank() || !other.contains(*this))
    throw ComputationError("index requested for a non-finite-index inclusion");
  IntMatrix coords(rank(), rank());
  for (std::size_t i = 0; i < rank(); ++i) coords.set_row(i, *other.coordinates(basis_.row(i)));
  return abs(determinant(coords));
}

RationalSubgroup intersect_integral(const RationalSubgroup& s) {
  const RatMatrix& b = s.basis();
  const Integer d = common_denominator(b);
  std::vector<Constraint> cons;
  for (std::size_t j = 0; j < s.dim(); ++j) {
    IntVector coeffs(s.rank());
    for (std::size_t i = 0; i < s.rank(); ++i) coeffs[i] = Rational(b(i, j) * d).get_num();
    cons.push_back(Constraint::divisible(coeffs, d));
  }
  const IntMatrix c = solution_lattice(cons, s.rank());
  return RationalSubgroup::generated_by(s.dim(), to_rational(c) * b);
}

RationalSubgroup intersect(const RationalSubgroup& a, const RationalSubgroup& b) {
  if (a.dim() != b.dim()) throw InputError("intersection of subgroups of different spaces");
  const std::size_t ka = a.rank(), kb = b.rank();
  if (ka == 0 || kb == 0) return RationalSubgroup::zero(a.dim());
  RatMatrix stacked(ka + kb, a.dim());
  for (std::size_t i = 0; i < ka; ++i) stacked.set_row(i, a.basis().row(i));
  for (std::size_t i = 0; i < kb; ++i) {
    auto r = b.basis().row(i);
    for (auto& x : r) x = -x;
    stacked.set_row(ka + i, r);
  }
  const Integer d = common_denominator(stacked);
  IntMatrix scaled = to_integer(Rational(d) * stacked);
  const IntMatrix ker = integer_kernel(scaled.transpose());
  IntMatrix coeff_a(ker.rows(), ka);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < ka; ++j) coeff_a(i, j) = ker(i, j);
  return RationalSubgroup::generated_by(a.dim(), to_rational(coeff_a) * a.basis());
}

RationalSubgroup saturate(const RationalSubgroup& s) {
  if (s.rank() == 0) return RationalSubgroup::zero(s.dim());
  const Integer d = common_denominator(s.basis());
  const IntMatrix scaled = to_integer(Rational(d) * s.basis());
  const IntMatrix ann = integer_kernel(scaled);
  if (ann.rows() == 0) return RationalSubgroup::full(s.dim());
  return RationalSubgroup::generated_by(s.dim(), integer_kernel(ann));
}

// ---------------------------------------------------------------------------

Constraint Constraint::integral(const RatVector& coeffs) {
  const Integer d = common_denominator(coeffs);
  IntVector scaled(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) scaled[i] = Rational(coeffs[i] * d).get_num();
  return divisible(std::move(scaled), d);
}

std::vector<Constraint> Constraint::integral(const RatMatrix& coeffs_per_coordinate) {
  std::vector<Constraint> out;
  for (std::size_t t = 0; t < coeffs_per_coordinate.rows(); ++t)
    out.push_back(integral(coeffs_per_coordinate.row(t)));
  return out;
}

bool Constraint::satisfied_by(const IntVector& x) const {
  const Integer s = dot(coeffs, x);
  if (modulus == 0) return s == 0;
  return s % modulus == 0;
}

IntMatrix solution_lattice(const std::vector<Constraint>& constraints, std::size_t n) {
  std::vector<const Constraint*> active;
  std::size_t slacks = 0;
  for (const auto& c : constraints) {
    if (c.coeffs.size() != n)
      throw InputError("constraint has " + std::to_string(c.coeffs.size()) + " coefficients, expected " +
                       std::to_string(n));
    if (abs(c.modulus) == 1) continue; // always satisfiable
    bool zero = true;
    for (const auto& x : c.coeffs) zero = zero && x == 0;
    if (zero) continue;
    active.push_back(&c);
    if (c.modulus != 0) ++slacks;
  }
  if (active.empty()) return IntMatrix::identity(n);
  IntMatrix a(active.size(), n + slacks);
  std::size_t slack = n;
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) a(i, j) = active[i]->coeffs[j];
    if (active[i]->modulus != 0) a(i, slack++) = -abs(active[i]->modulus);
  }
  const IntMatrix ker = integer_kernel(a);
  IntMatrix proj(ker.rows(), n);
  for (std::size_t i = 0; i < ker.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) proj(i, j) = ker(i, j);
  return hermite_basis(proj);
}

// ---------------------------------------------------------------------------

namespace {

RatMatrix extension_coordinates(const RatMatrix& domain, const RationalSubgroup& target) {
  if (!(RationalSubgroup::generated_by(target.dim(), target.basis()) == target))
    throw InputError("integral extension: target subgroup is not canonical");
  if (domain.cols() != target.dim()) throw InputError("integral extension: dimension mismatch");
  if (rank(domain) != domain.rows()) throw InputError("integral extension: domain basis is dependent");
  RatMatrix coords(target.rank(), domain.rows());
  for (std::size_t i = 0; i < target.rank(); ++i) {
    auto c = solve_in_row_span(domain, target.basis().row(i));
    if (!c) throw InputError("integral extension: infinite index unsupported");
    coords.set_row(i, *c);
  }
  return coords;
}

} // namespace

std::optional<IntMatrix> integral_extension(const RatMatrix& domain, const RatMatrix& values,
                                            const RationalSubgroup& target) {
  if (values.rows() != domain.rows()) throw InputError("integral extension: one value row per domain vector");
  const RatMatrix ext = extension_coordinates(domain, target) * values;
  if (!is_integral(ext)) return std::nullopt;
  return to_integer(ext);
}

std::optional<std::vector<IntMatrix>> integral_extension_bilinear(const RatMatrix& domain,
                                                                  const std::vector<RatMatrix>& form,
                                                                  const RationalSubgroup& target) {
  const RatMatrix c = extension_coordinates(domain, target);
  const RatMatrix ct = c.transpose();
  std::vector<IntMatrix> out;
  for (const auto& f : form) {
    if (f.rows() != domain.rows() || f.cols() != domain.rows())
      throw InputError("integral extension: form has wrong shape");
    const RatMatrix ext = c * f * ct;
    if (!is_integral(ext)) return std::nullopt;
    out.push_back(to_integer(ext));
  }
  return out;
}

// ---------------------------------------------------------------------------

QuotientPresentation::QuotientPresentation(std::size_t n, const IntMatrix& sublattice) : n_(n) {
  if (sublattice.rows() > 0 && sublattice.cols() != n) throw InputError("sublattice generators have wrong length");
  const IntMatrix k = sublattice.rows() ? sublattice.transpose() : IntMatrix(n, 0);
  const auto snf = smith_decompose(k);
  const std::size_t steps = std::min(k.rows(), k.cols());
  std::size_t nonzero = 0;
  std::vector<std::size_t> torsion_idx, free_idx;
  for (std::size_t i = 0; i < steps; ++i) {
    if (snf.D(i, i) == 0) continue;
    ++nonzero;
    if (snf.D(i, i) > 1) {
      torsion_idx.push_back(i);
      group_.torsion.push_back(snf.D(i, i));
    }
  }
  for (std::size_t i = nonzero; i < n; ++i) free_idx.push_back(i);
  group_.free_rank = free_idx.size();

  const IntMatrix uinv = to_integer(inverse(to_rational(snf.U)));
  IntMatrix torsion_rows = snf.U.select_rows(torsion_idx);
  for (std::size_t i = 0; i < torsion_idx.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) torsion_rows(i, j) = floor_mod(torsion_rows(i, j), group_.torsion[i]);
  IntMatrix torsion_lifts = uinv.select_cols(torsion_idx).transpose();

  IntMatrix free_rows = snf.U.select_rows(free_idx);
  IntMatrix free_lifts = uinv.select_cols(free_idx); // n x r
  if (!free_idx.empty()) {
    const auto hr = hermite_with_transform(free_rows);
    free_rows = hr.H;
    free_lifts = to_integer(to_rational(free_lifts) * inverse(to_rational(hr.W)));
  }

  projection_ = IntMatrix(torsion_idx.size() + free_idx.size(), n);
  lifts_ = IntMatrix(torsion_idx.size() + free_idx.size(), n);
  for (std::size_t i = 0; i < torsion_idx.size(); ++i) {
    projection_.set_row(i, torsion_rows.row(i));
    lifts_.set_row(i, torsion_lifts.row(i));
  }
  for (std::size_t i = 0; i < free_idx.size(); ++i) {
    projection_.set_row(torsion_idx.size() + i, free_rows.row(i));
    lifts_.set_row(torsion_idx.size() + i, free_lifts.col(i));
  }
}

IntVector QuotientPresentation::normalize(const IntVector& coords) const {
  if (coords.size() != group_.num_generators())
    throw InputError("component has " + std::to_string(coords.size()) + " coordinates, the group " +
                     group_.to_string() + " needs " + std::to_string(group_.num_generators()));
  IntVector out = coords;
  for (std::size_t i = 0; i < group_.torsion.size(); ++i) out[i] = floor_mod(out[i], group_.torsion[i]);
  return out;
}

IntVector QuotientPresentation::class_of(const IntVector& v) const {
  if (v.size() != n_) throw InputError("vector length does not match the lattice rank");
  return normalize(projection_.apply(v));
}

IntVector QuotientPresentation::lift(const IntVector& coords) const {
  const IntVector c = normalize(coords);
  IntVector v(n_);
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < n_; ++j) v[j] += c[i] * lifts_(i, j);
  return v;
}

IntMatrix QuotientPresentation::free_projection() const {
  std::vector<std::size_t> idx;
  for (std::size_t i = group_.torsion.size(); i < projection_.rows(); ++i) idx.push_back(i);
  return projection_.select_rows(idx);
}

IntVector reduce_modulo(const IntVector& v, const IntMatrix& lattice_generators) {
  if (lattice_generators.rows() == 0) return v;
  const IntMatrix h = hermite_basis(reverse_cols(lattice_generators));
  IntVector r(v.rbegin(), v.rend());
  const auto piv = pivots(h);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    const Integer q = floor_div(r[piv[i]], h(i, piv[i]));
    if (q == 0) continue;
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= q * h(i, j);
  }
  return IntVector(r.rbegin(), r.rend());
}

std::optional<IntVector> hermite_coordinates(const IntMatrix& h, const IntVector& v) {
  IntVector rest = v;
  IntVector coords(h.rows());
  const auto piv = pivots(h);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (rest[piv[i]] % h(i, piv[i]) != 0) return std::nullopt;
    coords[i] = rest[piv[i]] / h(i, piv[i]);
    if (coords[i] != 0)
      for (std::size_t j = 0; j < rest.size(); ++j) rest[j] -= coords[i] * h(i, j);
  }
  for (const auto& x : rest)
    if (x != 0) return std::nullopt;
  return coords;
}

Integer lattice_index(const IntMatrix& sub, const IntMatrix& super) {
  const IntMatrix hs = hermite_basis(sub);
  const IntMatrix hp = hermite_basis(super);
  if (hs.rows() != hp.rows()) throw ComputationError("lattice index of lattices of different rank");
  IntMatrix coords(hs.rows(), hs.rows());
  for (std::size_t i = 0; i < hs.rows(); ++i) {
    auto c = hermite_coordinates(hp, hs.row(i));
    if (!c) throw ComputationError("lattice index: not a sublattice");
    coords.set_row(i, *c);
  }
  return abs(determinant(coords));
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  return hermite_basis(a) == hermite_basis(b);
}

} // namespace nsforge
