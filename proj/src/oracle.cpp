#include "nsforge/oracle.hpp"

#include <cstdint>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace nsforge::oracle {

namespace {

using I64Matrix = std::vector<std::int64_t>; // square, row major

std::int64_t to_i64(const Integer& v) {
  if (!v.fits_slong_p()) throw BudgetExceeded("entry too large for the enumeration oracle");
  return v.get_si();
}

/// Solves X A = B for square invertible A by Gauss-Jordan elimination on the transposed system.
RatMatrix solve_right(const RatMatrix& a, const RatMatrix& b) {
  const std::size_t n = a.rows();
  // augmented [Aᵀ | Bᵀ], reduce to [I | Xᵀ]
  RatMatrix aug(n, n + b.rows());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(j, i);
    for (std::size_t j = 0; j < b.rows(); ++j) aug(i, n + j) = b(j, i);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && aug(p, c) == 0) ++p;
    if (p == n) throw ComputationError("oracle: singular change of basis");
    if (p != c)
      for (std::size_t j = 0; j < aug.cols(); ++j) std::swap(aug(p, j), aug(c, j));
    const Rational inv = 1 / aug(c, c);
    for (std::size_t j = 0; j < aug.cols(); ++j) aug(c, j) *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || aug(r, c) == 0) continue;
      const Rational f = aug(r, c);
      for (std::size_t j = 0; j < aug.cols(); ++j) aug(r, j) -= f * aug(c, j);
    }
  }
  RatMatrix x(b.rows(), n);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < n; ++j) x(i, j) = aug(j, n + i);
  return x;
}

/// Incremental echelon form over Z, finished into the canonical Hermite basis.
class EchelonBuilder {
public:
  explicit EchelonBuilder(std::size_t dim) : dim_(dim) {}

  void insert(IntVector v) {
    for (std::size_t c = 0; c < dim_; ++c) {
      if (v[c] == 0) continue;
      auto it = rows_.find(c);
      if (it == rows_.end()) {
        rows_.emplace(c, std::move(v));
        return;
      }
      IntVector& r = it->second;
      // [r; v] <- [[s, t], [-v_c/g, r_c/g]] [r; v]
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), r[c].get_mpz_t(), v[c].get_mpz_t());
      const Integer a = r[c] / g, b = v[c] / g;
      for (std::size_t j = c; j < dim_; ++j) {
        const Integer nr = s * r[j] + t * v[j];
        const Integer nv = a * v[j] - b * r[j];
        r[j] = nr;
        v[j] = nv;
      }
    }
  }

  IntMatrix finish() const {
    std::vector<IntVector> rows;
    std::vector<std::size_t> pivots;
    for (const auto& [c, r] : rows_) {
      rows.push_back(r);
      pivots.push_back(c);
      if (rows.back()[c] < 0)
        for (auto& x : rows.back()) x = -x;
    }
    for (std::size_t i = rows.size(); i-- > 0;)
      for (std::size_t k = 0; k < i; ++k) {
        const Integer& p = rows[i][pivots[i]];
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[k][pivots[i]].get_mpz_t(), p.get_mpz_t());
        if (q != 0)
          for (std::size_t j = 0; j < dim_; ++j) rows[k][j] -= q * rows[i][j];
      }
    IntMatrix out(rows.size(), dim_);
    for (std::size_t i = 0; i < rows.size(); ++i) out.set_row(i, rows[i]);
    return out;
  }

private:
  std::size_t dim_;
  std::map<std::size_t, IntVector> rows_;
};

I64Matrix multiply(const I64Matrix& a, const I64Matrix& b, std::size_t n) {
  I64Matrix c(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const std::int64_t v = a[i * n + k];
      if (v == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i * n + j] += v * b[k * n + j];
    }
  return c;
}

/// Reflections s_i(α_j∨) = α_j∨ - α_i(α_j∨) α_i∨ in coroot coordinates.
std::vector<I64Matrix> reflections(const Reductive& g) {
  const std::size_t l = g.l(), n = g.n();
  std::vector<I64Matrix> out;
  for (std::size_t i = 0; i < l; ++i) {
    I64Matrix s(l * l, 0);
    for (std::size_t j = 0; j < l; ++j) {
      std::int64_t pairing = 0;
      for (std::size_t k = 0; k < n; ++k) pairing += to_i64(g.roots()(i, k)) * to_i64(g.coroots()(j, k));
      s[j * l + j] += 1;
      s[i * l + j] -= pairing;
    }
    out.push_back(std::move(s));
  }
  return out;
}

template <class Visit>
std::size_t weyl_closure(const Reductive& g, const EnumerationBudget& budget, Visit visit) {
  const std::size_t l = g.l();
  const auto gens = reflections(g);
  I64Matrix id(l * l, 0);
  for (std::size_t i = 0; i < l; ++i) id[i * l + i] = 1;
  std::set<I64Matrix> seen{id};
  std::deque<I64Matrix> queue{id};
  visit(id);
  while (!queue.empty()) {
    const I64Matrix w = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      I64Matrix next = multiply(s, w, l);
      if (seen.insert(next).second) {
        if (static_cast<long>(seen.size()) > budget.element_bound)
          throw BudgetExceeded("Weyl group of " + g.name() + " has more than " +
                               std::to_string(budget.element_bound) + " elements");
        visit(next);
        queue.push_back(std::move(next));
      }
    }
  }
  return seen.size();
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F f) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

} // namespace

EnumerationBudget EnumerationBudget::from_env() {
  EnumerationBudget b;
  const char* env = std::getenv("NSFORGE_BUDGET");
  if (!env || !*env) return b;
  std::istringstream in(env);
  char comma = 0;
  long coef = 0, elems = 0;
  if (!(in >> coef) || coef <= 0) throw InputError("NSFORGE_BUDGET must look like 'coefficients[,elements]' with positive values");
  b.coefficient_bound = coef;
  if (in >> comma) {
    if (comma != ',' || !(in >> elems) || elems <= 0)
      throw InputError("NSFORGE_BUDGET must look like 'coefficients[,elements]' with positive values");
    b.element_bound = elems;
  }
  return b;
}

IntMatrix ns_reductive_bruteforce(const Reductive& g, const IntVector& d, const CurveModel& curve,
                                  const EnumerationBudget& budget) {
  const std::size_t n = g.n(), l = g.l(), m = curve.end.module_rank;
  const IntMatrix zb = g.center_basis();
  const std::size_t z = zb.rows();
  const IntMatrix hom = hom_s_basis(z, curve.end);
  const std::size_t h = hom.rows(), s = g.factors().size();
  std::vector<IntMatrix> forms;
  for (std::size_t f = 0; f < s; ++f) forms.push_back(g.factor_form(f));
  const std::size_t amb = z + h + s;

  // e_k = Σ_a zc[k][a] ζ_a + Σ_i pc[k][i] α_i∨
  RatMatrix frame(n, n);
  for (std::size_t a = 0; a < z; ++a)
    for (std::size_t k = 0; k < n; ++k) frame(a, k) = zb(a, k);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < n; ++k) frame(z + i, k) = g.coroots()(i, k);
  const RatMatrix coords = solve_right(frame, to_rational(IntMatrix::identity(n)));
  auto zc = [&](std::size_t k, std::size_t a) { return coords(k, a); };
  auto pc = [&](std::size_t k, std::size_t i) { return coords(k, z + i); };

  const IntVector delta = g.lift_component(d);
  RatVector delta_bar(l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < n; ++k) delta_bar[i] += Rational(delta[k]) * pc(k, i);

  // Values of both conditions on the ambient unit vectors.
  auto evaluate = [&](std::size_t j) {
    RatVector lz(z), bz(z * z * m);
    std::vector<Rational> kf(s);
    if (j < z) lz[j] = 1;
    else if (j < z + h)
      for (std::size_t c = 0; c < bz.size(); ++c) bz[c] = hom(j - z, c);
    else kf[j - z - h] = 1;
    auto b = [&](auto x, auto y) {
      Rational v = 0;
      for (std::size_t f = 0; f < s; ++f) {
        if (kf[f] == 0) continue;
        for (std::size_t p = 0; p < l; ++p)
          for (std::size_t q = 0; q < l; ++q) v += kf[f] * x(p) * Rational(forms[f](p, q)) * y(q);
      }
      return v;
    };
    RatVector values;
    for (std::size_t k = 0; k < n; ++k) {
      Rational v = 0;
      for (std::size_t a = 0; a < z; ++a) v += lz[a] * zc(k, a);
      v -= b([&](std::size_t p) { return delta_bar[p]; }, [&](std::size_t q) { return pc(k, q); });
      values.push_back(v);
    }
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t kk = 0; kk < n; ++kk) {
        const Rational bkk = b([&](std::size_t p) { return pc(k, p); }, [&](std::size_t q) { return pc(kk, q); });
        for (std::size_t t = 0; t < m; ++t) {
          Rational v = Rational(curve.end.unit[t]) * bkk;
          for (std::size_t a = 0; a < z; ++a)
            for (std::size_t c = 0; c < z; ++c) v += zc(k, a) * zc(kk, c) * bz[(a * z + c) * m + t];
          values.push_back(v);
        }
      }
    return values;
  };
  std::vector<RatVector> columns;
  for (std::size_t j = 0; j < amb; ++j) columns.push_back(evaluate(j));
  const std::size_t conditions = amb ? columns[0].size() : 0;

  // The solution set is periodic modulo the common denominator N of all values. If
  // N is within the coefficient bound, one period [0, N)^amb together with N·Z^amb
  // gives every solution; otherwise the box [-bound, bound]^amb is searched.
  Integer den = 1;
  for (const auto& col : columns)
    for (const auto& v : col) den = lcm(den, Integer(v.get_den()));
  if (!den.fits_slong_p()) throw BudgetExceeded("period " + den.get_str() + " too large");
  const std::int64_t period = den.get_si();
  const bool periodic = period <= budget.coefficient_bound;
  const std::int64_t lo = periodic ? 0 : -budget.coefficient_bound;
  const std::int64_t hi = periodic ? period - 1 : budget.coefficient_bound;
  double cells = 1;
  for (std::size_t j = 0; j < amb; ++j) cells *= static_cast<double>(hi - lo + 1);
  if (cells > 5e7) throw BudgetExceeded("enumeration box of " + std::to_string(static_cast<long long>(cells)) +
                                        " points exceeds the oracle limit");

  std::vector<std::vector<std::int64_t>> res(amb, std::vector<std::int64_t>(conditions));
  for (std::size_t j = 0; j < amb; ++j)
    for (std::size_t c = 0; c < conditions; ++c) {
      const Integer scaled = Rational(columns[j][c] * den).get_num();
      Integer r;
      mpz_fdiv_r(r.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
      res[j][c] = r.get_si();
    }
  auto mod = [&](std::int64_t v) { return ((v % period) + period) % period; };

  EchelonBuilder builder(amb);
  if (periodic)
    for (std::size_t j = 0; j < amb; ++j) {
      IntVector v(amb);
      v[j] = den;
      builder.insert(std::move(v));
    }
  // odometer over [lo, hi]^amb with running residues
  std::vector<std::int64_t> x(amb, lo), acc(conditions, 0);
  for (std::size_t c = 0; c < conditions; ++c) {
    std::int64_t v = 0;
    for (std::size_t j = 0; j < amb; ++j) v += mod(lo) * res[j][c] % period;
    acc[c] = mod(v);
  }
  while (true) {
    if (std::all_of(acc.begin(), acc.end(), [](std::int64_t r) { return r == 0; })) {
      IntVector v(amb);
      for (std::size_t j = 0; j < amb; ++j) v[j] = static_cast<long>(x[j]);
      builder.insert(std::move(v));
    }
    std::size_t j = 0;
    while (j < amb) {
      if (x[j] < hi) {
        ++x[j];
        for (std::size_t c = 0; c < conditions; ++c) acc[c] = (acc[c] + res[j][c]) % period;
        break;
      }
      // wrap hi -> lo: subtract (hi - lo) steps
      const std::int64_t back = mod(hi - lo);
      for (std::size_t c = 0; c < conditions; ++c) acc[c] = mod(acc[c] - back * res[j][c] % period);
      x[j] = lo;
      ++j;
    }
    if (j == amb) break;
  }
  return builder.finish();
}

bool full_weyl_check(const Reductive& g, const IntMatrix& form, const EnumerationBudget& budget) {
  const std::size_t l = g.l();
  if (form.rows() != l || form.cols() != l) throw InputError("form must be l x l on coroot coordinates");
  I64Matrix b(l * l);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) b[i * l + j] = to_i64(form(i, j));
  bool ok = true;
  weyl_closure(g, budget, [&](const I64Matrix& w) {
    if (!ok) return;
    I64Matrix wt(l * l);
    for (std::size_t i = 0; i < l; ++i)
      for (std::size_t j = 0; j < l; ++j) wt[i * l + j] = w[j * l + i];
    if (multiply(multiply(wt, b, l), w, l) != b) ok = false;
  });
  return ok;
}

std::size_t weyl_group_order(const Reductive& g, const EnumerationBudget& budget) {
  return weyl_closure(g, budget, [](const I64Matrix&) {});
}

Integer bareiss_determinant(IntMatrix m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

bool smith_verify(const IntMatrix& m, const IntMatrix& u, const IntMatrix& d, const IntMatrix& v) {
  if (u.rows() != m.rows() || u.cols() != m.rows() || v.rows() != m.cols() || v.cols() != m.cols() ||
      d.rows() != m.rows() || d.cols() != m.cols())
    return false;
  if (!(u * m * v == d)) return false;
  const Integer du = bareiss_determinant(u), dv = bareiss_determinant(v);
  if (abs(du) != 1 || abs(dv) != 1) return false;
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < k) {
      const Integer& a = d(i, i);
      const Integer& b = d(i + 1, i + 1);
      if (a == 0 ? b != 0 : b % a != 0) return false;
    }
  }
  return true;
}

IntVector invariant_factors_by_minors(const IntMatrix& m) {
  IntVector out;
  Integer prev = 1;
  const std::size_t kmax = std::min(m.rows(), m.cols());
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    for_each_subset(m.rows(), k, [&](const std::vector<std::size_t>& rows) {
      if (g == 1) return;
      for_each_subset(m.cols(), k, [&](const std::vector<std::size_t>& cols) {
        if (g == 1) return;
        g = gcd(g, bareiss_determinant(m.select_rows(rows).select_cols(cols)));
      });
    });
    if (g == 0) break;
    out.push_back(g / prev);
    prev = g;
  }
  return out;
}

FinAbGroup pi1_by_minors(const Reductive& g) {
  FinAbGroup out;
  const IntVector f = invariant_factors_by_minors(g.coroots());
  out.free_rank = g.n() - f.size();
  for (const auto& v : f)
    if (v != 1) out.torsion.push_back(v);
  return out;
}

bool same_lattice_by_membership(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols() != b.cols()) return false;
  // each row of one must be an integer combination of an independent subset of the other
  auto contains = [](const IntMatrix& gens, const IntMatrix& vs) {
    EchelonBuilder e(gens.cols());
    for (std::size_t i = 0; i < gens.rows(); ++i) e.insert(gens.row(i));
    const IntMatrix basis = e.finish();
    if (basis.rows() == 0) return vs.is_zero();
    for (std::size_t r = 0; r < vs.rows(); ++r) {
      const RatMatrix sq = [&] {
        // rational coordinates in the basis, read off from its pivot columns
        std::vector<std::size_t> piv;
        for (std::size_t i = 0; i < basis.rows(); ++i) {
          std::size_t c = 0;
          while (basis(i, c) == 0) ++c;
          piv.push_back(c);
        }
        const RatMatrix a = to_rational(basis.select_cols(piv));
        RatMatrix target(1, piv.size());
        for (std::size_t i = 0; i < piv.size(); ++i) target(0, i) = vs(r, piv[i]);
        return solve_right(a, target);
      }();
      RatVector back(basis.cols());
      for (std::size_t i = 0; i < basis.rows(); ++i)
        for (std::size_t j = 0; j < basis.cols(); ++j) back[j] += sq(0, i) * Rational(basis(i, j));
      for (std::size_t j = 0; j < basis.cols(); ++j) {
        if (back[j] != Rational(vs(r, j))) return false;
      }
      for (std::size_t i = 0; i < basis.rows(); ++i)
        if (sq(0, i).get_den() != 1) return false;
    }
    return true;
  };
  return contains(a, b) && contains(b, a);
}

} // namespace nsforge::oracle
