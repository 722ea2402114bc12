#include "nsforge/matrix.hpp"

#include <sstream>

namespace nsforge {

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

RatVector to_rational(const IntVector& v) {
  RatVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw ComputationError("non-integral entry " + m(i, j).get_str());
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

IntVector to_integer(const RatVector& v) {
  IntVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].get_den() != 1) throw ComputationError("non-integral entry " + v[i].get_str());
    r[i] = v[i].get_num();
  }
  return r;
}

bool is_integral(const RatMatrix& m) {
  for (const auto& x : m.data())
    if (x.get_den() != 1) return false;
  return true;
}

bool is_integral(const RatVector& v) {
  for (const auto& x : v)
    if (x.get_den() != 1) return false;
  return true;
}

Integer common_denominator(const RatMatrix& m) {
  Integer d = 1;
  for (const auto& x : m.data()) d = lcm(d, Integer(x.get_den()));
  return d;
}

Integer common_denominator(const RatVector& v) {
  Integer d = 1;
  for (const auto& x : v) d = lcm(d, Integer(x.get_den()));
  return d;
}

Integer dot(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) throw InputError("dot product length mismatch");
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const RatVector& a, const RatVector& b) {
  if (a.size() != b.size()) throw InputError("dot product length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class V> static std::string vec_str(const V& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
  os << ')';
  return os.str();
}

std::string to_string(const IntVector& v) { return vec_str(v); }
std::string to_string(const RatVector& v) { return vec_str(v); }

template <class M> static std::ostream& print(std::ostream& os, const M& m) {
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) os << (i ? " " : "") << vec_str(m.row(i));
  return os << ']';
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) { return print(os, m); }
std::ostream& operator<<(std::ostream& os, const RatMatrix& m) { return print(os, m); }

RatMatrix inverse(const RatMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("inverse of a non-square matrix");
  RatMatrix a = m;
  RatMatrix inv = RatMatrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw ComputationError("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    const Rational piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      const Rational f = a(r, c);
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::size_t rank(const RatMatrix& m) {
  RatMatrix a = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t p = r;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (a(i, c) == 0) continue;
      const Rational f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

std::size_t rank(const IntMatrix& m) { return rank(to_rational(m)); }

Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw InputError("determinant of a non-square matrix");
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && a(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = t;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

std::optional<RatVector> solve_in_row_span(const RatMatrix& basis, const RatVector& v) {
  // Solve basis^T x = v by elimination on the augmented system.
  const std::size_t k = basis.rows();
  const std::size_t n = basis.cols();
  if (v.size() != n) throw InputError("solve_in_row_span: length mismatch");
  RatMatrix a(n, k + 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < k; ++j) a(i, j) = basis(j, i);
    a(i, k) = v[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < k && r < n; ++c) {
    std::size_t p = r;
    while (p < n && a(p, c) == 0) ++p;
    if (p == n) throw ComputationError("solve_in_row_span: dependent basis");
    if (p != r)
      for (std::size_t j = 0; j <= k; ++j) std::swap(a(p, j), a(r, j));
    const Rational piv = a(r, c);
    for (std::size_t j = 0; j <= k; ++j) a(r, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || a(i, c) == 0) continue;
      const Rational f = a(i, c);
      for (std::size_t j = 0; j <= k; ++j) a(i, j) -= f * a(r, j);
    }
    pivot_col.push_back(c);
    ++r;
  }
  if (r < k) throw ComputationError("solve_in_row_span: dependent basis");
  for (std::size_t i = r; i < n; ++i)
    if (a(i, k) != 0) return std::nullopt;
  RatVector x(k);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = a(i, k);
  return x;
}

IntMatrix block_diagonal(const std::vector<IntMatrix>& blocks) {
  std::size_t rows = 0, cols = 0;
  for (const auto& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  IntMatrix out(rows, cols);
  std::size_t r0 = 0, c0 = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

} // namespace nsforge
