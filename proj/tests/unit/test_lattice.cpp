#include <doctest.h>

#include "nsforge/lattice.hpp"

#include <random>

using namespace nsforge;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int bound) {
  std::uniform_int_distribution<int> dist(-bound, bound);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_diagonal_chain(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  const std::size_t k = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < k; ++i) {
    if (d(i, i) < 0) return false;
    if (i + 1 < k) {
      if (d(i, i) == 0 && d(i + 1, i + 1) != 0) return false;
      if (d(i, i) != 0 && d(i + 1, i + 1) % d(i, i) != 0) return false;
    }
  }
  return true;
}

// Every integer point of the box [-b, b]^2 that lies in the rational span of s.
IntMatrix box_points_in_span(const RationalSubgroup& s, int b) {
  IntMatrix pts(0, 2);
  for (int x = -b; x <= b; ++x)
    for (int y = -b; y <= b; ++y) {
      RatMatrix both = s.basis();
      both.append_row({Rational(x), Rational(y)});
      if (rank(both) == s.rank()) pts.append_row({Integer(x), Integer(y)});
    }
  return pts;
}

} // namespace

TEST_CASE("smith decomposition of small matrices") {
  auto s = smith_decompose(IntMatrix::identity(2));
  CHECK(s.D == IntMatrix::identity(2));

  s = smith_decompose(IntMatrix{{2}});
  CHECK(s.D == IntMatrix{{2}});

  const IntMatrix m{{2, 4}, {6, 8}};
  s = smith_decompose(m);
  CHECK(s.U * m * s.V == s.D);
  CHECK(is_diagonal_chain(s.D));
  CHECK(abs(determinant(s.U)) == 1);
  CHECK(abs(determinant(s.V)) == 1);
  CHECK(invariant_factors(m) == IntVector{2, 4});
}

TEST_CASE("smith decomposition on random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    const IntMatrix m = random_matrix(rng, r, c, 6);
    const auto s = smith_decompose(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(is_diagonal_chain(s.D));
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
  }
}

TEST_CASE("cokernels") {
  CHECK(cokernel(IntMatrix(1, 1)) == FinAbGroup{1, {}});
  CHECK(cokernel(IntMatrix{{5}}) == FinAbGroup{0, {5}});
  const LatticeMap pgl2 = LatticeMap::make({1, "coroots"}, {1, "cochar"}, IntMatrix{{2}});
  CHECK(cokernel(pgl2).to_string() == "Z/2");
  CHECK(cokernel(IntMatrix(2, 0)).to_string() == "Z^2");
}

TEST_CASE("hermite form is canonical") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const IntMatrix m = random_matrix(rng, 1 + rng() % 4, 1 + rng() % 4, 5);
    const auto hr = hermite_with_transform(m);
    CHECK(abs(determinant(hr.W)) == 1);
    const IntMatrix wm = hr.W * m;
    for (std::size_t i = 0; i < hr.rank; ++i) CHECK(wm.row(i) == hr.H.row(i));
    for (std::size_t i = hr.rank; i < wm.rows(); ++i) CHECK(IntMatrix::from_rows({wm.row(i)}, wm.cols()).is_zero());
    // any unimodular change of generators gives the same form
    IntMatrix mixed = m;
    if (m.rows() > 1)
      for (std::size_t j = 0; j < m.cols(); ++j) mixed(0, j) += 3 * m(1, j);
    CHECK(hermite_basis(mixed) == hr.H);
  }
}

TEST_CASE("saturation") {
  auto s = saturate(RationalSubgroup::generated_by(2, IntMatrix{{2, 0}}));
  CHECK(s.basis() == to_rational(IntMatrix{{1, 0}}));

  auto full = RationalSubgroup::full(3);
  CHECK(saturate(full) == full);

  const auto gen = RationalSubgroup::generated_by(2, IntMatrix{{2, 2}, {0, 4}});
  s = saturate(gen);
  const IntMatrix pts = box_points_in_span(gen, 4);
  CHECK(s == RationalSubgroup::generated_by(2, pts));
  CHECK(s == RationalSubgroup::full(2));
  CHECK(saturate(s) == s);
  CHECK(gen.index_in(s) == 8);

  const auto line = RationalSubgroup::generated_by(2, IntMatrix{{4, 6}});
  CHECK(saturate(line) == RationalSubgroup::generated_by(2, box_points_in_span(line, 4)));
}

TEST_CASE("rational subgroup membership and intersection") {
  const RatMatrix half{{Rational(1, 2)}};
  const auto s = RationalSubgroup::generated_by(1, half);
  CHECK(s.contains(RatVector{Rational(3, 2)}));
  CHECK_FALSE(s.contains(RatVector{Rational(1, 3)}));
  CHECK(intersect_integral(s) == RationalSubgroup::full(1));

  const auto a = RationalSubgroup::generated_by(2, IntMatrix{{2, 0}, {0, 3}});
  const auto b = RationalSubgroup::generated_by(2, IntMatrix{{3, 0}, {0, 2}});
  CHECK(intersect(a, b) == RationalSubgroup::generated_by(2, IntMatrix{{6, 0}, {0, 6}}));
  CHECK_THROWS_AS(RationalSubgroup::from_canonical(2, to_rational(IntMatrix{{0, 1}, {1, 0}})), InputError);
}

TEST_CASE("integral extension") {
  const RatMatrix domain{{1}};
  const auto half = RationalSubgroup::generated_by(1, RatMatrix{{Rational(1, 2)}});
  auto ext = integral_extension(domain, RatMatrix{{2}}, half);
  REQUIRE(ext);
  CHECK(*ext == IntMatrix{{1}});
  CHECK_FALSE(integral_extension(domain, RatMatrix{{1}}, half));
  ext = integral_extension(domain, RatMatrix{{7}}, RationalSubgroup::full(1));
  REQUIRE(ext);
  CHECK(*ext == IntMatrix{{7}});

  const auto other_line = RationalSubgroup::generated_by(2, IntMatrix{{0, 1}});
  CHECK_THROWS_WITH_AS(integral_extension(RatMatrix{{1, 0}}, RatMatrix{{1}}, other_line),
                       doctest::Contains("infinite index"), InputError);

  auto form = integral_extension_bilinear(domain, {RatMatrix{{4}}}, half);
  REQUIRE(form);
  CHECK((*form)[0] == IntMatrix{{1}});
  CHECK_FALSE(integral_extension_bilinear(domain, {RatMatrix{{2}}}, half));
}

TEST_CASE("solution lattice") {
  CHECK(solution_lattice({}, 2) == IntMatrix::identity(2));
  CHECK(solution_lattice({Constraint::divisible({1}, 2)}, 1) == IntMatrix{{2}});
  CHECK_THROWS_AS(solution_lattice({Constraint::equal({1, 2, 3})}, 2), InputError);

  std::mt19937 rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Constraint> cons;
    const int count = 1 + static_cast<int>(rng() % 3);
    for (int k = 0; k < count; ++k) {
      IntVector coeffs = random_matrix(rng, 1, 3, 4).row(0);
      const Integer mod = (rng() % 2) ? Integer(0) : Integer(2 + rng() % 4);
      cons.push_back(Constraint::divisible(coeffs, mod));
    }
    const IntMatrix basis = solution_lattice(cons, 3);
    for (std::size_t i = 0; i < basis.rows(); ++i)
      for (const auto& c : cons) CHECK(c.satisfied_by(basis.row(i)));
    for (int x = -4; x <= 4; ++x)
      for (int y = -4; y <= 4; ++y)
        for (int z = -4; z <= 4; ++z) {
          const IntVector v{x, y, z};
          bool ok = true;
          for (const auto& c : cons) ok = ok && c.satisfied_by(v);
          if (ok) CHECK(hermite_coordinates(basis, v).has_value());
        }
  }
}

TEST_CASE("quotient presentations") {
  const QuotientPresentation pgl2(1, IntMatrix{{2}});
  CHECK(pgl2.group().to_string() == "Z/2");
  CHECK(pgl2.class_of({5}) == IntVector{1});
  CHECK(pgl2.class_of(pgl2.lift({1})) == IntVector{1});

  const QuotientPresentation gl2(2, IntMatrix{{1, -1}});
  CHECK(gl2.group().to_string() == "Z");
  CHECK(gl2.free_projection() == IntMatrix{{1, 1}});
  CHECK(reduce_modulo(gl2.lift({1}), IntMatrix{{1, -1}}) == IntVector{1, 0});

  std::mt19937 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + rng() % 4;
    const IntMatrix sub = random_matrix(rng, rng() % 4, n, 4);
    const QuotientPresentation q(n, sub);
    CHECK(q.group() == cokernel(sub.rows() ? sub.transpose() : IntMatrix(n, 0)));
    for (std::size_t i = 0; i < sub.rows(); ++i) CHECK(q.normalize(q.class_of(sub.row(i))) == IntVector(q.group().num_generators()));
    for (std::size_t g = 0; g < q.group().num_generators(); ++g) {
      IntVector e(q.group().num_generators());
      e[g] = 1;
      CHECK(q.class_of(q.lift(e)) == q.normalize(e));
    }
  }
}

TEST_CASE("lattice index") {
  CHECK(lattice_index(IntMatrix{{2, 0}, {0, 3}}, IntMatrix::identity(2)) == 6);
  CHECK(same_lattice(IntMatrix{{1, 1}, {0, 1}}, IntMatrix::identity(2)));
  CHECK_THROWS_AS(lattice_index(IntMatrix{{1, 0}}, IntMatrix::identity(2)), ComputationError);
}
