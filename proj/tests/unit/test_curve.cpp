#include <doctest.h>

#include "nsforge/curve.hpp"

using namespace nsforge;

TEST_CASE("curve models") {
  CHECK(CurveModel::generic(2).ns_jc_rank == 1);
  CHECK(CurveModel::generic(0).ns_jc_rank == 0);
  const auto c = CurveModel::make(1, EndRing::make(IntMatrix{{1, 0}, {0, -1}}, {1, 0}));
  CHECK(c.ns_jc_rank == 1);
  CHECK(c.end.module_rank == 2);

  CHECK_THROWS_AS(CurveModel::make(0, EndRing::integers()), InputError);
  CHECK_THROWS_AS(EndRing::make(IntMatrix{{2}}, {1}), InputError);
  CHECK_THROWS_AS(EndRing::make(IntMatrix{{-1}}, {1}), InputError);
  CHECK_THROWS_AS(CurveModel::make(1, EndRing::make(IntMatrix{{1}}, {2})), InputError);
}

TEST_CASE("symmetric forms with values in the endomorphism ring") {
  CHECK(hom_s_basis(1, EndRing::integers()).rows() == 1);
  CHECK(hom_s_basis(2, EndRing::integers()).rows() == 3);
  CHECK(hom_s_basis(1, EndRing::zero()).rows() == 0);
  for (std::size_t r = 0; r <= 4; ++r) CHECK(hom_s_basis(r, EndRing::integers()).rows() == r * (r + 1) / 2);

  const auto e = EndRing::make(IntMatrix{{1, 0}, {0, -1}}, {1, 0});
  for (std::size_t r = 1; r <= 3; ++r) {
    const IntMatrix b = hom_s_basis(r, e);
    // diagonal entries lie in the fixed part, off-diagonal pairs are free
    CHECK(b.rows() == r * 1 + r * (r - 1) / 2 * 2);
    for (std::size_t i = 0; i < b.rows(); ++i) CHECK(is_hom_s(b.row(i), r, e));
  }
  // swap involution: fixed part has rank 1
  const auto swap = EndRing::make(IntMatrix{{0, 1}, {1, 0}}, {1, 1});
  CHECK(CurveModel::make(3, swap).ns_jc_rank == 1);
  CHECK(hom_s_basis(2, swap).rows() == 2 * 1 + 1 * 2);
}
