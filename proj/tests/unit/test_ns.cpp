#include <doctest.h>

#include "nsforge/ns.hpp"

using namespace nsforge;

namespace {

const CurveModel g0 = CurveModel::generic(0);
const CurveModel g2 = CurveModel::generic(2);

std::vector<IntVector> generators(const Reductive& g) {
  std::vector<IntVector> out;
  const std::size_t k = g.pi1_group().num_generators();
  out.emplace_back(k);
  for (std::size_t i = 0; i < k; ++i) {
    IntVector d(k);
    d[i] = 1;
    out.push_back(d);
  }
  return out;
}

} // namespace

TEST_CASE("tori") {
  CHECK(ns_torus(catalog("T1"), g2).rank() == 2);
  CHECK(ns_torus(catalog("T1"), g0).rank() == 1);
  for (std::size_t r = 1; r <= 4; ++r) {
    const auto t = catalog("T", static_cast<long>(r));
    CHECK(ns_torus(t, g2).rank() == r + r * (r + 1) / 2);
    CHECK(ns_torus(t, g2).rank() == rank_formula(t, g2));
    CHECK(ns_torus(t, g2).basis == IntMatrix::identity(r + r * (r + 1) / 2));
  }
  CHECK_THROWS_AS(ns_torus(catalog("GL2"), g2), InputError);
  // identical for all components
  const auto t2 = catalog("T2");
  CHECK(ns_reductive(t2, {3, -1}, g2).basis == ns_reductive(t2, {0, 0}, g2).basis);
}

TEST_CASE("simply connected groups") {
  auto ns = ns_simply_connected(catalog("SL2"));
  CHECK(ns.rank() == 1);
  CHECK(ns_simply_connected(catalog("SL2xSL3")).rank() == 2);
  CHECK(ns_simply_connected(catalog("Spin5")).rank() == 1);
  CHECK(catalog("Spin5").factors()[0].form == IntMatrix{{2, -2}, {-2, 4}});
  CHECK_THROWS_AS(ns_simply_connected(catalog("PGL2")), InputError);

  const auto sl3 = catalog("SL3");
  CHECK(is_ns_simply_connected_form(sl3, sl3.factor_form(0)));
  CHECK_FALSE(is_ns_simply_connected_form(sl3, IntMatrix{{1, 0}, {0, 1}}));
  CHECK(decompose_form(sl3, Integer(3) * sl3.factor_form(0)) == IntVector{3});
  CHECK_FALSE(decompose_form(sl3, IntMatrix{{2, 0}, {0, 2}}));

  for (const auto& name : standard_catalog()) {
    const auto g = catalog(name);
    if (!g.pi1_group().is_trivial() || g.l() == 0) continue;
    CAPTURE(name);
    CHECK(ns_reductive(g, {}, g2).basis == ns_simply_connected(g).basis);
    CHECK(ns_reductive(g, {}, g0).basis == ns_simply_connected(g).basis);
  }
}

TEST_CASE("small reductive examples") {
  const auto sl2 = catalog("SL2");
  CHECK(ns_reductive(sl2, {}, g2).basis == IntMatrix{{1}});
  const auto pgl2 = catalog("PGL2");
  CHECK(ns_reductive(pgl2, {1}, g2).basis == IntMatrix{{2}});
  CHECK(ns_reductive(pgl2, {1}, g0).basis == IntMatrix{{2}});
  CHECK(ns_reductive(pgl2, {0}, g0).basis == IntMatrix{{1}});
  // at genus >= 1 condition (2) also forces even coefficients
  CHECK(ns_reductive(pgl2, {0}, g2).basis == IntMatrix{{2}});
  const auto gl2 = catalog("GL2");
  CHECK(ns_reductive(gl2, {1}, g2).rank() == 3);
  CHECK(ns_reductive(gl2, {0}, g2).rank() == 3);
  CHECK(ns_reductive(gl2, {1}, g0).rank() == 2);
  CHECK_THROWS_AS(ns_reductive(gl2, {1, 2}, g2), InputError);
}

TEST_CASE("rank formula") {
  CHECK(rank_formula(catalog("GL2"), g2) == 3);
  CHECK(rank_formula(catalog("T2"), g2) == 5);
  CHECK(rank_formula(catalog("PGL2"), g2) == 1);
  CHECK(rank_formula(catalog("PGL2"), g0) == 1);
  const auto cm = CurveModel::make(1, EndRing::make(IntMatrix{{1, 0}, {0, -1}}, {1, 0}));
  for (const auto& name : {"GL2", "GL3", "T2", "T3", "GL2xGL2", "PGL2xT1"}) {
    const auto g = catalog(name);
    for (const auto& d : generators(g)) CHECK(ns_reductive(g, d, cm).rank() == rank_formula(g, cm));
  }
}

TEST_CASE("lift independence and post hoc conditions") {
  for (const auto& name : {"GL2", "PGL2", "PGL3", "SO5", "GL3", "PGL2xT1", "SO4"}) {
    const auto g = catalog(name);
    CAPTURE(name);
    for (const auto& curve : {g0, g2}) {
      const NSContext ctx(g, curve);
      for (const auto& d : generators(g)) {
        const NSLattice ns = ns_reductive(g, d, curve);
        IntVector other = g.lift_component(d);
        for (std::size_t i = 0; i < g.l(); ++i)
          for (std::size_t k = 0; k < g.n(); ++k) other[k] += Integer(static_cast<long>(i + 2)) * g.coroots()(i, k);
        CHECK(ns_reductive_with_lift(g, other, curve).basis == ns.basis);
        for (std::size_t r = 0; r < ns.rank(); ++r) CHECK(satisfies_conditions(ctx, ns.basis.row(r), other));
      }
    }
  }
}

TEST_CASE("extension analysis") {
  auto ext = ns_extension_analysis(catalog("GL2"), {1}, g2);
  CHECK(ext.pr2_image == IntMatrix{{1}});
  CHECK(ext.exact);
  CHECK(ext.characterization_match);

  for (const auto& curve : {g0, g2}) {
    ext = ns_extension_analysis(catalog("PGL2"), {1}, curve);
    CHECK(ext.pr2_image == IntMatrix{{2}});
    CHECK(ext.characterization_match);
  }
  ext = ns_extension_analysis(catalog("T2"), {0, 0}, g2);
  CHECK(ext.pr2_image.rows() == 0);
  CHECK(ext.qstar_rank == 5);
  CHECK(ext.exact);

  for (const auto& name : standard_catalog()) {
    const auto g = catalog(name);
    CAPTURE(name);
    for (const auto& curve : {g0, g2})
      for (const auto& d : generators(g)) {
        const auto e = ns_extension_analysis(g, d, curve);
        CHECK(e.exact);
        CHECK(e.characterization_match);
      }
  }
}

TEST_CASE("continuous part and report") {
  CHECK(hom_pi1_jacobian(catalog("PGL4")) == "J_C[4]");
  CHECK(hom_pi1_jacobian(catalog("GL3")) == "J_C");
  CHECK(hom_pi1_jacobian(catalog("SL3")) == "0");
  CHECK(hom_pi1_jacobian(catalog("T2xPGL2")) == "J_C^2 x J_C[2]");

  auto r = picard_report(catalog("GL2"), {1}, g2);
  CHECK(r.continuous_part == "J_C");
  CHECK(r.ns.rank() == 3);
  r = picard_report(catalog("SL2"), {}, g0);
  CHECK(r.continuous_part == "0");
  CHECK(r.ns.basis == IntMatrix{{1}});
  r = picard_report(catalog("T1"), {0}, g0);
  CHECK(r.continuous_part == "J_C");
  CHECK(r.ns.rank() == 1);
}
