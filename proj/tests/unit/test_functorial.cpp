#include <doctest.h>

#include "nsforge/functorial.hpp"

#include <random>

using namespace nsforge;

namespace {

const CurveModel g0 = CurveModel::generic(0);
const CurveModel g2 = CurveModel::generic(2);

GroupHom hom(const std::string& g, const std::string& h, const IntMatrix& cochar) {
  return GroupHom::make(catalog(g), catalog(h), cochar);
}

IntMatrix ones_row(std::size_t n) {
  IntMatrix m(1, n);
  for (std::size_t i = 0; i < n; ++i) m(0, i) = 1;
  return m;
}

std::vector<IntVector> components(const Reductive& g) {
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

TEST_CASE("identity homomorphisms induce identities") {
  for (const auto& name : {"GL2", "PGL2", "PGL3", "SO5", "GL2xSL2", "T2", "Sp4", "PGL2xT1"}) {
    const auto g = catalog(name);
    const auto id = GroupHom::make(g, g, IntMatrix::identity(g.n()));
    CAPTURE(name);
    CHECK(id.coroot_map == IntMatrix::identity(g.l()));
    for (const auto& curve : {g0, g2})
      for (const auto& d : components(g)) {
        const auto map = phi_ns(id, d, curve);
        CHECK(map.lattice_matrix() == IntMatrix::identity(map.source_basis.rows()));
      }
  }
}

TEST_CASE("homomorphism validation") {
  CHECK_THROWS_AS(hom("SL2", "GL2", IntMatrix{{1, -1}}), InputError);
  // image of the coroot is not in the coroot lattice of PGL2
  CHECK_THROWS_AS(hom("SL2", "PGL2", IntMatrix{{1}}), InputError);
  CHECK(hom("SL2", "PGL2", IntMatrix{{2}}).coroot_map == IntMatrix{{1}});
  CHECK_THROWS_AS(hom("SL2", "T1", IntMatrix{{1}}), InputError);
  CHECK(hom("GL2", "T1", ones_row(2)).coroot_map.rows() == 0);
  const auto c = hom("SL2", "GL2", IntMatrix{{1}, {-1}});
  const auto pr = hom("GL2", "PGL2", IntMatrix{{1, -1}});
  CHECK(pr.compose(c).cochar == IntMatrix{{2}});
  CHECK(pr.push_component({1, }) == IntVector{1});
}

TEST_CASE("determinant") {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto gl = catalog("GL", static_cast<long>(n));
    const auto det = GroupHom::make(gl, catalog("T1"), ones_row(n));
    const Integer nn(static_cast<long>(n));
    for (const auto& d : components(gl)) {
      CAPTURE(n);
      const auto at2 = phi_ns(det, d, g2).matrix;
      IntMatrix want(at2.rows(), 2);
      want(0, 0) = nn;
      want(1, 1) = nn * nn;
      CHECK(at2 == want);
      CHECK(phi_ns(det, d, g0).matrix.col(0)[0] == nn);
    }
  }
}

TEST_CASE("special linear inclusion keeps the basic form") {
  for (long n = 2; n <= 4; ++n) {
    IntMatrix cochar(static_cast<std::size_t>(n), static_cast<std::size_t>(n - 1));
    for (long i = 0; i + 1 < n; ++i) {
      cochar(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) = 1;
      cochar(static_cast<std::size_t>(i + 1), static_cast<std::size_t>(i)) = -1;
    }
    const auto inc = GroupHom::make(catalog("SL", n), catalog("GL", n), cochar);
    for (const auto& curve : {g0, g2}) {
      const auto map = phi_ns(inc, {}, curve);
      CAPTURE(n);
      // the image is the k coordinate of each basis vector and is all of NS(M_SL)
      const auto& src = map.source_basis;
      Integer g = 0;
      for (std::size_t j = 0; j < src.rows(); ++j) {
        CHECK(map.matrix(0, j) == src(j, src.cols() - 1));
        g = gcd(g, map.matrix(0, j));
      }
      CHECK(g == 1);
    }
  }
}

TEST_CASE("maximal torus embedding") {
  const auto pgl2 = catalog("PGL2");
  CHECK(iota_ns(pgl2, {1}, g0).matrix == IntMatrix{{-1}});
  CHECK(iota_ns(pgl2, {1}, g2).matrix == IntMatrix{{-1}, {1}});
  CHECK(iota_ns(pgl2, {0}, g2).matrix == IntMatrix{{0}, {1}});
  const auto gl2 = catalog("GL2");
  for (const auto& curve : {g0, g2}) {
    const auto map = iota_ns(gl2, {1, 0}, curve);
    // injective
    CHECK(rank(map.matrix) == map.source_basis.rows());
  }
}

TEST_CASE("q* for GL2") {
  const auto map = qstar(catalog("GL2"), {1}, g2);
  CHECK(map.matrix == IntMatrix{{2, 0}, {0, 4}, {0, 0}});
  CHECK(qstar(catalog("GL2"), {1}, g0).matrix == IntMatrix{{2}, {0}});
  CHECK(qstar(catalog("T2"), {0, 0}, g2).lattice_matrix() == IntMatrix::identity(5));
}

TEST_CASE("Dynkin indices") {
  CHECK(dynkin_index(hom("SL2", "SL3", IntMatrix{{1}, {0}})).value == 1);
  CHECK(dynkin_index(hom("SL2", "SL3", IntMatrix{{2}, {2}})).value == 4);
  const auto trivial = dynkin_index(hom("SL2", "SL3", IntMatrix{{0}, {0}}));
  CHECK(trivial.trivial);
  CHECK(trivial.value == 0);

  const auto sl2 = catalog("SL2");
  const IntMatrix sym3{{3}, {1}, {-1}, {-3}};
  CHECK(dynkin_by_weights(sl2, sym3) == 10);
  CHECK(dynkin_index(representation_hom(sl2, sym3)).value == 10);
  for (long k = 1; k <= 6; ++k) {
    IntMatrix w(static_cast<std::size_t>(k + 1), 1);
    for (long j = 0; j <= k; ++j) w(static_cast<std::size_t>(j), 0) = k - 2 * j;
    const Integer expect((k * (k + 1) * (k + 2)) / 6);
    CHECK(dynkin_by_weights(sl2, w) == expect);
    CHECK(dynkin_index(representation_hom(sl2, w)).value == expect);
  }
  CHECK_THROWS_AS(dynkin_by_weights(sl2, IntMatrix{{1}, {1}}), InputError);
  CHECK_THROWS_AS(dynkin_index(hom("GL2", "T1", ones_row(2))), InputError);

  // SL3 standard and adjoint representations
  const auto sl3 = catalog("SL3");
  const IntMatrix std3{{1, 0}, {-1, 1}, {0, -1}};
  CHECK(dynkin_by_weights(sl3, std3) == 1);
  IntMatrix adj(8, 2);
  std::size_t r = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (i != j) {
        adj(r, 0) = std3(i, 0) - std3(j, 0);
        adj(r, 1) = std3(i, 1) - std3(j, 1);
        ++r;
      }
  CHECK(dynkin_by_weights(sl3, adj) == 6);
  CHECK(dynkin_index(representation_hom(sl3, adj)).value == 6);
}

TEST_CASE("Dynkin index rescales the basic form") {
  for (const auto& [g, h, cochar] : std::vector<std::tuple<std::string, std::string, IntMatrix>>{
           {"SL2", "SL3", IntMatrix{{2}, {2}}}, {"SL2", "SL3", IntMatrix{{1}, {0}}}, {"SL2", "Sp4", IntMatrix{{0}, {1}}}}) {
    const auto phi = hom(g, h, cochar);
    const auto d = dynkin_index(phi);
    const auto map = phi_ns(phi, {}, g2);
    CHECK(map.lattice_matrix() == IntMatrix{{d.value}});
  }
}

TEST_CASE("pull-back commutes with the torus embedding") {
  const std::vector<std::tuple<std::string, std::string, IntMatrix>> homs = {
      {"SL2", "GL2", IntMatrix{{1}, {-1}}},
      {"GL2", "PGL2", IntMatrix{{1, -1}}},
      {"GL2", "T1", IntMatrix{{1, 1}}},
      {"GL2", "GL3", IntMatrix{{1, 0}, {0, 1}, {0, 0}}},
      {"SL2", "PGL2", IntMatrix{{2}}},
      {"SL3", "PGL3", IntMatrix{{2, -1}, {-1, 2}}},
      {"GL2", "GL2xGL2", IntMatrix{{1, 0}, {0, 1}, {1, 0}, {0, 1}}},
      {"T1", "GL2", IntMatrix{{1}, {1}}},
      {"SL2xSL2", "SO4", IntMatrix{{1, 1}, {-1, 1}}},
      {"Spin5", "SO5", IntMatrix{{1, 0}, {-1, 2}}},
  };
  for (const auto& [gs, hs, cochar] : homs) {
    const auto phi = hom(gs, hs, cochar);
    CAPTURE(gs);
    CAPTURE(hs);
    for (const auto& curve : {g0, g2}) {
      const NSContext cg(phi.source, curve), ch(phi.target, curve);
      const IntMatrix pull = torus_pullback(phi, curve);
      for (const auto& d : components(phi.source)) {
        const IntVector delta = phi.source.lift_component(d);
        const IntVector eta = phi.cochar.apply(delta);
        const auto map = phi_ns(phi, d, curve);
        map.lattice_matrix();
        for (std::size_t r = 0; r < map.source_basis.rows(); ++r) {
          const IntVector via_torus = pull.apply(iota_apply(ch, eta, map.source_basis.row(r)));
          CHECK(via_torus == iota_apply(cg, delta, map.matrix.col(r)));
        }
      }
    }
  }
}

TEST_CASE("functoriality along random chains") {
  struct Edge {
    std::string g, h;
    IntMatrix cochar;
  };
  const std::vector<Edge> edges = {
      {"T1", "GL2", IntMatrix{{1}, {1}}}, {"GL2", "T1", IntMatrix{{1, 1}}}, {"T1", "T1", IntMatrix{{3}}},
      {"SL2", "GL2", IntMatrix{{1}, {-1}}}, {"GL2", "PGL2", IntMatrix{{1, -1}}}, {"SL2", "PGL2", IntMatrix{{2}}},
      {"GL2", "GL3", IntMatrix{{1, 0}, {0, 1}, {0, 0}}}, {"GL3", "T1", IntMatrix{{1, 1, 1}}},
      {"SL2", "SL3", IntMatrix{{2}, {2}}}, {"SL3", "PGL3", IntMatrix{{2, -1}, {-1, 2}}},
      {"PGL2", "SO3", IntMatrix{{1}}}, {"GL2", "GL2", IntMatrix{{0, 1}, {1, 0}}},
  };
  std::mt19937 rng(20261016);
  std::size_t chains = 0;
  while (chains < 60) {
    std::vector<const Edge*> path{&edges[rng() % edges.size()]};
    const std::size_t len = 2 + rng() % 2;
    for (std::size_t step = 1; step < len; ++step) {
      std::vector<const Edge*> next;
      for (const auto& e : edges)
        if (e.g == path.back()->h) next.push_back(&e);
      if (next.empty()) break;
      path.push_back(next[rng() % next.size()]);
    }
    if (path.size() < 2) continue;
    ++chains;
    const auto curve = (chains % 2) ? g2 : g0;
    const auto first = hom(path[0]->g, path[0]->h, path[0]->cochar);
    GroupHom total = first;
    IntVector delta = first.source.lift_component(components(first.source).back());
    const IntVector d = first.source.component_of(delta);
    IntMatrix composed = IntMatrix::identity(ns_reductive(first.source, d, curve).rank());
    IntVector lift = delta;
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto phi = hom(path[i]->g, path[i]->h, path[i]->cochar);
      if (i) total = phi.compose(total);
      const auto step = phi_ns(phi, phi.source.component_of(lift), curve, lift);
      composed = composed * step.lattice_matrix();
      lift = phi.cochar.apply(lift);
    }
    const auto direct = phi_ns(total, d, curve, delta);
    CAPTURE(total.source.name());
    CAPTURE(total.target.name());
    CHECK(direct.lattice_matrix() == composed);
  }
}

TEST_CASE("cartesian description") {
  for (const auto& name : standard_catalog()) {
    const auto g = catalog(name);
    if (g.n() > 6) continue;
    CAPTURE(name);
    for (const auto& curve : {g0, g2})
      for (const auto& d : components(g)) {
        const IntVector delta = g.lift_component(d);
        CHECK(cartesian_lattice(g, delta, curve) == ns_reductive(g, d, curve).basis);
      }
  }
}
