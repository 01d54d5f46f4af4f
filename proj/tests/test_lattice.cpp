#include "doctest.h"
#include "fixtures.hpp"
#include "sps/isomorphism.hpp"
#include "sps/lattice.hpp"

using namespace sps;

namespace {

// glb by scanning all lower bounds
ElementId scan_meet(const Lattice& L, ElementId a, ElementId b) {
  for (ElementId c = 0; c < L.size(); ++c) {
    if (!L.leq(c, a) || !L.leq(c, b)) continue;
    bool greatest = true;
    for (ElementId d = 0; d < L.size(); ++d)
      if (L.leq(d, a) && L.leq(d, b) && !L.leq(d, c)) greatest = false;
    if (greatest) return c;
  }
  return L.size();
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvariantViolated;
}

}  // namespace

TEST_CASE("one element") {
  const Lattice L = Lattice::from_covers(1, {});
  CHECK(L.size() == 1);
  CHECK(L.bottom() == L.top());
  CHECK(L.meet(0, 0) == 0);
}

TEST_CASE("grid tables are componentwise") {
  const Lattice G = grid(3, 4);
  for (ElementId a = 0; a < G.size(); ++a)
    for (ElementId b = 0; b < G.size(); ++b) {
      const ElementId ai = a / 4, aj = a % 4, bi = b / 4, bj = b % 4;
      CHECK(G.meet(a, b) == std::min(ai, bi) * 4 + std::min(aj, bj));
      CHECK(G.join(a, b) == std::max(ai, bi) * 4 + std::max(aj, bj));
      CHECK(G.leq(a, b) == (ai <= bi && aj <= bj));
    }
}

TEST_CASE("c2sq is the square") {
  const Lattice L = fx::c2sq();
  CHECK(L.size() == 4);
  CHECK(L.cover_count() == 4);
  CHECK(L.meet(1, 2) == 0);
  CHECK(L.join(1, 2) == 3);
  CHECK(L.lower_covers(3).size() == 2);
  CHECK(L.lower_covers(3)[0] == 1);
}

TEST_CASE("s7 from its nine covers") {
  const Lattice L = fx::s7();
  CHECK(L.size() == 7);
  CHECK(L.cover_count() == 9);
  CHECK(L.bottom() == fx::o);
  CHECK(L.top() == fx::t);
  for (ElementId a = 0; a < 7; ++a)
    for (ElementId b = 0; b < 7; ++b) {
      CHECK(L.meet(a, b) == scan_meet(L, a, b));
      CHECK(L.meet(a, b) == L.meet(b, a));
      CHECK(L.join(a, L.meet(a, b)) == a);
      CHECK(L.meet(a, L.join(a, b)) == a);
    }
  const auto low = L.lower_covers(fx::t);
  CHECK(std::vector<ElementId>(low.begin(), low.end()) == std::vector<ElementId>{fx::a_l, fx::m, fx::a_r});
}

TEST_CASE("heights") {
  const Lattice L = fx::s7();
  CHECK(L.height(fx::o) == 0);
  CHECK(L.height(fx::m) == 2);
  CHECK(L.height(fx::t) == 3);
}

TEST_CASE("build rejects") {
  SUBCASE("transitive edge") {
    const std::vector<CoverPair> c{{0, 1}, {1, 2}, {0, 2}};
    CHECK(code_of([&] { Lattice::from_covers(3, c); }) == ErrorCode::NotReduced);
  }
  SUBCASE("two tops") {
    const std::vector<CoverPair> c{{0, 1}, {0, 2}};
    CHECK(code_of([&] { Lattice::from_covers(3, c); }) == ErrorCode::MultipleExtremes);
  }
  SUBCASE("no join") {
    // 0 < 1,2 < 3,4 < 5: 1 and 2 have two minimal upper bounds
    const std::vector<CoverPair> c{{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 5}, {4, 5}};
    CHECK(code_of([&] { Lattice::from_covers(6, c); }) == ErrorCode::NotALattice);
  }
  SUBCASE("cycle") {
    const std::vector<CoverPair> c{{0, 1}, {1, 0}};
    CHECK(code_of([&] { Lattice::from_covers(2, c); }) == ErrorCode::NotALattice);
  }
  SUBCASE("order list not a permutation") {
    const std::vector<CoverPair> c{{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    std::vector<std::vector<ElementId>> low(4), up(4);
    up[0] = {1, 1};
    CHECK(code_of([&] { Lattice::build(4, c, low, up); }) == ErrorCode::BadOrder);
  }
}

TEST_CASE("mirrored reverses the cover lists") {
  const Lattice L = fx::s7(), M = L.mirrored();
  const auto low = M.lower_covers(fx::t);
  CHECK(low[0] == fx::a_r);
  CHECK(low[2] == fx::a_l);
  CHECK(M.mirrored().lower_covers(fx::t)[0] == fx::a_l);
}

TEST_CASE("sublattices") {
  const Lattice L = fx::s7();
  const std::vector<ElementId> square{fx::o, fx::a_l, fx::a_r, fx::t};
  CHECK(is_sublattice(L, square));
  const std::vector<ElementId> open{fx::b_l, fx::b_r};
  CHECK_FALSE(is_sublattice(L, open));
  CHECK(generated_sublattice(L, open) == std::vector<ElementId>{fx::o, fx::b_l, fx::b_r, fx::m});
  const auto sub = induced_sublattice(L, square);
  CHECK(sub.lattice.size() == 4);
  CHECK(sub.lattice.cover_count() == 4);
  CHECK(sub.to_local[fx::m] == -1);
}

TEST_CASE("isomorphism") {
  CHECK(are_isomorphic(fx::s7(), fx::s7().mirrored()));
  CHECK(are_isomorphic(grid(2, 3), grid(3, 2)));
  CHECK_FALSE(are_isomorphic(grid(2, 3), fx::chain(6)));
  CHECK_FALSE(are_isomorphic(named("m3"), named("n5")));
  const auto map = find_isomorphism(grid(2, 2), fx::c2sq());
  REQUIRE(map);
  const Lattice A = grid(2, 2), B = fx::c2sq();
  for (ElementId a = 0; a < 4; ++a)
    for (ElementId b = 0; b < 4; ++b) CHECK(A.leq(a, b) == B.leq((*map)[a], (*map)[b]));
}
