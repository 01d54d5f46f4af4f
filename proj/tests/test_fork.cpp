#include <algorithm>

#include "doctest.h"
#include "fixtures.hpp"
#include "sps/fork.hpp"
#include "sps/isomorphism.hpp"
#include "sps/protrusion.hpp"
#include "sps/structure.hpp"

using namespace sps;

namespace {

// grid(3,3) top square: o = (1,1), a_l = (2,1), a_r = (1,2), t = (2,2)
const CoveringSquare grid_top{4, 7, 5, 8, SquareKind::tight};

ForkResult c2sq_fork() {
  const Lattice C = fx::c2sq();
  return insert_fork(C, covering_squares(C)[0]);
}

}  // namespace

TEST_CASE("c2sq becomes s7") {
  const auto f = c2sq_fork();
  CHECK(f.lattice.size() == 7);
  CHECK(f.lattice.cover_count() == 9);
  CHECK(are_isomorphic(f.lattice, fx::s7()));
  CHECK(is_sps(f.lattice));
  const auto& c = f.context;
  CHECK(c.n_left() == 1);
  CHECK(c.n_right() == 1);
  CHECK(c.m == 6);
  CHECK(f.lattice.join(c.b_l(), c.b_r()) == c.m);
  const auto low = f.lattice.lower_covers(3);
  CHECK(std::vector<ElementId>(low.begin(), low.end()) == std::vector<ElementId>{1, c.m, 2});
}

TEST_CASE("grid top square") {
  const Lattice G = grid(3, 3);
  const auto f = insert_fork(G, grid_top);
  CHECK(f.lattice.size() == 14);
  CHECK(is_sps(f.lattice));
  CHECK(f.context.n_left() == 2);
  CHECK(f.context.n_right() == 2);
  CHECK(f.context.left_wing == std::vector<PrimeInterval>{{4, 7}, {3, 6}});
  // z_{l,2} sits between y_{l,2} = 3 and x_{l,2} = 6
  CHECK(in_L_covers(f.context, f.context.z_left[1]) == std::pair<ElementId, ElementId>{6, 3});
  CHECK(in_L_covers(f.context, 4) == std::pair<ElementId, ElementId>{4, 4});
}

TEST_CASE("m is bounded by t and o") {
  const auto f = c2sq_fork();
  CHECK(in_L_covers(f.context, f.context.m) == std::pair<ElementId, ElementId>{3, 0});
}

TEST_CASE("bad squares") {
  const Lattice G = grid(3, 3);
  CHECK_THROWS_AS(insert_fork(G, CoveringSquare{0, 1, 2, 8, SquareKind::tight}), Error);
  CHECK_THROWS_AS(insert_fork(named("n5"), CoveringSquare{0, 1, 2, 3, SquareKind::tight}), Error);
}

TEST_CASE("repeated insertion stays sps") {
  Lattice L = fx::c2sq();
  for (int i = 0; i < 4; ++i) {
    const auto squares = covering_squares(L);
    const auto it = std::find_if(squares.begin(), squares.end(),
                                 [](const CoveringSquare& S) { return S.kind == SquareKind::tight; });
    REQUIRE(it != squares.end());
    L = insert_fork(L, *it).lattice;
    CHECK(is_semimodular(L));
    CHECK(is_slim(L));
    CHECK(is_patch(L));
  }
}

TEST_CASE("named congruences") {
  const Lattice C = fx::c2sq();
  const auto f = c2sq_fork();
  const auto n = named_congruences(C, f.lattice, f.context);
  CHECK(n.alpha_l.partition() == fx::blocks(4, {{1, 3}, {0, 2}}));
  CHECK(n.alpha_r.partition() == fx::blocks(4, {{2, 3}, {0, 1}}));
  const auto& c = f.context;
  CHECK(n.gamma.partition() == fx::blocks(7, {{0}, {1, c.b_l()}, {2, c.b_r()}, {c.m, 3}}));
  CHECK(n.gamma < n.alpha_bar_l);
  CHECK(n.gamma < n.alpha_bar_r);
  CHECK(n.gamma == gamma_oracle(f.lattice, f.context));
}

TEST_CASE("extensions of c2sq congruences") {
  const Lattice C = fx::c2sq();
  const auto f = c2sq_fork();
  const auto cons = all_congruences(C);
  REQUIRE(cons.size() == 4);
  for (const auto& a : cons) {
    const auto r = extends(C, f.lattice, f.context, a);
    CHECK(r.extends);
    REQUIRE(r.witness);
    CHECK(restrict_to(f.lattice, r.witness->partition(), f.context.embed) == a.partition());
  }
  CHECK(extend_one(C, f.lattice, f.context, one_block_congruence(C)).partition().is_one_block());
  CHECK(extend_zero(C, f.lattice, f.context, identity_congruence(C)).partition().is_identity());
  CHECK_THROWS_AS(extend_one(C, f.lattice, f.context, identity_congruence(C)), Error);
  CHECK_THROWS_AS(extend_zero(C, f.lattice, f.context, one_block_congruence(C)), Error);
}

TEST_CASE("zero extension with a run of z's") {
  const Lattice G = grid(3, 3);
  const auto squares = covering_squares(G);
  std::size_t runs = 0;
  for (const auto& S : squares) {
    const auto f = insert_fork(G, S);
    for (const auto& a : all_congruences(G)) {
      if (!restrict_to_square(a, S).is_identity()) continue;
      const auto b = extend_zero(G, f.lattice, f.context, a);
      CHECK(fx::brute_congruence(f.lattice, b.partition()));
      const auto& z = f.context.z_left;
      for (std::size_t i = 0; i + 1 < z.size(); ++i) runs += b.same_block(z[i], z[i + 1]);
    }
  }
  CHECK(runs > 0);
}

TEST_CASE("extensions across a corpus slice") {
  std::size_t not_extending = 0, extending = 0;
  for (const auto& e : default_corpus(0, 9)) {
    const Lattice& L = e.generated.lattice;
    if (ji_congruences(L).size() > 10) continue;
    const auto cons = all_congruences(L, 10);
    for (const auto& S : covering_squares(L)) {
      const auto f = insert_fork(L, S);
      for (const auto& a : cons) {
        const auto r = extends(L, f.lattice, f.context, a);
        if (r.trivial_on_square) {
          CHECK(r.extends);
          CHECK(fx::brute_congruence(f.lattice, r.witness->partition()));
        } else {
          (r.extends ? extending : not_extending) += 1;
        }
      }
    }
  }
  CHECK(not_extending > 0);
  CHECK(extending > 0);
}

TEST_CASE("protrusions") {
  const Lattice C = fx::c2sq();
  const auto S = covering_squares(C)[0];
  CHECK_FALSE(find_protrusion(C, initial_chain(C, S, Side::left), Side::left));

  const Lattice G = grid(3, 3);
  CHECK_FALSE(find_protrusion(G, initial_chain(G, grid_top, Side::left), Side::left));
  CHECK_FALSE(find_protrusion(G, initial_chain(G, grid_top, Side::right), Side::right));

  // s7 at {o, b_l, b_r, m}: a_l is left of the chain but not below m
  const Lattice L = fx::s7();
  const CoveringSquare T{fx::o, fx::b_l, fx::b_r, fx::m, SquareKind::tight};
  const auto chain = initial_chain(L, T, Side::left);
  CHECK(chain == std::vector<ElementId>{fx::m, fx::b_l, fx::o});
  const auto right = initial_chain(L, T, Side::right);
  CHECK_FALSE(find_protrusion(L, chain, Side::left));
  CHECK_FALSE(find_protrusion(L, right, Side::right));
}

TEST_CASE("protrusion in a corpus lattice") {
  std::size_t found = 0;
  for (const auto& e : default_corpus(0, 9)) {
    const Lattice& L = e.generated.lattice;
    for (const auto& S : covering_squares(L)) {
      for (Side side : {Side::left, Side::right}) {
        const auto chain = initial_chain(L, S, side);
        const auto p = find_protrusion(L, chain, side);
        if (!p) continue;
        ++found;
        const Lattice W = side == Side::left ? L : L.mirrored();
        CHECK(chain[p->k] == p->p);
        CHECK(W.covered_by(p->p_l, p->p));
        CHECK(W.covered_by(p->q_1, p->p));
        CHECK(W.covered_by(p->p_r, p->p));
        CHECK(side_of_chain(W, chain, p->q_1) == ChainSide::left);
        CHECK(!p->new_elements.empty());
        CHECK(p->new_elements.front() == p->q_1);
        CHECK(W.meet(p->q_1, p->p_l) == p->base);
        CHECK(p->next_chain.size() < chain.size() + p->new_elements.size() + 1);
        const auto smallest = find_protrusion(L, chain, side, ProtrusionOrder::smallest);
        REQUIRE(smallest);
        CHECK(smallest->k >= p->k);
      }
    }
  }
  CHECK(found > 0);
}

TEST_CASE("delta") {
  const Lattice C = fx::c2sq();
  const auto f = c2sq_fork();
  const auto d = delta_congruence(C, f.lattice, f.context);
  CHECK(d.tight);
  CHECK(d.is_congruence);
  REQUIRE(d.equals_oracle);
  CHECK(*d.equals_oracle);
  const auto& c = f.context;
  CHECK(d.delta == fx::blocks(7, {{0}, {1, c.b_l()}, {2, c.b_r()}, {c.m, 3}}));

  const Lattice G = grid(3, 3);
  const auto g = insert_fork(G, grid_top);
  const auto dg = delta_congruence(G, g.lattice, g.context);
  std::size_t pairs = 0;
  for (const auto& b : dg.delta.blocks()) pairs += b.size() == 2;
  CHECK(pairs == 5);
  CHECK(dg.delta == gamma_oracle(g.lattice, g.context).partition());
}

TEST_CASE("delta on a wide square is not a congruence") {
  // s7's wide square {b_l, a_l, m, t}: the listed blocks fail the cover test
  const Lattice L = fx::s7();
  const CoveringSquare W{fx::b_l, fx::a_l, fx::m, fx::t, SquareKind::wide};
  const auto f = insert_fork(L, W);
  const auto d = delta_congruence(L, f.lattice, f.context);
  CHECK_FALSE(d.tight);
  CHECK_FALSE(d.equals_oracle);
  CHECK(d.is_congruence == fx::brute_congruence(f.lattice, d.delta));
  CHECK_FALSE(d.is_congruence);
}

TEST_CASE("distributive squares") {
  for (const auto& S : covering_squares(grid(3, 4))) CHECK(is_distributive_square(grid(3, 4), S));
  CHECK(is_distributive_square(fx::c2sq(), covering_squares(fx::c2sq())[0]));
  CHECK_FALSE(is_distributive_square(fx::s7(), CoveringSquare{fx::b_l, fx::a_l, fx::m, fx::t, SquareKind::wide}));
}
