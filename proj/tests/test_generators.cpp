#include "doctest.h"
#include "fixtures.hpp"
#include "sps/generators.hpp"
#include "sps/isomorphism.hpp"
#include "sps/protrusion.hpp"
#include "sps/spsl_io.hpp"
#include "sps/structure.hpp"

using namespace sps;

TEST_CASE("grids") {
  CHECK(are_isomorphic(grid(2, 2), fx::c2sq()));
  CHECK(are_isomorphic(grid(1, 5), fx::chain(5)));
  const Lattice G = grid(3, 3);
  CHECK(G.size() == 9);
  CHECK(is_distributive(G));
  CHECK(is_sps(G));
  // first coordinate grows to the left
  CHECK(G.upper_covers(0)[0] == 3);
  CHECK(G.upper_covers(0)[1] == 1);
}

TEST_CASE("named lattices") {
  CHECK(named("s7").size() == 7);
  CHECK(is_patch(named("s7")));
  CHECK_FALSE(is_slim(named("m3")));
  CHECK_FALSE(is_semimodular(named("n5")));
  CHECK(named("c2sq").size() == 4);
  try {
    named("k4");
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownName);
  }
}

TEST_CASE("rng is the fixed lcg") {
  Rng a(1), b(1);
  for (int i = 0; i < 5; ++i) CHECK(a.next() == b.next());
  std::uint64_t s = 1;
  Rng r(1);
  for (int i = 0; i < 3; ++i) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    CHECK(r.next() == static_cast<std::uint32_t>(s >> 32));
  }
  Rng c(2);
  for (int i = 0; i < 100; ++i) CHECK(c.below(7) < 7);
}

TEST_CASE("base parsing") {
  GenSpec s;
  parse_base("grid:3,4", s);
  CHECK_FALSE(s.c2sq_base);
  CHECK(s.grid_m == 3);
  CHECK(s.grid_n == 4);
  CHECK(s.base_name() == "grid:3,4");
  parse_base("c2sq", s);
  CHECK(s.c2sq_base);
  CHECK_THROWS_AS(parse_base("grid:3", s), Error);
  CHECK_THROWS_AS(parse_base("cube", s), Error);
}

TEST_CASE("no forks echoes the base") {
  GenSpec s;
  s.grid_m = 3;
  s.grid_n = 2;
  const auto g = random_sps(s);
  CHECK(write_spsl(g.lattice) == write_spsl(grid(3, 2)));
  CHECK(g.steps.empty());
}

TEST_CASE("one fork on the square gives s7") {
  GenSpec s;
  s.seed = 1;
  s.fork_count = 1;
  CHECK(are_isomorphic(random_sps(s).lattice, fx::s7()));
  s.c2sq_base = true;
  CHECK(are_isomorphic(random_patch(s).lattice, fx::s7()));
  s.fork_count = 0;
  CHECK(random_patch(s).lattice.size() == 4);
}

TEST_CASE("size bookkeeping") {
  GenSpec s;
  s.seed = 7;
  s.grid_m = s.grid_n = 3;
  s.fork_count = 3;
  const auto g = random_sps(s);
  std::size_t n = 9;
  for (const auto& st : g.steps) {
    CHECK(st.before.size() == n);
    n += st.context.n_left() + st.context.n_right() + 1;
  }
  CHECK(g.steps.size() == 3);
  CHECK(g.lattice.size() == n);
  CHECK(is_sps(g.lattice));
}

TEST_CASE("patches stay patches") {
  GenSpec s;
  s.seed = 42;
  s.c2sq_base = true;
  s.fork_count = 5;
  const Lattice L = random_patch(s).lattice;
  CHECK(is_patch(L));
  CHECK(is_slim(L));
  CHECK(is_semimodular(L));
}

TEST_CASE("tight-only policy") {
  GenSpec s;
  s.seed = 3;
  s.grid_m = s.grid_n = 3;
  s.fork_count = 5;
  s.policy = SquarePolicy::tight_only;
  for (const auto& st : random_sps(s).steps) CHECK(st.square.kind == SquareKind::tight);
}

TEST_CASE("determinism") {
  for (std::uint64_t seed : {0ULL, 5ULL, 123ULL}) {
    const GenSpec s = default_spec(seed);
    CHECK(write_spsl(random_sps(s).lattice) == write_spsl(random_sps(s).lattice));
  }
}

TEST_CASE("default corpus") {
  const auto corpus = default_corpus();
  CHECK(corpus.size() == 200);
  std::size_t tight = 0, wide = 0, protruding = 0;
  for (const auto& e : corpus) {
    const Lattice& L = e.generated.lattice;
    CHECK(L.size() <= 60);
    CHECK(e.generated.steps.size() <= 6);
    CHECK(is_sps(L));
    for (const auto& S : covering_squares(L)) {
      if (S.kind == SquareKind::wide) {
        ++wide;
        continue;
      }
      ++tight;
      protruding += find_protrusion(L, initial_chain(L, S, Side::left), Side::left) ||
                    find_protrusion(L, initial_chain(L, S, Side::right), Side::right);
    }
  }
  CHECK(tight > 0);
  CHECK(wide > 0);
  CHECK(protruding > 0);
  CHECK(manifest_line(corpus[3], "seed3.spsl").rfind("3 ", 0) == 0);
}
