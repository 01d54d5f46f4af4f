#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "sps/checks.hpp"
#include "sps/spsl_io.hpp"

using namespace sps;

TEST_CASE("theorem names") {
  CHECK(parse_theorems("all").size() == 8);
  CHECK(parse_theorems("4") == std::vector<Theorem>{Theorem::four});
  CHECK(theorem_name(Theorem::cproj) == "cproj");
  CHECK_THROWS_AS(parse_theorems("5"), Error);
}

TEST_CASE("seed ranges") {
  CHECK(parse_seed_range("0..199") == std::pair<std::uint64_t, std::uint64_t>{0, 199});
  CHECK(parse_seed_range("7") == std::pair<std::uint64_t, std::uint64_t>{7, 7});
  CHECK_THROWS_AS(parse_seed_range("9..3"), Error);
  CHECK_THROWS_AS(parse_seed_range("a..3"), Error);
}

TEST_CASE("extension harness on the square") {
  const Instance c{"c2sq", fx::c2sq()};
  const auto rs = run_check(c, Theorem::one, {});
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].verdict == Verdict::pass);
  const auto& w = rs[0].witness;
  CHECK(w["congruences"] == 4);
  CHECK(w["nontrivial_does_not_extend"] == 0);
  CHECK(w["zero_on_square"].get<int>() + w["one_on_square"].get<int>() + w["nontrivial_extends"].get<int>() == 4);
}

TEST_CASE("records are json lines") {
  const Instance s{"s7", fx::s7()};
  const auto rs = run_check(s, Theorem::two, {});
  REQUIRE(rs.size() == 2);
  for (const auto& r : rs) {
    const auto j = to_json(r);
    CHECK(j["lattice"] == "s7");
    CHECK(j["theorem"] == "2");
    CHECK(j["square"]["kind"] == "wide");
    CHECK(j.contains("ms"));
    CHECK(j["witness"]["near_side_generates"] == true);
    CHECK(j.dump().find('\n') == std::string::npos);
  }
}

TEST_CASE("delta skips protrusions") {
  const auto rs = run_checks(generated_instances(0, 9), std::vector<Theorem>{Theorem::delta}, {});
  const auto s = summarize(rs);
  CHECK(s.fail == 0);
  CHECK(s.pass > 0);
  CHECK(s.skip > 0);
}

TEST_CASE("order does not depend on threads") {
  const auto inst = generated_instances(0, 5);
  const std::vector<Theorem> ts{Theorem::three, Theorem::technical};
  CheckOptions one, four;
  four.threads = 4;
  const auto a = run_checks(inst, ts, one), b = run_checks(inst, ts, four);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].lattice == b[i].lattice);
    CHECK(a[i].theorem == b[i].theorem);
    CHECK(a[i].square == b[i].square);
    CHECK(a[i].witness == b[i].witness);
  }
}

TEST_CASE("sampled relations") {
  const Lattice L = grid(3, 3);
  const auto rs = sample_interval_relations(L, 40, 9);
  CHECK(rs.size() == 40);
  std::size_t cong = 0;
  for (const auto& P : rs) {
    CHECK(has_interval_classes(L, P));
    CHECK(is_congruence_via_covers(L, P) == fx::brute_congruence(L, P));
    cong += fx::brute_congruence(L, P);
  }
  CHECK(cong >= 20);
  CHECK(cong < 40);
  const auto again = sample_interval_relations(L, 40, 9);
  CHECK(again == rs);
}

TEST_CASE("failures become records") {
  const Instance m3{"m3", named("m3")};
  const auto rs = run_check(m3, Theorem::two, {});
  REQUIRE(!rs.empty());
  CHECK(rs[0].verdict == Verdict::fail);
  CHECK(rs[0].witness.contains("error"));
}

TEST_CASE("cproj skips large lattices") {
  CheckOptions opt;
  opt.cproj_max_size = 5;
  const auto rs = run_check({"s7", fx::s7()}, Theorem::cproj, opt);
  CHECK(rs[0].verdict == Verdict::skip);
  const auto ok = run_check({"s7", fx::s7()}, Theorem::cproj, {});
  CHECK(ok[0].verdict == Verdict::pass);
}

TEST_CASE("manifest round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "sps_test_checks";
  std::filesystem::create_directories(dir);
  write_spsl_file(dir / "a.spsl", fx::s7());
  std::ofstream(dir / "manifest.txt") << "# seed base forks size path\n0 c2sq 1 7 a.spsl\n";
  const auto inst = manifest_instances(dir / "manifest.txt");
  REQUIRE(inst.size() == 1);
  CHECK(inst[0].id == "a");
  CHECK(inst[0].lattice.size() == 7);
  std::ofstream(dir / "bad.txt") << "0 c2sq\n";
  CHECK_THROWS_AS(manifest_instances(dir / "bad.txt"), Error);
  std::filesystem::remove_all(dir);
}
