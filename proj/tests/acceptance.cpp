// Property suite over the default corpus. One PASS/FAIL line per criterion;
// the exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <string>
#include <thread>

#include "sps/checks.hpp"
#include "sps/generators.hpp"
#include "sps/isomorphism.hpp"
#include "sps/structure.hpp"

using namespace sps;

namespace {

// Tolerances. Every criterion is exact; the numbers below are the minimum
// sample counts.
constexpr std::uint64_t kSeedLo = 0, kSeedHi = 199;
constexpr std::size_t kMaxJi = 12;
constexpr std::size_t kMinTechnicalSamples = 1000;
constexpr std::size_t kTechnicalSamplesPerLattice = 8;
constexpr std::size_t kCprojMaxSize = 40;

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string counts(const Summary& s) {
  return std::to_string(s.pass) + " pass, " + std::to_string(s.fail) + " fail, " + std::to_string(s.skip) + " skip";
}

std::vector<Record> run(const std::vector<Instance>& inst, Theorem t, const CheckOptions& opt) {
  const std::vector<Theorem> ts{t};
  return run_checks(inst, ts, opt);
}

void print_failures(const std::vector<Record>& rs, std::size_t limit = 3) {
  for (const auto& r : rs) {
    if (r.verdict != Verdict::fail) continue;
    if (limit-- == 0) break;
    std::printf("  %s\n", to_json(r).dump().c_str());
  }
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();
  CheckOptions opt;
  opt.threads = std::max(1u, std::thread::hardware_concurrency());
  opt.max_ji = kMaxJi;
  opt.cproj_max_size = kCprojMaxSize;
  opt.technical_samples = kTechnicalSamplesPerLattice;

  const auto corpus = default_corpus(kSeedLo, kSeedHi);
  std::vector<Instance> inst;
  for (const auto& e : corpus) inst.push_back({e.id, e.generated.lattice});

  {
    const Lattice C = named("c2sq");
    const auto f = insert_fork(C, covering_squares(C)[0]);
    const bool ok = f.lattice.size() == 7 && f.lattice.cover_count() == 9 && are_isomorphic(f.lattice, named("s7"));
    report(1, ok, "fork on C2^2 is S7 (" + std::to_string(f.lattice.size()) + " elements, " +
                      std::to_string(f.lattice.cover_count()) + " covers)");
  }

  {
    std::size_t prefixes = 0, bad = 0;
    auto check = [&](const Lattice& L) {
      ++prefixes;
      bad += !(is_semimodular(L) && is_slim(L) && is_slim_two_chains(L) && upper_cover_count_ok(L));
    };
    for (const auto& e : corpus) {
      for (const auto& st : e.generated.steps) check(st.before);
      check(e.generated.lattice);
    }
    report(2, bad == 0 && prefixes > 0,
           std::to_string(prefixes - bad) + "/" + std::to_string(prefixes) + " construction prefixes are SPS");
  }

  const auto one = run(inst, Theorem::one, opt);
  {
    const auto s = summarize(one);
    std::size_t trivial = 0;
    for (const auto& r : one)
      if (r.verdict == Verdict::pass)
        trivial += r.witness["zero_on_square"].get<std::size_t>() + r.witness["one_on_square"].get<std::size_t>();
    report(3, s.fail == 0 && trivial > 0,
           "trivial-on-square extensions on squares of lattices with |Ji| <= 12: " + counts(s) + ", " +
               std::to_string(trivial) + " congruences");
    print_failures(one);
  }

  {
    std::size_t ext = 0, not_ext = 0;
    for (const auto& r : one)
      if (r.verdict == Verdict::pass) {
        ext += r.witness["nontrivial_extends"].get<std::size_t>();
        not_ext += r.witness["nontrivial_does_not_extend"].get<std::size_t>();
      }
    const auto c2 = run_check({"c2sq", named("c2sq")}, Theorem::one, opt);
    const bool c2_ext = c2.size() == 1 && c2[0].verdict == Verdict::pass && c2[0].witness["nontrivial_extends"] > 0;
    report(4, ext > 0 && not_ext > 0,
           "nontrivial on square: " + std::to_string(ext) + " extend, " + std::to_string(not_ext) +
               " do not extend; C2^2 has an extending one: " + (c2_ext ? "yes" : "no"));
  }

  {
    const auto rs = run(inst, Theorem::delta, opt);
    const auto s = summarize(rs);
    report(5, s.fail == 0 && s.pass > 0, "delta equals con(m,t) on protrusion-free tight squares: " + counts(s));
    print_failures(rs);
  }

  {
    const auto rs = run(inst, Theorem::gamma, opt);
    auto s = summarize(rs);
    for (const auto& r : rs)
      if (r.verdict == Verdict::pass && !r.witness["final_K_is_ideal"].get<bool>()) ++s.fail, --s.pass;
    report(6, s.fail == 0 && s.pass > 0, "constructed gamma equals con(m,t), final K is the ideal of t: " + counts(s));
    print_failures(rs);
  }

  {
    const auto rs = run(inst, Theorem::two, opt);
    const auto s = summarize(rs);
    std::size_t near = 0;
    for (const auto& r : rs) near += r.witness.value("near_side_generates", false);
    report(7, s.fail == 0 && s.pass > 0,
           "wide squares where gamma is generated by con_L(t, a): " + counts(s) + "; generated by the near side con_L(t, a_near): " +
               std::to_string(near) + "/" + std::to_string(rs.size()));
    print_failures(rs, 2);
  }

  {
    const auto rs = run(inst, Theorem::three, opt);
    const auto s = summarize(rs);
    report(8, s.fail == 0 && s.pass > 0, "exactly one new Ji node, equal to gamma, on tight squares: " + counts(s));
    print_failures(rs);
  }

  {
    const auto rs = run(inst, Theorem::four, opt);
    const auto s = summarize(rs);
    std::size_t ones = 0, twos = 0;
    for (const auto& r : rs)
      if (r.verdict == Verdict::pass) (r.witness["upper_covers"] == 1 ? ones : twos) += 1;
    report(9, s.fail == 0 && s.pass > 0,
           "upper covers of gamma and its generating primes: " + counts(s) + " (" + std::to_string(ones) +
               " with one cover, " + std::to_string(twos) + " with two)");
    print_failures(rs);
  }

  {
    const auto rs = run(inst, Theorem::technical, opt);
    const auto s = summarize(rs);
    std::size_t samples = 0, cong = 0;
    for (const auto& r : rs) {
      samples += r.witness.value("samples", std::size_t{0});
      cong += r.witness.value("congruences", std::size_t{0});
    }
    report(10, s.fail == 0 && samples >= kMinTechnicalSamples,
           "cover test agrees with substitution on " + std::to_string(samples) + " sampled relations (" +
               std::to_string(cong) + " congruences): " + counts(s));
    print_failures(rs);
  }

  {
    const auto rs = run(inst, Theorem::cproj, opt);
    const auto s = summarize(rs);
    report(11, s.fail == 0 && s.pass > 0, "collapse iff cproj-reachable on lattices with n <= 40: " + counts(s));
    print_failures(rs);
  }

  {
    const Lattice L = named("s7");
    const auto ji = ji_congruences(L);
    bool ok = ji.size() == 3;
    if (ok) {
      const auto g = ji.find(principal_congruence(L, 4, 6));
      ok = g.has_value();
      for (std::size_t j = 0; ok && j < 3; ++j) {
        if (j == *g) continue;
        ok = ji.nodes[*g].congruence < ji.nodes[j].congruence;
        for (std::size_t k = 0; ok && k < 3; ++k)
          if (k != j && k != *g) ok = !ji.leq[j][k];
      }
    }
    report(12, ok, "Ji(Con S7) has " + std::to_string(ji.size()) + " nodes, con(m,t) below the other two");
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 12 criteria failed, %.1f s\n", failures, secs);
  return failures;
}
