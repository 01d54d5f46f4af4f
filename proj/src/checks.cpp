#include "sps/checks.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <sstream>
#include <thread>

#include "sps/fork.hpp"
#include "sps/gamma.hpp"
#include "sps/generators.hpp"
#include "sps/protrusion.hpp"
#include "sps/spsl_io.hpp"
#include "sps/structure.hpp"

namespace sps {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

json square_json(const CoveringSquare& S) {
  return {{"o", S.o}, {"a_l", S.a_l}, {"a_r", S.a_r}, {"t", S.t},
          {"kind", S.kind == SquareKind::tight ? "tight" : "wide"}};
}

json blocks_json(const Partition& P) {
  json out = json::array();
  for (const auto& b : P.blocks())
    if (b.size() > 1) out.push_back(b);
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ULL;
  return h;
}

// Runs `body` for one square and turns exceptions into a failing record.
template <class F>
Record per_square(const Instance& inst, Theorem t, const CoveringSquare& S, F&& body) {
  Record r{inst.id, S, t, Verdict::pass, json::object(), 0};
  const auto start = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.verdict = Verdict::fail;
    r.witness["error"] = e.what();
  }
  r.ms = elapsed_ms(start);
  return r;
}

std::vector<Record> check_one(const Instance& inst, const CheckOptions& opt) {
  const Lattice& L = inst.lattice;
  const JiOrder ji = ji_congruences(L);
  if (ji.size() > opt.max_ji) {
    Record r{inst.id, std::nullopt, Theorem::one, Verdict::skip, {{"ji", ji.size()}}, 0};
    return {r};
  }
  const auto cons = all_congruences(L, ji, opt.max_ji);
  std::vector<Record> out;
  for (const auto& S : covering_squares(L)) {
    out.push_back(per_square(inst, Theorem::one, S, [&](Record& r) {
      const auto f = insert_fork(L, S);
      std::size_t zero = 0, one = 0, ext = 0, not_ext = 0;
      for (const auto& alpha : cons) {
        const auto res = extends(L, f.lattice, f.context, alpha);
        if (res.trivial_on_square) {
          (restrict_to_square(alpha, S).is_one_block() ? one : zero) += 1;
        } else if (res.extends) {
          ++ext;
        } else {
          if (not_ext++ == 0) r.witness["non_extending"] = blocks_json(alpha.partition());
        }
      }
      r.witness["congruences"] = cons.size();
      r.witness["zero_on_square"] = zero;
      r.witness["one_on_square"] = one;
      r.witness["nontrivial_extends"] = ext;
      r.witness["nontrivial_does_not_extend"] = not_ext;
    }));
  }
  return out;
}

std::vector<Record> check_squares(const Instance& inst, Theorem t) {
  const Lattice& L = inst.lattice;
  std::vector<Record> out;
  for (const auto& S : covering_squares(L)) {
    const bool tight = S.kind == SquareKind::tight;
    if (t == Theorem::two ? tight : !tight) continue;
    out.push_back(per_square(inst, t, S, [&](Record& r) {
      const auto f = insert_fork(L, S);
      const Lattice& LS = f.lattice;
      const auto& ctx = f.context;
      switch (t) {
        case Theorem::two: {
          const auto w = wide_square_gamma(L, LS, ctx);
          r.witness["a"] = w.a;
          r.witness["a_left_of_square"] = w.mirrored;
          r.witness["near_side_generates"] = w.gamma_equals_alpha_bar_near;
          if (!w.gamma_equals_generated) {
            r.verdict = Verdict::fail;
            r.witness["gamma"] = blocks_json(gamma_oracle(LS, ctx).partition());
            r.witness["generated"] = blocks_json(w.generated.partition());
          }
          break;
        }
        case Theorem::three: {
          const auto rep = new_ji_check(L, LS, ctx);
          r.witness["ji_base"] = rep.base_nodes;
          r.witness["ji_fork"] = rep.fork_nodes;
          r.witness["new_nodes"] = rep.new_nodes.size();
          if (!rep.new_is_gamma) r.verdict = Verdict::fail;
          break;
        }
        case Theorem::four: {
          const auto up = gamma_upper_covers(LS, ctx);
          const auto G = gamma_generators(LS, ctx);
          r.witness["upper_covers"] = up.covers.size();
          r.witness["generators"] = G.size();
          break;
        }
        case Theorem::delta: {
          try {
            const auto d = delta_congruence(L, LS, ctx);
            r.witness["delta"] = blocks_json(d.delta);
          } catch (const Error& e) {
            if (e.code() != ErrorCode::HasProtrusion) throw;
            r.verdict = Verdict::skip;
            r.witness["reason"] = "protrusion";
          }
          break;
        }
        case Theorem::gamma: {
          const auto g = gamma_full(L, LS, ctx);
          std::size_t nice = 0, steps = 0;
          for (const auto& st : g.trace)
            if (st.protrusion) ++steps, nice += st.protrusion->nice_base;
          r.witness["stages"] = g.trace.size();
          r.witness["protrusion_steps"] = steps;
          r.witness["nice_base_steps"] = nice;
          r.witness["final_K_is_ideal"] = g.trace.back().K_is_ideal;
          r.witness["pi"] = blocks_json(g.pi.partition());
          break;
        }
        default:
          break;
      }
    }));
  }
  return out;
}

std::vector<Record> check_technical(const Instance& inst, const CheckOptions& opt) {
  Record r{inst.id, std::nullopt, Theorem::technical, Verdict::pass, json::object(), 0};
  const auto start = Clock::now();
  try {
    const auto samples = sample_interval_relations(inst.lattice, opt.technical_samples, opt.seed ^ fnv1a(inst.id));
    std::size_t congruences = 0, disagree = 0;
    for (const auto& P : samples) {
      ensure(has_interval_classes(inst.lattice, P), "sampled relation without interval classes");
      const bool full = is_congruence(inst.lattice, P);
      const bool covers = is_congruence_via_covers(inst.lattice, P);
      congruences += full;
      if (full != covers && disagree++ == 0) r.witness["disagreement"] = blocks_json(P);
    }
    r.witness["samples"] = samples.size();
    r.witness["congruences"] = congruences;
    r.witness["disagreements"] = disagree;
    if (disagree) r.verdict = Verdict::fail;
  } catch (const std::exception& e) {
    r.verdict = Verdict::fail;
    r.witness["error"] = e.what();
  }
  r.ms = elapsed_ms(start);
  return {r};
}

std::vector<Record> check_cproj(const Instance& inst, const CheckOptions& opt) {
  const Lattice& L = inst.lattice;
  Record r{inst.id, std::nullopt, Theorem::cproj, Verdict::pass, json::object(), 0};
  if (L.size() > opt.cproj_max_size) {
    r.verdict = Verdict::skip;
    r.witness["size"] = L.size();
    return {r};
  }
  const auto start = Clock::now();
  try {
    CprojSearch search(L);
    const auto primes = L.prime_intervals();
    std::size_t pairs = 0, collapsed = 0;
    for (ElementId a = 0; a < L.size(); ++a)
      for (ElementId b = 0; b < L.size(); ++b) {
        if (!L.less(a, b)) continue;
        ++pairs;
        for (const auto& q : primes) collapsed += collapses_iff_cproj_check(L, a, b, q, &search);
      }
    r.witness["pairs"] = pairs;
    r.witness["primes"] = primes.size();
    r.witness["collapsed"] = collapsed;
  } catch (const std::exception& e) {
    r.verdict = Verdict::fail;
    r.witness["error"] = e.what();
  }
  r.ms = elapsed_ms(start);
  return {r};
}

}  // namespace

std::vector<Theorem> parse_theorems(std::string_view text) {
  static const std::pair<std::string_view, Theorem> names[] = {
      {"1", Theorem::one},         {"2", Theorem::two},         {"3", Theorem::three},
      {"4", Theorem::four},        {"delta", Theorem::delta},   {"gamma", Theorem::gamma},
      {"technical", Theorem::technical}, {"cproj", Theorem::cproj}};
  if (text == "all") {
    std::vector<Theorem> all;
    for (const auto& [n, t] : names) all.push_back(t);
    return all;
  }
  for (const auto& [n, t] : names)
    if (n == text) return {t};
  throw Error(ErrorCode::UnknownName, "unknown theorem: " + std::string(text));
}

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::one: return "1";
    case Theorem::two: return "2";
    case Theorem::three: return "3";
    case Theorem::four: return "4";
    case Theorem::delta: return "delta";
    case Theorem::gamma: return "gamma";
    case Theorem::technical: return "technical";
    case Theorem::cproj: return "cproj";
  }
  return "?";
}

std::vector<Instance> generated_instances(std::uint64_t lo, std::uint64_t hi) {
  std::vector<Instance> out;
  for (auto& e : default_corpus(lo, hi)) out.push_back({e.id, std::move(e.generated.lattice)});
  return out;
}

std::vector<Instance> manifest_instances(const std::filesystem::path& manifest) {
  std::ifstream in(manifest);
  if (!in) throw Error(ErrorCode::Parse, "cannot open manifest " + manifest.string());
  std::vector<Instance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string seed, base, forks, size, path;
    if (!(ss >> seed >> base >> forks >> size >> path))
      throw Error(ErrorCode::Parse, "manifest line " + std::to_string(lineno) + ": expected 5 fields");
    const auto file = manifest.parent_path() / path;
    out.push_back({file.stem().string(), read_spsl_file(file)});
  }
  return out;
}

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text) {
  auto num = [&](std::string_view s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw Error(ErrorCode::Parse, "bad seed range: " + std::string(text));
    return std::stoull(std::string(s));
  };
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) {
    const auto s = num(text);
    return {s, s};
  }
  const auto lo = num(text.substr(0, dots)), hi = num(text.substr(dots + 2));
  if (lo > hi) throw Error(ErrorCode::Parse, "empty seed range: " + std::string(text));
  return {lo, hi};
}

json to_json(const Record& r) {
  static const char* verdicts[] = {"pass", "fail", "skip"};
  return {{"lattice", r.lattice},
          {"square", r.square ? square_json(*r.square) : json(nullptr)},
          {"theorem", theorem_name(r.theorem)},
          {"verdict", verdicts[static_cast<int>(r.verdict)]},
          {"witness", r.witness},
          {"ms", r.ms}};
}

std::vector<Record> run_check(const Instance& inst, Theorem t, const CheckOptions& opt) {
  try {
    switch (t) {
      case Theorem::one: return check_one(inst, opt);
      case Theorem::technical: return check_technical(inst, opt);
      case Theorem::cproj: return check_cproj(inst, opt);
      default: return check_squares(inst, t);
    }
  } catch (const std::exception& e) {
    return {Record{inst.id, std::nullopt, t, Verdict::fail, {{"error", e.what()}}, 0}};
  }
}

std::vector<Record> run_checks(std::span<const Instance> instances, std::span<const Theorem> theorems,
                               const CheckOptions& opt) {
  const std::size_t tasks = instances.size() * theorems.size();
  std::vector<std::vector<Record>> results(tasks);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks;)
      results[i] = run_check(instances[i / theorems.size()], theorems[i % theorems.size()], opt);
  };
  const std::size_t n = std::clamp<std::size_t>(opt.threads, 1, std::max<std::size_t>(tasks, 1));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<Record> out;
  for (auto& rs : results)
    for (auto& r : rs) out.push_back(std::move(r));
  return out;
}

Summary summarize(std::span<const Record> records) {
  Summary s;
  for (const auto& r : records) {
    if (r.verdict == Verdict::pass) ++s.pass;
    else if (r.verdict == Verdict::fail) ++s.fail;
    else ++s.skip;
  }
  return s;
}

std::vector<Partition> sample_interval_relations(const Lattice& L, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t n = L.size();
  const auto primes = L.prime_intervals();
  std::vector<Partition> out;
  for (std::size_t s = 0; s < count; ++s) {
    if (s % 2 == 0 && !primes.empty()) {
      std::vector<CoverPair> gens;
      const std::uint32_t k = 1 + rng.below(2);
      for (std::uint32_t i = 0; i < k; ++i) {
        const auto& p = primes[rng.below(static_cast<std::uint32_t>(primes.size()))];
        gens.emplace_back(p.bottom, p.top);
      }
      out.push_back(congruence_generated(L, gens).partition());
      continue;
    }
    std::vector<ElementId> order = L.elements();
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(static_cast<std::uint32_t>(i))]);
    std::vector<char> used(n, 0);
    std::vector<std::vector<ElementId>> blocks;
    for (ElementId x : order) {
      if (used[x]) continue;
      std::vector<ElementId> tops;
      for (ElementId y = 0; y < n; ++y) {
        if (!L.leq(x, y)) continue;
        bool free = true;
        for (ElementId z = 0; z < n && free; ++z)
          if (used[z] && L.leq(x, z) && L.leq(z, y)) free = false;
        if (free) tops.push_back(y);
      }
      const ElementId y = rng.below(2) == 0 ? x : tops[rng.below(static_cast<std::uint32_t>(tops.size()))];
      std::vector<ElementId> block;
      for (ElementId z = 0; z < n; ++z)
        if (L.leq(x, z) && L.leq(z, y)) block.push_back(z), used[z] = 1;
      blocks.push_back(std::move(block));
    }
    out.push_back(Partition::from_blocks(n, blocks));
  }
  return out;
}

}  // namespace sps
