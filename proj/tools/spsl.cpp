#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sps/checks.hpp"
#include "sps/congruence.hpp"
#include "sps/fork.hpp"
#include "sps/gamma.hpp"
#include "sps/generators.hpp"
#include "sps/render.hpp"
#include "sps/spsl_io.hpp"
#include "sps/structure.hpp"

namespace fs = std::filesystem;
using namespace sps;

namespace {

// Exit 2: the input or the request is malformed.
struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::Parse:
    case ErrorCode::UnknownName:
    case ErrorCode::NotCoveringSquare:
    case ErrorCode::NotTight:
      return 2;
    default:
      return 1;
  }
}

CoveringSquare parse_square(const Lattice& L, const std::string& text) {
  std::vector<ElementId> ids;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      const auto v = std::stoul(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      ids.push_back(static_cast<ElementId>(v));
    } catch (const std::exception&) {
      throw Usage("--square expects o,a_l,a_r,t");
    }
  }
  if (ids.size() != 4) throw Usage("--square expects o,a_l,a_r,t");
  for (ElementId x : ids)
    if (x >= L.size()) throw Error(ErrorCode::NotCoveringSquare, "element " + std::to_string(x) + " out of range");
  auto S = find_square(L, ids[0], ids[1], ids[2], ids[3]);
  if (!S) throw Error(ErrorCode::NotCoveringSquare, "not a covering square: " + text);
  return *S;
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Usage("cannot write " + out);
  f << text;
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string ids(std::span<const ElementId> xs) {
  std::string s;
  for (ElementId x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
  return s;
}

int cmd_validate(const std::string& file) {
  std::optional<Lattice> L;
  try {
    L = read_spsl_file(file);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    std::cout << "invalid: " << e.what() << "\n";
    return 1;
  }
  std::cout << "lattice: ok, " << L->size() << " elements, " << L->cover_count() << " covers\n";
  std::cout << "embedding: ok\n";
  std::cout << "sps: " << yes(is_sps(*L)) << "\n";
  return 0;
}

int cmd_props(const std::string& file) {
  const Lattice L = read_spsl_file(file);
  std::cout << "elements: " << L.size() << "\n"
            << "semimodular: " << yes(is_semimodular(L)) << "\n"
            << "slim: " << yes(is_slim(L)) << "\n"
            << "ji_two_chains: " << yes(is_slim_two_chains(L)) << "\n"
            << "upper_covers_at_most_two: " << yes(upper_cover_count_ok(L)) << "\n"
            << "distributive: " << yes(is_distributive(L)) << "\n";
  const bool sps = is_sps(L);
  std::cout << "sps: " << yes(sps) << "\n";
  if (sps) {
    std::cout << "rectangular: " << yes(is_rectangular(L)) << "\n" << "patch: " << yes(is_patch(L)) << "\n";
  }
  const auto squares = covering_squares(L);
  const auto tight = std::count_if(squares.begin(), squares.end(),
                                   [](const CoveringSquare& S) { return S.kind == SquareKind::tight; });
  std::cout << "squares: " << tight << " tight + " << squares.size() - tight << " wide\n";
  for (const auto& S : squares)
    std::cout << "  square " << S.o << "," << S.a_l << "," << S.a_r << "," << S.t << " "
              << (S.kind == SquareKind::tight ? "tight" : "wide") << "\n";
  return 0;
}

std::string context_dump(const ForkContext& c) {
  std::ostringstream os;
  const auto& S = c.square;
  os << "# square " << S.o << "," << S.a_l << "," << S.a_r << "," << S.t << " "
     << (S.kind == SquareKind::tight ? "tight" : "wide") << "\n";
  os << "# m " << c.m << "\n";
  auto side = [&](const char* name, const std::vector<PrimeInterval>& wing, const std::vector<ElementId>& z) {
    os << "# " << name << " wing (y x z):";
    for (std::size_t i = 0; i < wing.size(); ++i)
      os << " (" << wing[i].bottom << " " << wing[i].top << " " << z[i] << ")";
    os << "\n";
  };
  side("left", c.left_wing, c.z_left);
  side("right", c.right_wing, c.z_right);
  return os.str();
}

int cmd_fork(const std::string& file, const std::string& square, const std::string& out) {
  const Lattice L = read_spsl_file(file);
  const auto r = insert_fork(L, parse_square(L, square));
  const std::string dump = context_dump(r.context);
  if (out.empty()) {
    std::cout << write_spsl(r.lattice) << dump;
  } else {
    emit(write_spsl(r.lattice) + dump, out);
    std::cout << "wrote " << out << " (" << r.lattice.size() << " elements)\n" << dump;
  }
  return 0;
}

int cmd_gamma(const std::string& file, const std::string& square, const std::string& mode) {
  const Lattice L = read_spsl_file(file);
  const CoveringSquare S = parse_square(L, square);
  const auto f = insert_fork(L, S);
  const Congruence oracle = gamma_oracle(f.lattice, f.context);
  const bool constructed = mode != "oracle";
  if (constructed && S.kind == SquareKind::wide)
    throw Error(ErrorCode::NotTight, "wide square; use --mode oracle or check --theorem 2");
  if (mode != "constructed") std::cout << "gamma (oracle):\n" << serialize_blocks(oracle.partition());
  if (!constructed) return 0;
  std::optional<GammaFull> full;
  try {
    full = gamma_full(L, f.lattice, f.context);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::InvariantViolated) throw;
    std::cout << "construction failed: " << e.what() << "\n";
    if (mode == "constructed") std::cout << "gamma (oracle):\n" << serialize_blocks(oracle.partition());
    return 1;
  }
  const GammaFull& g = *full;
  std::cout << "gamma (constructed):\n" << serialize_blocks(g.gamma.partition());
  if (mode == "both") std::cout << "equal: " << yes(g.gamma == oracle) << "\n";
  std::cout << "pi:\n" << serialize_blocks(g.pi.partition());
  std::cout << "trace:\n";
  for (const auto& st : g.trace) {
    std::cout << "  stage " << st.stage << " |K|=" << st.K.size();
    if (st.protrusion) {
      const auto& p = *st.protrusion;
      std::cout << " protrusion " << (p.side == Side::left ? "left" : "right") << " p=" << p.p << " new=[" << ids(p.new_elements)
                << "]";
    } else {
      std::cout << " no protrusion";
    }
    std::cout << " ideal=" << yes(st.K_is_ideal) << " equals_oracle_on_K=" << yes(st.equals_oracle) << "\n";
  }
  return g.gamma == oracle ? 0 : 1;
}

int cmd_check(const std::string& theorem, const std::string& corpus, const std::string& gen, std::size_t threads,
              const std::string& out) {
  if (corpus.empty() == gen.empty()) throw Usage("check needs exactly one of --corpus or --gen");
  const auto theorems = parse_theorems(theorem);
  std::vector<Instance> instances;
  if (!corpus.empty()) {
    instances = manifest_instances(corpus);
  } else {
    const auto [lo, hi] = parse_seed_range(gen);
    instances = generated_instances(lo, hi);
  }
  CheckOptions opt;
  opt.threads = threads;
  const auto records = run_checks(instances, theorems, opt);
  std::string lines;
  for (const auto& r : records) lines += to_json(r).dump() + "\n";
  emit(lines, out);
  bool failed = false;
  for (Theorem t : theorems) {
    std::vector<Record> mine;
    for (const auto& r : records)
      if (r.theorem == t) mine.push_back(r);
    const auto s = summarize(mine);
    const double rate = s.pass + s.fail ? 100.0 * static_cast<double>(s.pass) / static_cast<double>(s.pass + s.fail) : 100.0;
    std::cerr << "theorem " << theorem_name(t) << ": pass " << s.pass << " fail " << s.fail << " skip " << s.skip
              << " (" << rate << "% pass)\n";
    failed |= s.fail > 0;
  }
  return failed ? 1 : 0;
}

int cmd_render(const std::string& file, const std::string& format, const std::string& blocks, const std::string& out) {
  const Lattice L = read_spsl_file(file);
  const RenderFormat f = parse_render_format(format);
  std::optional<Partition> P;
  if (!blocks.empty()) {
    std::ifstream in(blocks);
    if (!in) throw Usage("cannot open " + blocks);
    std::stringstream ss;
    ss << in.rdbuf();
    P = parse_blocks(ss.str(), L.size());
  }
  emit(render(L, f, P), out);
  return 0;
}

int cmd_gen(const std::string& base, std::uint32_t forks, std::uint64_t seed, std::uint32_t count,
            const std::string& policy, std::size_t max_size, const std::string& corpus, const std::string& out) {
  if (out.empty()) throw Usage("gen needs --out");
  fs::create_directories(out);
  std::vector<CorpusEntry> entries;
  if (!corpus.empty()) {
    const auto [lo, hi] = parse_seed_range(corpus);
    entries = default_corpus(lo, hi);
  } else {
    for (std::uint32_t i = 0; i < count; ++i) {
      GenSpec spec;
      spec.seed = seed + i;
      parse_base(base, spec);
      spec.fork_count = forks;
      spec.max_size = max_size;
      if (policy == "tight") spec.policy = SquarePolicy::tight_only;
      else if (policy != "uniform") throw Usage("--policy is uniform or tight");
      Generated g = spec.c2sq_base ? random_patch(spec) : random_sps(spec);
      entries.push_back({"seed" + std::to_string(spec.seed), spec, std::move(g)});
    }
  }
  std::string manifest;
  for (const auto& e : entries) {
    const std::string name = e.id + ".spsl";
    write_spsl_file(fs::path(out) / name, e.generated.lattice);
    manifest += manifest_line(e, name) + "\n";
  }
  emit(manifest, (fs::path(out) / "manifest.txt").string());
  std::cout << "wrote " << entries.size() << " lattices to " << out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slim planar semimodular lattices: fork insertion and congruences"};
  app.set_config("--config", "", "key=value file with option defaults");
  app.require_subcommand(1, 1);

  std::string file, square, out, mode = "both", theorem, corpus, gen, format = "dot", blocks, base = "c2sq",
                                  policy = "uniform", gen_corpus;
  std::size_t threads = 1, max_size = 0;
  std::uint32_t forks = 0, count = 1;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "check an SPSL file");
  validate->add_option("file", file)->required();

  auto* props = app.add_subcommand("props", "structural predicates and covering squares");
  props->add_option("file", file)->required();

  auto* fork = app.add_subcommand("fork", "insert a fork at a covering square");
  fork->add_option("file", file)->required();
  fork->add_option("--square", square, "o,a_l,a_r,t")->required();
  fork->add_option("--out", out);

  auto* gamma = app.add_subcommand("gamma", "con(m,t) of the fork extension");
  gamma->add_option("file", file)->required();
  gamma->add_option("--square", square, "o,a_l,a_r,t")->required();
  gamma->add_option("--mode", mode)->check(CLI::IsMember({"constructed", "oracle", "both"}));

  auto* check = app.add_subcommand("check", "run a theorem harness over a corpus");
  check->add_option("--theorem", theorem, "1|2|3|4|delta|gamma|technical|cproj|all")->required();
  check->add_option("--corpus", corpus, "manifest file");
  check->add_option("--gen", gen, "seed range lo..hi of the default corpus");
  check->add_option("--threads", threads);
  check->add_option("--out", out, "JSON lines file (default stdout)");

  auto* rend = app.add_subcommand("render", "Hasse diagram as DOT or TikZ");
  rend->add_option("file", file)->required();
  rend->add_option("--format", format)->check(CLI::IsMember({"dot", "tikz"}));
  rend->add_option("--congruence", blocks, "block file to highlight");
  rend->add_option("--out", out);

  auto* gen_cmd = app.add_subcommand("gen", "generate SPS lattices by random fork insertions");
  gen_cmd->add_option("--base", base, "grid:m,n or c2sq");
  gen_cmd->add_option("--forks", forks);
  gen_cmd->add_option("--seed", seed);
  gen_cmd->add_option("--count", count, "consecutive seeds from --seed");
  gen_cmd->add_option("--policy", policy, "uniform or tight");
  gen_cmd->add_option("--max-size", max_size);
  gen_cmd->add_option("--corpus", gen_corpus, "write the default corpus for seeds lo..hi instead");
  gen_cmd->add_option("--out", out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate) return cmd_validate(file);
    if (*props) return cmd_props(file);
    if (*fork) return cmd_fork(file, square, out);
    if (*gamma) return cmd_gamma(file, square, mode);
    if (*check) return cmd_check(theorem, corpus, gen, threads, out);
    if (*rend) return cmd_render(file, format, blocks, out);
    if (*gen_cmd) return cmd_gen(base, forks, seed, count, policy, max_size, gen_corpus, out);
  } catch (const Usage& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
