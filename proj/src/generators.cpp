#include "sps/generators.hpp"

#include <charconv>

#include "sps/structure.hpp"

namespace sps {

Lattice grid(std::uint32_t m, std::uint32_t n) {
  ensure(m >= 1 && n >= 1, "grid: empty factor");
  const std::size_t size = std::size_t{m} * n;
  auto id = [n](std::uint32_t i, std::uint32_t j) { return static_cast<ElementId>(i * n + j); };
  std::vector<std::vector<ElementId>> lower(size), upper(size);
  std::vector<CoverPair> covers;
  for (std::uint32_t i = 0; i < m; ++i) {
    for (std::uint32_t j = 0; j < n; ++j) {
      const ElementId x = id(i, j);
      if (i + 1 < m) upper[x].push_back(id(i + 1, j));
      if (j + 1 < n) upper[x].push_back(id(i, j + 1));
      if (j > 0) lower[x].push_back(id(i, j - 1));
      if (i > 0) lower[x].push_back(id(i - 1, j));
      for (ElementId y : upper[x]) covers.emplace_back(x, y);
    }
  }
  return Lattice::build(size, covers, lower, upper);
}

Lattice named(std::string_view name) {
  using V = std::vector<std::vector<ElementId>>;
  if (name == "c2sq") {
    const std::vector<CoverPair> c = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    return Lattice::build(4, c, V{{}, {0}, {0}, {1, 2}}, V{{1, 2}, {3}, {3}, {}});
  }
  if (name == "s7") {
    const std::vector<CoverPair> c = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {2, 5}, {3, 6}, {4, 6}, {5, 6}};
    V lower = {{}, {0}, {0}, {1}, {1, 2}, {2}, {3, 4, 5}};
    V upper = {{1, 2}, {3, 4}, {4, 5}, {6}, {6}, {6}, {}};
    return Lattice::build(7, c, lower, upper);
  }
  if (name == "m3") {
    const std::vector<CoverPair> c = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
    V lower = {{}, {0}, {0}, {0}, {1, 2, 3}};
    V upper = {{1, 2, 3}, {4}, {4}, {4}, {}};
    return Lattice::build(5, c, lower, upper);
  }
  if (name == "n5") {
    // 0 < 1 < 2 < 4 on the left, 0 < 3 < 4 on the right.
    const std::vector<CoverPair> c = {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}};
    V lower = {{}, {0}, {1}, {0}, {2, 3}};
    V upper = {{1, 3}, {2}, {4}, {4}, {}};
    return Lattice::build(5, c, lower, upper);
  }
  throw Error(ErrorCode::UnknownName, "unknown lattice name '" + std::string(name) + "'");
}

std::string GenSpec::base_name() const {
  if (c2sq_base) return "c2sq";
  return "grid:" + std::to_string(grid_m) + "," + std::to_string(grid_n);
}

void parse_base(std::string_view text, GenSpec& spec) {
  if (text == "c2sq") {
    spec.c2sq_base = true;
    return;
  }
  auto bad = [&] { return Error(ErrorCode::Parse, "bad base '" + std::string(text) + "'"); };
  if (!text.starts_with("grid:")) throw bad();
  text.remove_prefix(5);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw bad();
  auto num = [&](std::string_view s) {
    std::uint32_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v == 0) throw bad();
    return v;
  };
  spec.c2sq_base = false;
  spec.grid_m = num(text.substr(0, comma));
  spec.grid_n = num(text.substr(comma + 1));
}

namespace {

Generated generate(const GenSpec& spec, bool patch) {
  Lattice current = spec.c2sq_base ? named("c2sq") : grid(spec.grid_m, spec.grid_n);
  ensure(is_sps(current), "generator: base is not SPS");
  if (patch) ensure(is_patch(current), "generator: base is not a patch lattice");
  Rng rng(spec.seed);
  Generated out{current, {}};
  for (std::uint32_t step = 0; step < spec.fork_count; ++step) {
    auto squares = covering_squares(current);
    if (spec.policy == SquarePolicy::tight_only)
      std::erase_if(squares, [](const CoveringSquare& s) { return s.kind != SquareKind::tight; });
    if (squares.empty()) break;
    const CoveringSquare S = squares[rng.below(static_cast<std::uint32_t>(squares.size()))];
    auto res = insert_fork(current, S);
    if (spec.max_size != 0 && res.lattice.size() > spec.max_size) break;
    ensure(is_sps(res.lattice) && upper_cover_count_ok(res.lattice), "generator: prefix is not SPS");
    if (patch) ensure(is_patch(res.lattice), "generator: prefix is not a patch lattice");
    out.steps.push_back({current, S, std::move(res.context)});
    current = std::move(res.lattice);
  }
  out.lattice = std::move(current);
  return out;
}

}  // namespace

Generated random_sps(const GenSpec& spec) { return generate(spec, false); }

Generated random_patch(const GenSpec& spec) {
  ensure(spec.c2sq_base, "random_patch: base must be c2sq");
  return generate(spec, true);
}

GenSpec default_spec(std::uint64_t seed) {
  GenSpec spec;
  spec.seed = seed;
  // The base and fork count come from a stream separate from the square draws.
  Rng pick(seed ^ 0x9e3779b97f4a7c15ULL);
  const std::uint32_t base = pick.below(10);
  if (base == 0) {
    spec.c2sq_base = true;
  } else {
    spec.grid_m = 2 + pick.below(3);
    spec.grid_n = 2 + pick.below(3);
  }
  spec.fork_count = pick.below(7);
  spec.max_size = 60;
  return spec;
}

std::vector<CorpusEntry> default_corpus(std::uint64_t lo, std::uint64_t hi) {
  std::vector<CorpusEntry> out;
  for (std::uint64_t seed = lo; seed <= hi; ++seed) {
    GenSpec spec = default_spec(seed);
    out.push_back({"seed" + std::to_string(seed), spec, random_sps(spec)});
  }
  return out;
}

std::string manifest_line(const CorpusEntry& e, std::string_view path) {
  return std::to_string(e.spec.seed) + " " + e.spec.base_name() + " " + std::to_string(e.generated.steps.size()) +
         " " + std::to_string(e.generated.lattice.size()) + " " + std::string(path);
}

}  // namespace sps
