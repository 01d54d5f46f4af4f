#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "sps/fork.hpp"
#include "sps/lattice.hpp"

namespace sps {

/// C_m × C_n; element (i, j) has id i*n + j, and the first coordinate grows
/// to the left.
Lattice grid(std::uint32_t m, std::uint32_t n);

/// m3, n5, s7, c2sq. S7 ids: o=0, b_l=1, b_r=2, a_l=3, m=4, a_r=5, t=6;
/// c2sq ids: o=0, a_l=1, a_r=2, t=3. UnknownName otherwise.
Lattice named(std::string_view name);

/// 64-bit LCG with Knuth's MMIX constants; draws use the high 32 bits.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint32_t next() { return static_cast<std::uint32_t>(engine_() >> 32); }
  std::uint32_t below(std::uint32_t bound) { return next() % bound; }

 private:
  std::linear_congruential_engine<std::uint64_t, 6364136223846793005ULL, 1442695040888963407ULL, 0> engine_;
};

enum class SquarePolicy { uniform, tight_only };

struct GenSpec {
  std::uint64_t seed = 0;
  bool c2sq_base = false;     // otherwise grid(grid_m, grid_n)
  std::uint32_t grid_m = 2;
  std::uint32_t grid_n = 2;
  std::uint32_t fork_count = 0;
  SquarePolicy policy = SquarePolicy::uniform;
  std::size_t max_size = 0;   // stop inserting once a fork would exceed this; 0 = no cap

  std::string base_name() const;
};

/// Parses "c2sq" or "grid:m,n" into the base fields of `spec`.
void parse_base(std::string_view text, GenSpec& spec);

struct ForkStep {
  Lattice before;
  CoveringSquare square;  // ids of `before`
  ForkContext context;
};

struct Generated {
  Lattice lattice;
  std::vector<ForkStep> steps;  // steps[i].before is construction prefix i
};

/// Seeded fork insertions on a grid (or C2²) base; every prefix is checked SPS.
Generated random_sps(const GenSpec& spec);

/// random_sps from C2², additionally checking is_patch after every insertion.
Generated random_patch(const GenSpec& spec);

struct CorpusEntry {
  std::string id;
  GenSpec spec;
  Generated generated;
};

/// Seeds lo..hi: base drawn from C2² and grids up to 4×4, at most 6 forks,
/// sizes capped at 60.
GenSpec default_spec(std::uint64_t seed);
std::vector<CorpusEntry> default_corpus(std::uint64_t lo = 0, std::uint64_t hi = 199);

/// One manifest line: seed, base, forks, size, path.
std::string manifest_line(const CorpusEntry& e, std::string_view path);

}  // namespace sps
