#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sps/congruence.hpp"
#include "sps/lattice.hpp"

namespace sps {

enum class Theorem { one, two, three, four, delta, gamma, technical, cproj };

/// "1", "2", "3", "4", "delta", "gamma", "technical", "cproj" or "all".
/// UnknownName otherwise.
std::vector<Theorem> parse_theorems(std::string_view text);
std::string theorem_name(Theorem t);

struct Instance {
  std::string id;
  Lattice lattice;
};

/// Default corpus seeds lo..hi, ids "seed<N>".
std::vector<Instance> generated_instances(std::uint64_t lo, std::uint64_t hi);

/// Reads a corpus manifest (seed base forks size path per line); paths are
/// relative to the manifest's directory. Ids are the file stems.
std::vector<Instance> manifest_instances(const std::filesystem::path& manifest);

/// "lo..hi" or a single seed.
std::pair<std::uint64_t, std::uint64_t> parse_seed_range(std::string_view text);

enum class Verdict { pass, fail, skip };

struct Record {
  std::string lattice;
  std::optional<CoveringSquare> square;
  Theorem theorem = Theorem::one;
  Verdict verdict = Verdict::pass;
  nlohmann::json witness = nlohmann::json::object();
  double ms = 0;
};

nlohmann::json to_json(const Record& r);

struct CheckOptions {
  std::size_t threads = 1;
  std::size_t max_ji = 12;            // the extension check skips lattices with more Ji nodes
  std::size_t cproj_max_size = 40;
  std::size_t technical_samples = 8;  // per lattice
  std::uint64_t seed = 0;             // technical sampling
};

/// Records for one lattice. Exceptions become failing records carrying the
/// message.
std::vector<Record> run_check(const Instance& inst, Theorem t, const CheckOptions& opt);

/// All (instance, theorem) pairs, instance-major, in input order regardless
/// of the thread count.
std::vector<Record> run_checks(std::span<const Instance> instances, std::span<const Theorem> theorems,
                               const CheckOptions& opt);

struct Summary {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t skip = 0;
};

Summary summarize(std::span<const Record> records);

/// Interval-classed equivalence relations on L: joins of a few random
/// principal congruences and random tilings by intervals, alternating.
std::vector<Partition> sample_interval_relations(const Lattice& L, std::size_t count, std::uint64_t seed);

}  // namespace sps
