#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sps {

/// Dense element index, 0..n-1, local to one Lattice value.
using ElementId = std::uint32_t;
using CoverPair = std::pair<ElementId, ElementId>;  // (lower, upper)

enum class ErrorCode {
  NotALattice,
  NotReduced,
  BadOrder,
  MultipleExtremes,
  NotSlim,
  NotIntervalClasses,
  NotSublattice,
  TooLarge,
  NotCoveringSquare,
  NotSPS,
  PreconditionViolated,
  EmbeddingInconsistent,
  HasProtrusion,
  NotTight,
  NoProtrusion,
  NonTermination,
  NotWide,
  UnknownName,
  Parse,
  InvariantViolated,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Throws InvariantViolated with `what` unless `cond` holds.
void ensure(bool cond, const std::string& what);

struct PrimeInterval {
  ElementId bottom = 0;
  ElementId top = 0;
  auto operator<=>(const PrimeInterval&) const = default;
};

enum class SquareKind { tight, wide };

/// o covered by a_l and a_r, both covered by t; a_l is left of a_r.
struct CoveringSquare {
  ElementId o = 0;
  ElementId a_l = 0;
  ElementId a_r = 0;
  ElementId t = 0;
  SquareKind kind = SquareKind::tight;
  bool operator==(const CoveringSquare&) const = default;
};

using Trajectory = std::vector<PrimeInterval>;

/// A finite lattice given by its cover graph plus a planar embedding, stored
/// as left-to-right ordered lists of lower and upper covers. The order
/// relation and both operation tables are derived and checked at build time;
/// values are immutable afterwards.
class Lattice {
 public:
  /// Validates and builds. An empty per-element order list is accepted when
  /// that element has at most one cover in the corresponding direction.
  static Lattice build(std::size_t n, std::span<const CoverPair> covers,
                       std::vector<std::vector<ElementId>> lower_order,
                       std::vector<std::vector<ElementId>> upper_order);

  /// Builds with every order list taken in ascending id order. Useful for
  /// lattices whose embedding is irrelevant (sublattices, oracles).
  static Lattice from_covers(std::size_t n, std::span<const CoverPair> covers);

  std::size_t size() const { return n_; }
  ElementId bottom() const { return bottom_; }
  ElementId top() const { return top_; }

  bool leq(ElementId a, ElementId b) const { return leq_[a * n_ + b] != 0; }
  bool less(ElementId a, ElementId b) const { return a != b && leq(a, b); }
  bool comparable(ElementId a, ElementId b) const { return leq(a, b) || leq(b, a); }
  /// a ≺ b
  bool covered_by(ElementId a, ElementId b) const;

  ElementId meet(ElementId a, ElementId b) const { return meet_[a * n_ + b]; }
  ElementId join(ElementId a, ElementId b) const { return join_[a * n_ + b]; }

  /// Left-to-right.
  std::span<const ElementId> lower_covers(ElementId x) const { return lower_[x]; }
  std::span<const ElementId> upper_covers(ElementId x) const { return upper_[x]; }

  /// Length of a maximal chain from the bottom (the lattices here are graded
  /// when semimodular; otherwise this is the longest chain).
  std::size_t height(ElementId x) const { return height_[x]; }

  /// All cover pairs sorted by (lower, upper).
  std::vector<CoverPair> cover_pairs() const;
  std::vector<PrimeInterval> prime_intervals() const;
  std::size_t cover_count() const;

  /// Same lattice with every cover list reversed (the diagram reflected).
  Lattice mirrored() const;

  std::vector<ElementId> elements() const;

 private:
  Lattice() = default;

  std::size_t n_ = 0;
  ElementId bottom_ = 0;
  ElementId top_ = 0;
  std::vector<std::vector<ElementId>> lower_;
  std::vector<std::vector<ElementId>> upper_;
  std::vector<char> leq_;
  std::vector<ElementId> meet_;
  std::vector<ElementId> join_;
  std::vector<std::size_t> height_;
};

/// True iff `subset` is closed under meet and join.
bool is_sublattice(const Lattice& lattice, std::span<const ElementId> subset);

/// The sublattice on `subset` (must be closed) with its own cover relation.
/// `to_parent[i]` is the parent id of local element i; local ids follow the
/// order of `subset`. Cover lists are kept in parent order where possible.
struct Sublattice {
  Lattice lattice;
  std::vector<ElementId> to_parent;
  std::vector<std::int64_t> to_local;  // -1 outside the subset
};

Sublattice induced_sublattice(const Lattice& lattice, std::span<const ElementId> subset);

/// Closure of `generators` under meet and join, sorted.
std::vector<ElementId> generated_sublattice(const Lattice& lattice,
                                            std::span<const ElementId> generators);

}  // namespace sps
