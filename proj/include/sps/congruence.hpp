#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sps/lattice.hpp"
#include "sps/union_find.hpp"

namespace sps {

/// A partition of 0..n-1 in canonical form: blocks are numbered by their
/// least element, so equal partitions compare equal.
class Partition {
 public:
  Partition() = default;

  static Partition identity(std::size_t n);
  static Partition one_block(std::size_t n);
  static Partition from_labels(std::span<const std::uint32_t> labels);
  static Partition from_blocks(std::size_t n, const std::vector<std::vector<ElementId>>& blocks);
  static Partition from_union_find(UnionFind& uf);

  std::size_t size() const { return label_.size(); }
  std::size_t block_count() const { return count_; }
  std::uint32_t block_of(ElementId x) const { return label_[x]; }
  bool same_block(ElementId a, ElementId b) const { return label_[a] == label_[b]; }
  std::vector<std::vector<ElementId>> blocks() const;
  std::span<const std::uint32_t> labels() const { return label_; }

  bool is_identity() const { return count_ == label_.size(); }
  bool is_one_block() const { return count_ == 1; }

  /// this ⊆ other as equivalence relations.
  bool refines(const Partition& other) const;
  /// Equivalence join (transitive closure of the union).
  Partition join(const Partition& other) const;

  bool operator==(const Partition&) const = default;
  auto operator<=>(const Partition& o) const { return label_ <=> o.label_; }

 private:
  std::vector<std::uint32_t> label_;
  std::size_t count_ = 0;
};

/// One line per block, ids ascending, blocks ordered by least element.
std::string serialize_blocks(const Partition& P);
Partition parse_blocks(std::string_view text, std::size_t n);

/// A partition known to satisfy the substitution property on a lattice of
/// the recorded size. Only the engine functions below and `verified` create
/// one.
class Congruence {
 public:
  static Congruence verified(const Lattice& L, Partition P);

  const Partition& partition() const { return partition_; }
  std::size_t size() const { return partition_.size(); }
  bool same_block(ElementId a, ElementId b) const { return partition_.same_block(a, b); }
  bool operator<=(const Congruence& o) const { return partition_.refines(o.partition_); }
  bool operator<(const Congruence& o) const { return *this <= o && !(partition_ == o.partition_); }
  bool operator==(const Congruence& o) const { return partition_ == o.partition_; }

 private:
  friend Congruence trust_congruence(Partition P);
  explicit Congruence(Partition P) : partition_(std::move(P)) {}
  Partition partition_;
};

/// Wraps a partition the caller has already established to be a congruence
/// (closure results, joins of congruences).
Congruence trust_congruence(Partition P);

// --- generation ------------------------------------------------------------

/// Least congruence collapsing every listed pair (partition closure under
/// x ↦ x∧c and x ↦ x∨c).
Congruence congruence_generated(const Lattice& L, std::span<const CoverPair> pairs);
Congruence principal_congruence(const Lattice& L, ElementId a, ElementId b);
inline Congruence principal_congruence(const Lattice& L, PrimeInterval p) {
  return principal_congruence(L, p.bottom, p.top);
}
Congruence congruence_join(const Lattice& L, const Congruence& a, const Congruence& b);
Congruence identity_congruence(const Lattice& L);
Congruence one_block_congruence(const Lattice& L);

// --- tests -----------------------------------------------------------------

/// Direct substitution-property check, O(n^3).
bool is_congruence(const Lattice& L, const Partition& P);
/// Every block is an interval [min, max].
bool has_interval_classes(const Lattice& L, const Partition& P);
/// For a ≺ b, a ≺ c, b ≠ c: a ≡ b implies c ≡ b∨c, and dually. Requires interval classes
/// (NotIntervalClasses otherwise).
bool is_congruence_via_covers(const Lattice& L, const Partition& P);

// --- congruence-perspectivity ---------------------------------------------

struct Interval {
  ElementId bottom = 0;
  ElementId top = 0;
  auto operator<=>(const Interval&) const = default;
};

/// a ≤ c and d = b∨c.
bool cpersp_up(const Lattice& L, Interval ab, Interval cd);
/// d ≤ b and c = a∧d.
bool cpersp_down(const Lattice& L, Interval ab, Interval cd);
bool cpersp(const Lattice& L, Interval ab, Interval cd);

/// Reachability under cpersp steps, memoized per source interval.
class CprojSearch {
 public:
  explicit CprojSearch(const Lattice& L) : L_(&L) {}
  bool cproj(Interval from, Interval to);
  /// All intervals reachable from `from` (including itself), as a flag
  /// vector indexed by bottom * n + top.
  const std::vector<char>& reachable(Interval from);

 private:
  const Lattice* L_;
  std::map<Interval, std::vector<char>> memo_;
};

/// Returns whether q is collapsed by con(a,b); throws InvariantViolated when
/// that disagrees with "some prime p ⊆ [a,b] has p cproj q".
bool collapses_iff_cproj_check(const Lattice& L, ElementId a, ElementId b, PrimeInterval q,
                               CprojSearch* search = nullptr);

// --- restriction and extension --------------------------------------------

/// Partition induced on `subset` (local index i ↔ subset[i]). NotSublattice
/// when the subset is not closed.
Partition restrict_to(const Lattice& host, const Partition& theta, std::span<const ElementId> subset);

struct Extension {
  Congruence generated;  // ᾱ
  bool is_extension = false;  // ᾱ restricted to the image of L equals α
};

/// ᾱ: the congruence of K generated by α, where embed maps L's ids into K.
Extension generated_in_extension(const Lattice& L, const Congruence& alpha, const Lattice& K,
                                 std::span<const ElementId> embed);

// --- join-irreducible congruences -----------------------------------------

struct JiNode {
  Congruence congruence;
  PrimeInterval representative;
};

struct JiOrder {
  std::vector<JiNode> nodes;
  std::vector<std::vector<char>> leq;  // leq[i][j]: node i ⊆ node j

  std::optional<std::size_t> find(const Congruence& c) const;
  std::size_t size() const { return nodes.size(); }
  /// Indices j with i < j and nothing strictly between.
  std::vector<std::size_t> upper_covers(std::size_t i) const;
};

/// con(p) for every prime interval, deduplicated, ordered by containment.
JiOrder ji_congruences(const Lattice& L);

/// Con L as the joins of down-sets of the Ji order. TooLarge when the order
/// has more than `max_nodes` nodes.
std::vector<Congruence> all_congruences(const Lattice& L, std::size_t max_nodes = 20);
std::vector<Congruence> all_congruences(const Lattice& L, const JiOrder& ji, std::size_t max_nodes = 20);

}  // namespace sps
