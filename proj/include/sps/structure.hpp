#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sps/lattice.hpp"

namespace sps {

/// a∧b ≺ a implies b ≺ a∨b, for all a, b.
bool is_semimodular(const Lattice& L);

/// No M3 sublattice (three pairwise incomparable elements with a common
/// pairwise meet and a common pairwise join).
bool is_slim(const Lattice& L);

/// Join-irreducible elements (exactly one lower cover).
std::vector<ElementId> join_irreducibles(const Lattice& L);

/// Ji(L) is a union of two chains, i.e. has width at most two.
bool is_slim_two_chains(const Lattice& L);

/// Every element has at most two upper covers.
bool upper_cover_count_ok(const Lattice& L);

/// Distributive on the given sublattice (all of L when empty).
bool is_distributive(const Lattice& L, std::span<const ElementId> subset = {});

/// Slim, semimodular, and (by construction of the stored diagram) planar.
bool is_sps(const Lattice& L);

std::vector<CoveringSquare> covering_squares(const Lattice& L);

/// Rebuilds the square spanned by these four ids, or nullopt when they do not
/// form a covering square with a_l to the left of a_r.
std::optional<CoveringSquare> find_square(const Lattice& L, ElementId o, ElementId a_l,
                                          ElementId a_r, ElementId t);

/// Partition of all prime intervals into trajectories, each ordered left to
/// right. Throws NotSlim when the consecutive relation branches.
std::vector<Trajectory> trajectories(const Lattice& L);

/// Part of p's trajectory from p leftwards, p first; the last interval lies
/// on the left boundary.
std::vector<PrimeInterval> left_wing(const Lattice& L, PrimeInterval p);
std::vector<PrimeInterval> right_wing(const Lattice& L, PrimeInterval p);

/// Wing entries i, i+1 satisfy top_{i+1} ≺ top_i and bottom_{i+1} ≺ bottom_i,
/// i.e. the wing spans a C2 × Cn grid hanging down from its first interval.
bool is_descending_wing(const Lattice& L, std::span<const PrimeInterval> wing);

/// Leftmost (resp. rightmost) chains from bottom to top.
std::pair<std::vector<ElementId>, std::vector<ElementId>> boundary_chains(const Lattice& L);

/// Maximal chain from x downwards, always taking the leftmost lower cover
/// (rightmost when `rightmost`); starts with x, ends at the bottom.
std::vector<ElementId> descend_boundary(const Lattice& L, ElementId x, bool rightmost);

struct Corners {
  std::vector<ElementId> left;
  std::vector<ElementId> right;
};

/// Doubly irreducible elements other than 0, 1 on each boundary chain.
Corners corners(const Lattice& L);
bool is_rectangular(const Lattice& L);
bool is_patch(const Lattice& L);

/// ↓t, ascending ids.
std::vector<ElementId> ideal(const Lattice& L, ElementId t);

enum class ChainSide { on, left, right };

/// Position of x relative to a maximal chain of ↓chain.front() given top-down
/// (chain.front() is its top, chain.back() the bottom of L). Requires
/// x ≤ chain.front().
ChainSide side_of_chain(const Lattice& L, std::span<const ElementId> chain, ElementId x);

/// Elements of ↓top on or between the two top-down maximal chains.
std::vector<ElementId> between_chains(const Lattice& L, std::span<const ElementId> left_chain,
                                      std::span<const ElementId> right_chain);

}  // namespace sps
