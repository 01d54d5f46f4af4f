#pragma once

#include <optional>
#include <span>
#include <vector>

#include "sps/congruence.hpp"
#include "sps/fork.hpp"
#include "sps/lattice.hpp"

namespace sps {

enum class Side { left, right };

/// Which protruding chain element is taken when several exist.
enum class ProtrusionOrder { largest, smallest };

/// A protrusion on a fork chain. Chains are maximal chains of L given top
/// down, chain[0] = t; on the stage-one chain chain[i] = x_i. Right-side
/// records are computed on the mirrored diagram, so "left" in the field
/// comments reads "right" for them.
struct ProtrusionRecord {
  Side side = Side::left;
  std::size_t k = 0;       // chain[k] = p
  std::size_t k_star = 0;  // index of the last wing interval, k+2 ≤ k_star
  ElementId p = 0;
  ElementId p_l = 0;  // chain[k+1]
  ElementId p_r = 0;  // the lower cover of p immediately right of p_l
  ElementId q_1 = 0;  // the lower cover of p immediately left of p_l
  ElementId base = 0;      // q_1 ∧ p_l, a common lower cover of both
  bool nice_base = false; // base == chain[k+2]
  std::vector<PrimeInterval> wing;     // left wing of [base, q_1]
  std::vector<ElementId> new_elements; // tops of `wing`: a_{k+2}..a_{k_star}
  bool wing_bottoms_on_chain = false;  // wing[j].bottom == chain[k+2+j] for all j
  std::vector<ElementId> next_chain;   // chain with the protrusion swung in
};

/// The largest (or smallest) element of the chain below t covering an
/// element outside the chain on `side`, with its protrusion; nullopt when
/// there is none. Throws EmbeddingInconsistent when p covers nothing inside
/// the chain.
std::optional<ProtrusionRecord> find_protrusion(const Lattice& L, std::span<const ElementId> chain, Side side,
                                                ProtrusionOrder order = ProtrusionOrder::largest);

/// t, x_1, ..., x_n for one wing of S, continued down the boundary of L to 0.
std::vector<ElementId> initial_chain(const Lattice& L, const CoveringSquare& S, Side side);

/// A chain of L as a maximal chain of L[S]: z_i is inserted between each
/// consecutive x_i, y_i pair of the wings.
std::vector<ElementId> lift_chain(const ForkContext& ctx, std::span<const ElementId> chain);

struct DeltaResult {
  Partition delta;               // on L[S]
  bool is_congruence = false;    // checked with the cover conditions
  bool tight = false;
  std::optional<bool> equals_oracle;  // set for tight squares
};

/// Blocks [z_{l,i}, x_{l,i}], [m, t], [z_{r,i}, x_{r,i}], singletons
/// elsewhere. HasProtrusion when either stage-one chain has a protrusion.
/// For tight squares the result is asserted to equal con(m, t).
DeltaResult delta_congruence(const Lattice& L, const Lattice& LS, const ForkContext& ctx);

/// ↓t is distributive. A true result is checked to imply that neither
/// chain of the square has a protrusion.
bool is_distributive_square(const Lattice& L, const CoveringSquare& S);

}  // namespace sps
