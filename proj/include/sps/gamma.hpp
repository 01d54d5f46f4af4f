#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sps/congruence.hpp"
#include "sps/fork.hpp"
#include "sps/lattice.hpp"
#include "sps/protrusion.hpp"

namespace sps {

/// γ on the first enlarged sublattice K = Btw ∪ New(p), built class by
/// class from the stage-one protrusion (left chain first). Partitions are on
/// L[S] ids with the elements outside K as singletons.
struct GammaOnK {
  ProtrusionRecord protrusion;
  std::vector<ElementId> K;   // ascending L[S] ids
  Partition gamma;
  Partition pi_K;             // con_K(p_r, p_l ∧ p_r)
  Congruence pi;              // con_L(p_r, p_l ∧ p_r)
};

/// Errors: NotTight; NoProtrusion when neither stage-one chain has one.
GammaOnK gamma_on_K(const Lattice& L, const Lattice& LS, const ForkContext& ctx);

struct GammaState {
  std::size_t stage = 0;               // 1-based
  std::vector<ElementId> chain_left;   // L ids, top down
  std::vector<ElementId> chain_right;
  std::vector<ElementId> K;            // L[S] ids
  Partition gamma;                     // on L[S], singletons outside K
  Partition pi;                        // on L
  std::optional<ProtrusionRecord> protrusion;  // the step that produced K
  bool is_congruence_on_K = false;
  bool below_oracle = false;           // γ_n ⊆ con(m,t) restricted to K
  bool equals_oracle = false;          // γ_n = con(m,t) restricted to K
  bool K_is_ideal = false;             // K = ↓t
};

struct GammaFull {
  Congruence gamma;  // γ(S) on L[S]
  Congruence pi;     // join of the protrusion congruences, on L
  std::vector<GammaState> trace;
};

/// Iterates protrusion steps (left chain before right) until both chains are
/// protrusion free, then extends by π outside K. Asserts the final K is ↓t
/// and that the result equals con(m, t). Errors: NotTight, NonTermination.
GammaFull gamma_full(const Lattice& L, const Lattice& LS, const ForkContext& ctx,
                     ProtrusionOrder order = ProtrusionOrder::smallest);

struct WideGamma {
  ElementId t = 0;
  ElementId a = 0;               // third lower cover of t next to the square
  bool mirrored = false;         // a sits left of a_l
  Congruence generated;          // minimal extension of con_L(t, a)
  bool gamma_equals_generated = false;
  Congruence alpha_bar_near;     // con_{L[S]}(a_near, t), a_near the square side next to a
  bool gamma_equals_alpha_bar_near = false;
};

/// Errors: NotWide.
WideGamma wide_square_gamma(const Lattice& L, const Lattice& LS, const ForkContext& ctx);

struct NewJiReport {
  std::size_t base_nodes = 0;
  std::size_t fork_nodes = 0;
  std::vector<std::size_t> new_nodes;  // indices into the L[S] order
  bool new_is_gamma = false;           // exactly one new node, equal to γ(S)
};

/// Splits Ji(Con L[S]) into minimal extensions of con_L(p) and the rest.
/// `require_tight` raises NotTight on wide squares.
NewJiReport new_ji_check(const Lattice& L, const Lattice& LS, const ForkContext& ctx, bool require_tight = true);

/// [z_{l,i}, x_{l,i}], [m, t], [z_{r,i}, x_{r,i}]. Asserts con(p) = γ(S)
/// exactly for p in the set. Errors: NotTight.
std::vector<PrimeInterval> gamma_generators(const Lattice& LS, const ForkContext& ctx);

struct UpperCoverReport {
  std::vector<Congruence> covers;
  bool subset_of_alpha_bars = false;
  bool disjunction_holds = false;  // every con(p) > γ(S) contains ᾱ_l or ᾱ_r
};

/// Covers of γ(S) in Ji(Con L[S]). Errors: NotTight.
UpperCoverReport gamma_upper_covers(const Lattice& LS, const ForkContext& ctx);

struct JiComparison {
  bool isotone = false;
  bool injective = false;
  bool order_embedding = false;
  bool nontrivial = false;  // no node maps to the identity
};

/// Diagnostics for α ↦ ᾱ on Ji(Con L). Isotonicity is asserted.
JiComparison ji_comparison(const Lattice& L, const Lattice& LS, const ForkContext& ctx);

}  // namespace sps
