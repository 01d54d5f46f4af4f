#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "sps/congruence.hpp"
#include "sps/lattice.hpp"

namespace sps {

/// Bookkeeping for one fork insertion L → L[S].
///
/// L's elements keep their ids in L[S]; the new elements are appended in the
/// order z_{l,1..n_l}, z_{r,1..n_r}, m. Wings are stored as (y_i, x_i) prime
/// intervals of L, index 0 holding i = 1 (so left_wing[0] = [o, a_l]).
struct ForkContext {
  CoveringSquare square;
  std::vector<PrimeInterval> left_wing;
  std::vector<PrimeInterval> right_wing;
  std::vector<ElementId> z_left;
  std::vector<ElementId> z_right;
  ElementId m = 0;
  std::vector<ElementId> embed;     // L id → L[S] id
  std::vector<ElementId> fork_set;  // F[S]: m, z_left..., z_right...
  std::size_t base_size = 0;        // |L|

  std::size_t n_left() const { return left_wing.size(); }
  std::size_t n_right() const { return right_wing.size(); }
  ElementId b_l() const { return z_left.front(); }
  ElementId b_r() const { return z_right.front(); }
  bool is_new(ElementId x) const { return x >= base_size; }
};

struct ForkResult {
  Lattice lattice;
  ForkContext context;
};

/// Inserts a fork at the covering square S (ids of L; a_l must be left of
/// a_r). Errors: NotCoveringSquare, NotSPS.
ForkResult insert_fork(const Lattice& L, const CoveringSquare& S);

/// (x⁺, x⁻): the covers of x inside the sublattice L of L[S]. Elements of L
/// map to themselves.
std::pair<ElementId, ElementId> in_L_covers(const ForkContext& ctx, ElementId x);

struct NamedCongruences {
  Congruence alpha_l;      // con_L(a_l, t)
  Congruence alpha_r;      // con_L(a_r, t)
  Congruence alpha_bar_l;  // con_{L[S]}(a_l, t)
  Congruence alpha_bar_r;  // con_{L[S]}(a_r, t)
  Congruence gamma;        // con_{L[S]}(m, t)
};

NamedCongruences named_congruences(const Lattice& L, const Lattice& LS, const ForkContext& ctx);

/// con_{L[S]}(m, t).
Congruence gamma_oracle(const Lattice& LS, const ForkContext& ctx);

/// α restricted to {o, a_l, a_r, t}.
Partition restrict_to_square(const Congruence& alpha, const CoveringSquare& S);

/// For α with α↾S = 1_S: blocks [u,v]_{L[S]} for the α-classes [u,v]_L.
/// Asserted to be a congruence restricting to α and equal to ᾱ.
Congruence extend_one(const Lattice& L, const Lattice& LS, const ForkContext& ctx, const Congruence& alpha);

/// For α with α↾S = 0_S: nontrivial α-classes as intervals of L[S], {m},
/// and runs of z's whose x's are α-related. Asserted as for extend_one.
Congruence extend_zero(const Lattice& L, const Lattice& LS, const ForkContext& ctx, const Congruence& alpha);

struct ExtendsResult {
  bool extends = false;
  std::optional<Congruence> witness;  // an extension when one exists
  bool trivial_on_square = false;     // α↾S ∈ {0_S, 1_S}
};

/// Whether α has an extension to L[S]; decided by the minimal extension ᾱ.
ExtendsResult extends(const Lattice& L, const Lattice& LS, const ForkContext& ctx, const Congruence& alpha);

}  // namespace sps
