#include "sps/protrusion.hpp"

#include <algorithm>
#include <string>

#include "sps/structure.hpp"

namespace sps {

namespace {

std::vector<ElementId> wing_chain(const Lattice& W, const CoveringSquare& S, ElementId a) {
  std::vector<ElementId> chain{S.t};
  const auto wing = left_wing(W, {S.o, a});
  for (const auto& iv : wing) chain.push_back(iv.top);
  const auto rest = descend_boundary(W, wing.back().top, false);
  chain.insert(chain.end(), rest.begin() + 1, rest.end());
  return chain;
}

}  // namespace

std::vector<ElementId> initial_chain(const Lattice& L, const CoveringSquare& S, Side side) {
  if (side == Side::left) return wing_chain(L, S, S.a_l);
  return wing_chain(L.mirrored(), S, S.a_r);
}

std::vector<ElementId> lift_chain(const ForkContext& ctx, std::span<const ElementId> chain) {
  std::vector<ElementId> out;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    out.push_back(chain[i]);
    if (i + 1 == chain.size()) break;
    const PrimeInterval edge{chain[i + 1], chain[i]};
    for (std::size_t j = 0; j < ctx.left_wing.size(); ++j)
      if (ctx.left_wing[j] == edge) out.push_back(ctx.z_left[j]);
    for (std::size_t j = 0; j < ctx.right_wing.size(); ++j)
      if (ctx.right_wing[j] == edge) out.push_back(ctx.z_right[j]);
  }
  return out;
}

std::optional<ProtrusionRecord> find_protrusion(const Lattice& L, std::span<const ElementId> chain, Side side,
                                                ProtrusionOrder order) {
  const Lattice W = side == Side::left ? L : L.mirrored();
  const std::size_t steps = chain.size() < 2 ? 0 : chain.size() - 2;
  for (std::size_t i = 0; i < steps; ++i) {
    const std::size_t k = order == ProtrusionOrder::largest ? i + 1 : steps - i;
    const ElementId p = chain[k], pl = chain[k + 1];
    const auto low = W.lower_covers(p);
    const auto it = std::find(low.begin(), low.end(), pl);
    if (it == low.end())
      throw Error(ErrorCode::EmbeddingInconsistent, "protrusion: chain is not maximal at " + std::to_string(p));
    const std::size_t pos = static_cast<std::size_t>(it - low.begin());
    if (pos == 0) continue;
    if (pos + 1 == low.size())
      throw Error(ErrorCode::EmbeddingInconsistent,
                  "protrusion: " + std::to_string(p) + " covers nothing inside the chain");
    ProtrusionRecord r;
    r.side = side;
    r.k = k;
    r.p = p;
    r.p_l = pl;
    r.p_r = low[pos + 1];
    r.q_1 = low[pos - 1];
    r.base = W.meet(r.q_1, pl);
    ensure(W.covered_by(r.base, pl) && W.covered_by(r.base, r.q_1),
           "protrusion: q_1 and p_l do not meet in a common lower cover at " + std::to_string(p));
    r.nice_base = k + 2 < chain.size() && chain[k + 2] == r.base;
    r.wing = left_wing(W, {r.base, r.q_1});
    r.k_star = k + 1 + r.wing.size();
    r.wing_bottoms_on_chain = true;
    for (std::size_t j = 0; j < r.wing.size(); ++j) {
      r.new_elements.push_back(r.wing[j].top);
      if (k + 2 + j >= chain.size() || chain[k + 2 + j] != r.wing[j].bottom) r.wing_bottoms_on_chain = false;
    }
    r.next_chain.assign(chain.begin(), chain.begin() + static_cast<std::ptrdiff_t>(k + 1));
    r.next_chain.insert(r.next_chain.end(), r.new_elements.begin(), r.new_elements.end());
    const auto rest = descend_boundary(W, r.wing.back().bottom, false);
    r.next_chain.insert(r.next_chain.end(), rest.begin(), rest.end());
    return r;
  }
  return std::nullopt;
}

DeltaResult delta_congruence(const Lattice& L, const Lattice& LS, const ForkContext& ctx) {
  const auto& S = ctx.square;
  for (Side side : {Side::left, Side::right}) {
    const auto chain = initial_chain(L, S, side);
    if (find_protrusion(L, chain, side))
      throw Error(ErrorCode::HasProtrusion,
                  std::string("delta: the square has a protrusion on the ") + (side == Side::left ? "left" : "right"));
  }
  std::vector<std::vector<ElementId>> blocks{{ctx.m, S.t}};
  for (std::size_t i = 0; i < ctx.n_left(); ++i) blocks.push_back({ctx.z_left[i], ctx.left_wing[i].top});
  for (std::size_t i = 0; i < ctx.n_right(); ++i) blocks.push_back({ctx.z_right[i], ctx.right_wing[i].top});
  std::vector<char> seen(LS.size(), 0);
  for (const auto& b : blocks)
    for (ElementId x : b) seen[x] = 1;
  for (ElementId x = 0; x < LS.size(); ++x)
    if (!seen[x]) blocks.push_back({x});

  DeltaResult r;
  r.delta = Partition::from_blocks(LS.size(), blocks);
  r.is_congruence = is_congruence_via_covers(LS, r.delta);
  r.tight = S.kind == SquareKind::tight;
  if (r.tight) {
    ensure(r.is_congruence, "delta: not a congruence on a tight square");
    r.equals_oracle = r.delta == gamma_oracle(LS, ctx).partition();
    ensure(*r.equals_oracle, "delta: differs from con(m, t)");
  }
  return r;
}

bool is_distributive_square(const Lattice& L, const CoveringSquare& S) {
  const auto down = ideal(L, S.t);
  const bool distributive = is_distributive(L, down);
  if (distributive) {
    for (Side side : {Side::left, Side::right})
      ensure(!find_protrusion(L, initial_chain(L, S, side), side), "distributive square with a protrusion");
  }
  return distributive;
}

}  // namespace sps
