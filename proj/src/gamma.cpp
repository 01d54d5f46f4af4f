#include "sps/gamma.hpp"

#include <algorithm>
#include <string>

#include "sps/structure.hpp"

namespace sps {

namespace {

void require_tight(const ForkContext& ctx, const char* who) {
  if (ctx.square.kind != SquareKind::tight)
    throw Error(ErrorCode::NotTight, std::string(who) + ": the square is wide");
}

std::vector<ElementId> sorted_union(std::vector<ElementId> a, std::span<const ElementId> b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

std::vector<ElementId> between(const Lattice& LS, const ForkContext& ctx, std::span<const ElementId> left,
                               std::span<const ElementId> right) {
  const auto l = lift_chain(ctx, left), r = lift_chain(ctx, right);
  return between_chains(LS, l, r);
}

// Local partition on the induced sublattice padded back to L[S] ids.
Partition pad(std::size_t n, const Sublattice& sub, const Partition& local) {
  UnionFind uf(n);
  for (ElementId i = 0; i < local.size(); ++i)
    for (ElementId j = i + 1; j < local.size(); ++j)
      if (local.same_block(i, j)) uf.merge(sub.to_parent[i], sub.to_parent[j]);
  return Partition::from_union_find(uf);
}

Partition local_view(const Lattice& LS, const Partition& P, std::span<const ElementId> K) {
  return restrict_to(LS, P, K);
}

struct Side3 {
  const std::vector<PrimeInterval>* wing;
  const std::vector<ElementId>* z;
  ElementId x(std::size_t i) const { return (*wing)[i - 1].top; }
  ElementId y(std::size_t i) const { return (*wing)[i - 1].bottom; }
  ElementId zz(std::size_t i) const { return (*z)[i - 1]; }
  std::size_t n() const { return wing->size(); }
};

std::pair<Side3, Side3> sides(const ForkContext& ctx, Side side) {
  Side3 l{&ctx.left_wing, &ctx.z_left}, r{&ctx.right_wing, &ctx.z_right};
  return side == Side::left ? std::pair{l, r} : std::pair{r, l};
}

bool same_set(std::vector<ElementId> a, std::vector<ElementId> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// The class list is stated for the largest protrusion of the stage-one chains.
bool literal_applies(const Lattice& L, const ForkContext& ctx, const ProtrusionRecord& prot) {
  const auto cl = initial_chain(L, ctx.square, Side::left);
  auto top = find_protrusion(L, cl, Side::left);
  if (!top) top = find_protrusion(L, initial_chain(L, ctx.square, Side::right), Side::right);
  return top && top->side == prot.side && top->p == prot.p;
}

}  // namespace

GammaOnK gamma_on_K(const Lattice& L, const Lattice& LS, const ForkContext& ctx) {
  require_tight(ctx, "gamma_on_K");
  const auto& S = ctx.square;
  const auto cl = initial_chain(L, S, Side::left), cr = initial_chain(L, S, Side::right);
  auto prot = find_protrusion(L, cl, Side::left);
  if (!prot) prot = find_protrusion(L, cr, Side::right);
  if (!prot) throw Error(ErrorCode::NoProtrusion, "gamma_on_K: neither chain has a protrusion");

  const auto [own, other] = sides(ctx, prot->side);
  const std::size_t k = prot->k, ks = prot->k_star;
  ensure(k + 2 <= own.n() && ks <= own.n(), "gamma_on_K: protrusion indices exceed the wing");
  ensure(prot->nice_base && prot->wing_bottoms_on_chain, "gamma_on_K: protrusion wing leaves the fork chain");
  ensure(prot->p_r == own.y(k) && L.meet(prot->p_l, prot->p_r) == own.y(k + 1),
         "gamma_on_K: p_r is not y_k");

  GammaOnK out{*prot, sorted_union(between(LS, ctx, cl, cr), prot->new_elements), {}, {},
               identity_congruence(L)};
  ensure(is_sublattice(LS, out.K), "gamma_on_K: K is not a sublattice");
  const Sublattice sub = induced_sublattice(LS, out.K);

  std::vector<std::vector<ElementId>> listed{{ctx.m, S.t}};
  for (std::size_t i = 1; i <= own.n(); ++i)
    if (i < k || i > ks) listed.push_back({own.x(i), own.zz(i)});
  listed.push_back({own.x(k), own.x(k + 1), own.zz(k), own.zz(k + 1)});
  // {y_k, y_{k+1}} is left to π_K, whose class there can be larger.
  for (std::size_t i = k + 2; i <= ks; ++i) listed.push_back({prot->new_elements[i - k - 2], own.x(i), own.zz(i)});
  for (std::size_t i = 1; i <= other.n(); ++i) listed.push_back({other.x(i), other.zz(i)});

  const auto pik_local = principal_congruence(sub.lattice, static_cast<ElementId>(sub.to_local[own.y(k)]),
                                              static_cast<ElementId>(sub.to_local[own.y(k + 1)]));
  out.pi_K = pad(LS.size(), sub, pik_local.partition());

  std::vector<char> seen(LS.size(), 0);
  for (const auto& b : listed)
    for (ElementId x : b) {
      ensure(!seen[x], "gamma_on_K: listed classes overlap at " + std::to_string(x));
      ensure(std::binary_search(out.K.begin(), out.K.end(), x), "gamma_on_K: listed element outside K");
      seen[x] = 1;
    }
  std::vector<std::vector<ElementId>> blocks = listed;
  for (ElementId x : out.K) {
    if (seen[x]) continue;
    std::vector<ElementId> cls;
    for (ElementId y : out.K)
      if (out.pi_K.same_block(x, y)) cls.push_back(y);
    for (ElementId y : cls) {
      ensure(!seen[y], "gamma_on_K: a class of pi_K meets a listed class at " + std::to_string(y));
      seen[y] = 1;
    }
    blocks.push_back(std::move(cls));
  }
  for (ElementId x = 0; x < LS.size(); ++x)
    if (!seen[x]) blocks.push_back({x});
  out.gamma = Partition::from_blocks(LS.size(), blocks);

  ensure(is_congruence_via_covers(sub.lattice, local_view(LS, out.gamma, out.K)),
         "gamma_on_K: gamma is not a congruence of K");
  ensure(out.pi_K.refines(out.gamma), "gamma_on_K: pi_K is not below gamma");
  out.pi = principal_congruence(L, prot->p_r, L.meet(prot->p_l, prot->p_r));
  return out;
}

GammaFull gamma_full(const Lattice& L, const Lattice& LS, const ForkContext& ctx, ProtrusionOrder order) {
  require_tight(ctx, "gamma_full");
  const auto& S = ctx.square;
  const Congruence oracle = gamma_oracle(LS, ctx);
  const auto down = ideal(LS, S.t);

  std::vector<ElementId> cl = initial_chain(L, S, Side::left), cr = initial_chain(L, S, Side::right);
  std::vector<CoverPair> forced{{ctx.m, S.t}};
  for (std::size_t i = 0; i < ctx.n_left(); ++i) forced.emplace_back(ctx.left_wing[i].top, ctx.z_left[i]);
  for (std::size_t i = 0; i < ctx.n_right(); ++i) forced.emplace_back(ctx.right_wing[i].top, ctx.z_right[i]);
  std::vector<CoverPair> pi_gens;

  std::vector<GammaState> trace;
  std::vector<ElementId> K;
  Partition gamma;
  for (std::size_t step = 0;; ++step) {
    if (step > L.size()) throw Error(ErrorCode::NonTermination, "gamma_full: too many protrusion steps");
    auto prot = find_protrusion(L, cl, Side::left, order);
    if (!prot) prot = find_protrusion(L, cr, Side::right, order);
    if (!prot && step > 0) break;

    K = between(LS, ctx, cl, cr);
    if (prot) {
      K = sorted_union(std::move(K), prot->new_elements);
      // Off the chain the wing bottoms are not yet between the chains.
      for (const auto& iv : prot->wing) K = sorted_union(std::move(K), std::span(&iv.bottom, 1));
      forced.emplace_back(prot->p, prot->p_l);
      for (const auto& iv : prot->wing) forced.emplace_back(iv.top, iv.bottom);
      pi_gens.emplace_back(prot->p_r, L.meet(prot->p_l, prot->p_r));
    }
    ensure(is_sublattice(LS, K), "gamma_full: K is not a sublattice at stage " + std::to_string(step + 1));
    const Sublattice sub = induced_sublattice(LS, K);

    UnionFind uf(LS.size());
    for (const auto& [a, b] : forced) {
      ensure(sub.to_local[a] >= 0 && sub.to_local[b] >= 0, "gamma_full: forced pair outside K");
      uf.merge(a, b);
    }
    if (!pi_gens.empty()) {
      std::vector<CoverPair> local;
      for (const auto& [a, b] : pi_gens)
        local.emplace_back(static_cast<ElementId>(sub.to_local[a]), static_cast<ElementId>(sub.to_local[b]));
      const auto piK = congruence_generated(sub.lattice, local);
      const Partition padded = pad(LS.size(), sub, piK.partition());
      for (ElementId x = 0; x < LS.size(); ++x)
        for (ElementId y = x + 1; y < LS.size(); ++y)
          if (padded.same_block(x, y)) uf.merge(x, y);
    }
    gamma = Partition::from_union_find(uf);

    GammaState st;
    st.stage = step + 1;
    st.chain_left = cl;
    st.chain_right = cr;
    st.K = K;
    st.gamma = gamma;
    st.pi = congruence_generated(L, pi_gens).partition();
    st.protrusion = prot;
    const Partition local = local_view(LS, gamma, K);
    st.is_congruence_on_K = is_congruence_via_covers(sub.lattice, local);
    const Partition oracle_local = local_view(LS, oracle.partition(), K);
    st.below_oracle = local.refines(oracle_local);
    st.equals_oracle = local == oracle_local;
    st.K_is_ideal = K == down;
    ensure(st.is_congruence_on_K, "gamma_full: gamma is not a congruence of K at stage " + std::to_string(st.stage));
    ensure(st.below_oracle, "gamma_full: gamma exceeds con(m, t) at stage " + std::to_string(st.stage));
    if (st.stage == 1 && prot && prot->nice_base && prot->wing_bottoms_on_chain &&
        literal_applies(L, ctx, *prot)) {
      const auto literal = gamma_on_K(L, LS, ctx);
      ensure(same_set(literal.K, K) && literal.gamma == gamma, "gamma_full: stage one differs from the class list");
    }
    trace.push_back(std::move(st));

    if (!prot) break;
    (prot->side == Side::left ? cl : cr) = prot->next_chain;
  }

  ensure(K == down, "gamma_full: final K is not the ideal of t");
  const Congruence pi = congruence_generated(L, pi_gens);
  UnionFind uf(LS.size());
  for (ElementId x = 0; x < LS.size(); ++x) {
    for (ElementId y = x + 1; y < LS.size(); ++y) {
      if (gamma.same_block(x, y)) uf.merge(x, y);
      if (!ctx.is_new(x) && !ctx.is_new(y) && pi.same_block(x, y)) uf.merge(x, y);
    }
  }
  Partition full = Partition::from_union_find(uf);
  ensure(is_congruence(LS, full), "gamma_full: extension by pi is not a congruence");
  ensure(full == oracle.partition(), "gamma_full: differs from con(m, t)");
  return {trust_congruence(std::move(full)), pi, std::move(trace)};
}

WideGamma wide_square_gamma(const Lattice& L, const Lattice& LS, const ForkContext& ctx) {
  const auto& S = ctx.square;
  if (S.kind != SquareKind::wide) throw Error(ErrorCode::NotWide, "wide_square_gamma: the square is tight");
  const auto low = L.lower_covers(S.t);
  const auto pl = static_cast<std::size_t>(std::find(low.begin(), low.end(), S.a_l) - low.begin());
  ensure(pl + 1 < low.size() && low[pl + 1] == S.a_r, "wide_square_gamma: a_l, a_r not adjacent below t");
  WideGamma r{S.t, 0, false, identity_congruence(LS), false, identity_congruence(LS), false};
  ElementId near = S.a_r;
  if (pl + 2 < low.size()) {
    r.a = low[pl + 2];
  } else {
    ensure(pl > 0, "wide_square_gamma: t has only two lower covers");
    r.a = low[pl - 1];
    r.mirrored = true;
    near = S.a_l;
  }
  const Congruence gamma = gamma_oracle(LS, ctx);
  r.generated = generated_in_extension(L, principal_congruence(L, S.t, r.a), LS, ctx.embed).generated;
  r.gamma_equals_generated = r.generated == gamma;
  r.alpha_bar_near = principal_congruence(LS, near, S.t);
  r.gamma_equals_alpha_bar_near = r.alpha_bar_near == gamma;
  return r;
}

NewJiReport new_ji_check(const Lattice& L, const Lattice& LS, const ForkContext& ctx, bool require) {
  if (require) require_tight(ctx, "new_ji_check");
  const JiOrder base = ji_congruences(L), fork = ji_congruences(LS);
  std::vector<Congruence> generated;
  for (const auto& node : base.nodes)
    generated.push_back(generated_in_extension(L, node.congruence, LS, ctx.embed).generated);
  NewJiReport r;
  r.base_nodes = base.size();
  r.fork_nodes = fork.size();
  for (std::size_t i = 0; i < fork.size(); ++i) {
    const bool old = std::any_of(generated.begin(), generated.end(),
                                 [&](const Congruence& c) { return c == fork.nodes[i].congruence; });
    if (!old) r.new_nodes.push_back(i);
  }
  r.new_is_gamma = r.new_nodes.size() == 1 && fork.nodes[r.new_nodes[0]].congruence == gamma_oracle(LS, ctx);
  return r;
}

std::vector<PrimeInterval> gamma_generators(const Lattice& LS, const ForkContext& ctx) {
  require_tight(ctx, "gamma_generators");
  std::vector<PrimeInterval> G;
  for (std::size_t i = 0; i < ctx.n_left(); ++i) G.push_back({ctx.z_left[i], ctx.left_wing[i].top});
  G.push_back({ctx.m, ctx.square.t});
  for (std::size_t i = 0; i < ctx.n_right(); ++i) G.push_back({ctx.z_right[i], ctx.right_wing[i].top});
  const Congruence gamma = gamma_oracle(LS, ctx);
  for (const auto& p : LS.prime_intervals()) {
    const bool in_G = std::find(G.begin(), G.end(), p) != G.end();
    const bool generates = principal_congruence(LS, p) == gamma;
    ensure(in_G == generates, "gamma_generators: [" + std::to_string(p.bottom) + "," + std::to_string(p.top) +
                                  (in_G ? "] in G does not generate gamma" : "] outside G generates gamma"));
  }
  return G;
}

UpperCoverReport gamma_upper_covers(const Lattice& LS, const ForkContext& ctx) {
  require_tight(ctx, "gamma_upper_covers");
  const auto& S = ctx.square;
  const JiOrder ji = ji_congruences(LS);
  const Congruence gamma = gamma_oracle(LS, ctx);
  const Congruence bar_l = principal_congruence(LS, S.a_l, S.t), bar_r = principal_congruence(LS, S.a_r, S.t);
  const auto idx = ji.find(gamma);
  ensure(idx.has_value(), "gamma_upper_covers: gamma is not a node");

  UpperCoverReport r;
  for (std::size_t j : ji.upper_covers(*idx)) r.covers.push_back(ji.nodes[j].congruence);
  r.subset_of_alpha_bars =
      !r.covers.empty() && r.covers.size() <= 2 &&
      std::all_of(r.covers.begin(), r.covers.end(), [&](const Congruence& c) { return c == bar_l || c == bar_r; });
  r.disjunction_holds = true;
  for (const auto& node : ji.nodes)
    if (gamma < node.congruence && !(bar_l <= node.congruence) && !(bar_r <= node.congruence))
      r.disjunction_holds = false;
  ensure(r.subset_of_alpha_bars, "gamma_upper_covers: covers are not among the alpha bars");
  ensure(r.disjunction_holds, "gamma_upper_covers: a larger con(p) contains neither alpha bar");
  return r;
}

JiComparison ji_comparison(const Lattice& L, const Lattice& LS, const ForkContext& ctx) {
  const JiOrder ji = ji_congruences(L);
  std::vector<Congruence> image;
  for (const auto& node : ji.nodes) image.push_back(generated_in_extension(L, node.congruence, LS, ctx.embed).generated);
  JiComparison r{true, true, true, true};
  for (std::size_t i = 0; i < ji.size(); ++i) {
    if (image[i].partition().is_identity()) r.nontrivial = false;
    for (std::size_t j = 0; j < ji.size(); ++j) {
      if (ji.leq[i][j] && !(image[i] <= image[j])) r.isotone = false;
      if (i != j && image[i] == image[j]) r.injective = false;
      if (image[i] <= image[j] && !ji.leq[i][j]) r.order_embedding = false;
    }
  }
  ensure(r.isotone, "ji_comparison: minimal extension is not isotone");
  return r;
}

}  // namespace sps
