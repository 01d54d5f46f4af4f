#include "sps/fork.hpp"

#include <algorithm>
#include <string>

#include "sps/structure.hpp"

namespace sps {

namespace {

std::string square_text(const CoveringSquare& S) {
  return "{" + std::to_string(S.o) + "," + std::to_string(S.a_l) + "," + std::to_string(S.a_r) + "," +
         std::to_string(S.t) + "}";
}

void replace_in(std::vector<ElementId>& list, ElementId from, ElementId to) {
  auto it = std::find(list.begin(), list.end(), from);
  ensure(it != list.end(), "fork: missing cover " + std::to_string(from));
  *it = to;
}

// Every element of [u,v] in K.
std::vector<ElementId> interval_of(const Lattice& K, ElementId u, ElementId v) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < K.size(); ++x)
    if (K.leq(u, x) && K.leq(x, v)) out.push_back(x);
  return out;
}

// Assembles a partition from blocks that must be disjoint; elements left
// over become singletons.
Partition assemble(std::size_t n, const std::vector<std::vector<ElementId>>& blocks, const char* who) {
  std::vector<char> seen(n, 0);
  std::vector<std::vector<ElementId>> all;
  for (const auto& b : blocks) {
    for (ElementId x : b) {
      ensure(!seen[x], std::string(who) + ": blocks overlap at " + std::to_string(x));
      seen[x] = 1;
    }
    all.push_back(b);
  }
  for (ElementId x = 0; x < n; ++x)
    if (!seen[x]) all.push_back({x});
  return Partition::from_blocks(n, all);
}

void check_extension(const Lattice& L, const Lattice& LS, const ForkContext& ctx, const Congruence& alpha,
                     const Partition& P, const char* who) {
  ensure(is_congruence(LS, P), std::string(who) + ": not a congruence of L[S]");
  ensure(restrict_to(LS, P, ctx.embed) == alpha.partition(), std::string(who) + ": restriction differs from alpha");
  auto ext = generated_in_extension(L, alpha, LS, ctx.embed);
  ensure(ext.generated.partition() == P, std::string(who) + ": differs from the minimal extension");
}

}  // namespace

ForkResult insert_fork(const Lattice& L, const CoveringSquare& S) {
  if (!is_sps(L)) throw Error(ErrorCode::NotSPS, "fork: base lattice is not slim semimodular");
  auto sq = find_square(L, S.o, S.a_l, S.a_r, S.t);
  if (!sq) throw Error(ErrorCode::NotCoveringSquare, "fork: " + square_text(S) + " is not a covering square");

  ForkContext ctx;
  ctx.square = *sq;
  ctx.base_size = L.size();
  ctx.left_wing = left_wing(L, {sq->o, sq->a_l});
  ctx.right_wing = right_wing(L, {sq->o, sq->a_r});
  if (!is_descending_wing(L, ctx.left_wing) || !is_descending_wing(L, ctx.right_wing))
    throw Error(ErrorCode::EmbeddingInconsistent, "fork: wing of " + square_text(S) + " is not a C2 x Cn grid");

  const std::size_t nl = ctx.left_wing.size(), nr = ctx.right_wing.size();
  const std::size_t n = L.size() + nl + nr + 1;
  ElementId next = static_cast<ElementId>(L.size());
  for (std::size_t i = 0; i < nl; ++i) ctx.z_left.push_back(next++);
  for (std::size_t i = 0; i < nr; ++i) ctx.z_right.push_back(next++);
  ctx.m = next++;
  ctx.embed.resize(L.size());
  for (ElementId x = 0; x < L.size(); ++x) ctx.embed[x] = x;
  ctx.fork_set.push_back(ctx.m);
  ctx.fork_set.insert(ctx.fork_set.end(), ctx.z_left.begin(), ctx.z_left.end());
  ctx.fork_set.insert(ctx.fork_set.end(), ctx.z_right.begin(), ctx.z_right.end());

  std::vector<std::vector<ElementId>> lower(n), upper(n);
  for (ElementId x = 0; x < L.size(); ++x) {
    auto lo = L.lower_covers(x), up = L.upper_covers(x);
    lower[x].assign(lo.begin(), lo.end());
    upper[x].assign(up.begin(), up.end());
  }

  // Each wing edge y ≺ x becomes y ≺ z ≺ x, z taking over the slot of the
  // replaced neighbour on both ends.
  auto thread_wing = [&](const std::vector<PrimeInterval>& wing, const std::vector<ElementId>& z, bool left) {
    for (std::size_t i = 0; i < wing.size(); ++i) {
      const auto [y, x] = wing[i];
      replace_in(upper[y], x, z[i]);
      replace_in(lower[x], y, z[i]);
      upper[z[i]] = {x};
      lower[z[i]] = {y};
    }
    for (std::size_t i = 0; i + 1 < wing.size(); ++i) {
      // z_{i+1} ≺ z_i, with z_{i+1} on the outer side of y_i.
      if (left) {
        lower[z[i]].insert(lower[z[i]].begin(), z[i + 1]);
        upper[z[i + 1]].push_back(z[i]);
      } else {
        lower[z[i]].push_back(z[i + 1]);
        upper[z[i + 1]].insert(upper[z[i + 1]].begin(), z[i]);
      }
    }
  };
  thread_wing(ctx.left_wing, ctx.z_left, true);
  thread_wing(ctx.right_wing, ctx.z_right, false);

  const ElementId bl = ctx.z_left.front(), br = ctx.z_right.front();
  upper[bl].push_back(ctx.m);
  upper[br].insert(upper[br].begin(), ctx.m);
  lower[ctx.m] = {bl, br};
  upper[ctx.m] = {sq->t};
  auto& tl = lower[sq->t];
  auto pos = std::find(tl.begin(), tl.end(), sq->a_l);
  ensure(pos != tl.end() && pos + 1 != tl.end() && *(pos + 1) == sq->a_r, "fork: a_l, a_r not adjacent below t");
  tl.insert(pos + 1, ctx.m);

  std::vector<CoverPair> covers;
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y : upper[x]) covers.emplace_back(x, y);
  Lattice LS = Lattice::build(n, covers, lower, upper);
  if (!is_sps(LS)) throw Error(ErrorCode::NotSPS, "fork: result is not slim semimodular");
  ensure(LS.join(bl, br) == ctx.m, "fork: m is not b_l v b_r");
  return {std::move(LS), std::move(ctx)};
}

std::pair<ElementId, ElementId> in_L_covers(const ForkContext& ctx, ElementId x) {
  if (x == ctx.m) return {ctx.square.t, ctx.square.o};
  for (std::size_t i = 0; i < ctx.z_left.size(); ++i)
    if (ctx.z_left[i] == x) return {ctx.left_wing[i].top, ctx.left_wing[i].bottom};
  for (std::size_t i = 0; i < ctx.z_right.size(); ++i)
    if (ctx.z_right[i] == x) return {ctx.right_wing[i].top, ctx.right_wing[i].bottom};
  return {x, x};
}

Congruence gamma_oracle(const Lattice& LS, const ForkContext& ctx) {
  return principal_congruence(LS, ctx.m, ctx.square.t);
}

NamedCongruences named_congruences(const Lattice& L, const Lattice& LS, const ForkContext& ctx) {
  const auto& S = ctx.square;
  return {principal_congruence(L, S.a_l, S.t), principal_congruence(L, S.a_r, S.t),
          principal_congruence(LS, S.a_l, S.t), principal_congruence(LS, S.a_r, S.t), gamma_oracle(LS, ctx)};
}

Partition restrict_to_square(const Congruence& alpha, const CoveringSquare& S) {
  const std::uint32_t labels[4] = {alpha.partition().block_of(S.o), alpha.partition().block_of(S.a_l),
                                   alpha.partition().block_of(S.a_r), alpha.partition().block_of(S.t)};
  return Partition::from_labels(labels);
}

Congruence extend_one(const Lattice& L, const Lattice& LS, const ForkContext& ctx, const Congruence& alpha) {
  if (!restrict_to_square(alpha, ctx.square).is_one_block())
    throw Error(ErrorCode::PreconditionViolated, "extend_one: alpha does not collapse S");
  std::vector<std::vector<ElementId>> blocks;
  for (const auto& cls : alpha.partition().blocks()) {
    ElementId u = cls.front(), v = cls.front();
    for (ElementId x : cls) {
      u = L.meet(u, x);
      v = L.join(v, x);
    }
    blocks.push_back(interval_of(LS, ctx.embed[u], ctx.embed[v]));
  }
  Partition P = assemble(LS.size(), blocks, "extend_one");
  for (const auto& b : blocks) ensure(!b.empty(), "extend_one: empty block");
  ensure(P.block_count() == blocks.size(), "extend_one: blocks do not cover L[S]");
  check_extension(L, LS, ctx, alpha, P, "extend_one");
  return trust_congruence(std::move(P));
}

Congruence extend_zero(const Lattice& L, const Lattice& LS, const ForkContext& ctx, const Congruence& alpha) {
  if (!restrict_to_square(alpha, ctx.square).is_identity())
    throw Error(ErrorCode::PreconditionViolated, "extend_zero: alpha is not trivial on S");
  std::vector<std::vector<ElementId>> blocks;
  for (const auto& cls : alpha.partition().blocks()) {
    if (cls.size() < 2) continue;
    ElementId u = cls.front(), v = cls.front();
    for (ElementId x : cls) {
      u = L.meet(u, x);
      v = L.join(v, x);
    }
    blocks.push_back(interval_of(LS, ctx.embed[u], ctx.embed[v]));
  }
  // z-runs: z_j for the indices j whose x_j lies in the class of x_i.
  auto z_runs = [&](const std::vector<PrimeInterval>& wing, const std::vector<ElementId>& z) {
    std::vector<char> done(wing.size(), 0);
    for (std::size_t i = 0; i < wing.size(); ++i) {
      if (done[i]) continue;
      std::size_t lo = i, hi = i;
      for (std::size_t j = 0; j < wing.size(); ++j) {
        if (!alpha.same_block(wing[i].top, wing[j].top)) continue;
        lo = std::min(lo, j);
        hi = std::max(hi, j);
      }
      std::vector<ElementId> run;
      for (std::size_t j = lo; j <= hi; ++j) {
        run.push_back(z[j]);
        done[j] = 1;
      }
      if (run.size() > 1) blocks.push_back(run);
    }
  };
  z_runs(ctx.left_wing, ctx.z_left);
  z_runs(ctx.right_wing, ctx.z_right);
  Partition P = assemble(LS.size(), blocks, "extend_zero");
  check_extension(L, LS, ctx, alpha, P, "extend_zero");
  return trust_congruence(std::move(P));
}

ExtendsResult extends(const Lattice& L, const Lattice& LS, const ForkContext& ctx, const Congruence& alpha) {
  ExtendsResult r;
  const Partition onS = restrict_to_square(alpha, ctx.square);
  if (onS.is_one_block() || onS.is_identity()) {
    r.trivial_on_square = true;
    r.extends = true;
    r.witness = onS.is_one_block() ? extend_one(L, LS, ctx, alpha) : extend_zero(L, LS, ctx, alpha);
    return r;
  }
  auto ext = generated_in_extension(L, alpha, LS, ctx.embed);
  r.extends = ext.is_extension;
  if (r.extends) r.witness = ext.generated;
  return r;
}

}  // namespace sps
