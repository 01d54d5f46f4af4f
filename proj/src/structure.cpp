#include "sps/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace sps {

namespace {

std::size_t position(std::span<const ElementId> list, ElementId x) {
  auto it = std::find(list.begin(), list.end(), x);
  return it == list.end() ? list.size() : static_cast<std::size_t>(it - list.begin());
}

std::string interval_text(PrimeInterval p) {
  std::ostringstream os;
  os << "[" << p.bottom << "," << p.top << "]";
  return os.str();
}

}  // namespace

bool is_semimodular(const Lattice& L) {
  for (ElementId a = 0; a < L.size(); ++a)
    for (ElementId b = 0; b < L.size(); ++b)
      if (L.covered_by(L.meet(a, b), a) && !L.covered_by(b, L.join(a, b))) return false;
  return true;
}

bool is_slim(const Lattice& L) {
  const auto n = static_cast<ElementId>(L.size());
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId y = x + 1; y < n; ++y) {
      if (L.comparable(x, y)) continue;
      const ElementId m = L.meet(x, y), j = L.join(x, y);
      for (ElementId z = y + 1; z < n; ++z) {
        if (L.comparable(x, z) || L.comparable(y, z)) continue;
        if (L.meet(x, z) == m && L.meet(y, z) == m && L.join(x, z) == j && L.join(y, z) == j)
          return false;
      }
    }
  }
  return true;
}

std::vector<ElementId> join_irreducibles(const Lattice& L) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < L.size(); ++x)
    if (L.lower_covers(x).size() == 1) out.push_back(x);
  return out;
}

bool is_slim_two_chains(const Lattice& L) {
  // Width ≤ 2 by Dilworth: |Ji| minus a maximum matching of the strict
  // comparability bipartite graph is the minimum number of chains.
  const auto ji = join_irreducibles(L);
  const std::size_t k = ji.size();
  std::vector<int> match_right(k, -1);
  std::function<bool(std::size_t, std::vector<char>&)> augment = [&](std::size_t u, std::vector<char>& seen) {
    for (std::size_t v = 0; v < k; ++v) {
      if (!L.less(ji[u], ji[v]) || seen[v]) continue;
      seen[v] = 1;
      if (match_right[v] < 0 || augment(static_cast<std::size_t>(match_right[v]), seen)) {
        match_right[v] = static_cast<int>(u);
        return true;
      }
    }
    return false;
  };
  std::size_t matching = 0;
  for (std::size_t u = 0; u < k; ++u) {
    std::vector<char> seen(k, 0);
    if (augment(u, seen)) ++matching;
  }
  return k - matching <= 2;
}

bool upper_cover_count_ok(const Lattice& L) {
  for (ElementId x = 0; x < L.size(); ++x)
    if (L.upper_covers(x).size() > 2) return false;
  return true;
}

bool is_distributive(const Lattice& L, std::span<const ElementId> subset) {
  std::vector<ElementId> all;
  if (subset.empty()) {
    all = L.elements();
    subset = all;
  }
  for (ElementId x : subset)
    for (ElementId y : subset)
      for (ElementId z : subset)
        if (L.meet(x, L.join(y, z)) != L.join(L.meet(x, y), L.meet(x, z))) return false;
  return true;
}

bool is_sps(const Lattice& L) { return is_semimodular(L) && is_slim(L); }

std::vector<CoveringSquare> covering_squares(const Lattice& L) {
  std::vector<CoveringSquare> out;
  for (ElementId o = 0; o < L.size(); ++o) {
    auto up = L.upper_covers(o);
    for (std::size_t i = 0; i < up.size(); ++i) {
      for (std::size_t j = i + 1; j < up.size(); ++j) {
        const ElementId t = L.join(up[i], up[j]);
        if (L.covered_by(up[i], t) && L.covered_by(up[j], t)) {
          out.push_back({o, up[i], up[j], t,
                         L.lower_covers(t).size() == 2 ? SquareKind::tight : SquareKind::wide});
        }
      }
    }
  }
  return out;
}

std::optional<CoveringSquare> find_square(const Lattice& L, ElementId o, ElementId a_l, ElementId a_r,
                                          ElementId t) {
  const std::size_t n = L.size();
  if (o >= n || a_l >= n || a_r >= n || t >= n) return std::nullopt;
  for (const auto& s : covering_squares(L))
    if (s.o == o && s.a_l == a_l && s.a_r == a_r && s.t == t) return s;
  return std::nullopt;
}

std::vector<Trajectory> trajectories(const Lattice& L) {
  std::map<PrimeInterval, PrimeInterval> right_of, left_of;
  auto link = [&](PrimeInterval a, PrimeInterval b) {
    if (right_of.count(a) || left_of.count(b))
      throw Error(ErrorCode::NotSlim, "trajectory branches at " + interval_text(a));
    right_of[a] = b;
    left_of[b] = a;
  };
  for (const auto& s : covering_squares(L)) {
    link({s.o, s.a_l}, {s.a_r, s.t});
    link({s.a_l, s.t}, {s.o, s.a_r});
  }
  std::vector<Trajectory> out;
  std::size_t covered = 0;
  for (const auto& p : L.prime_intervals()) {
    if (left_of.count(p)) continue;
    Trajectory tr{p};
    for (auto it = right_of.find(p); it != right_of.end(); it = right_of.find(it->second)) {
      tr.push_back(it->second);
      if (tr.size() > L.cover_count()) throw Error(ErrorCode::NotSlim, "cyclic trajectory");
    }
    covered += tr.size();
    out.push_back(std::move(tr));
  }
  if (covered != L.cover_count()) throw Error(ErrorCode::NotSlim, "cyclic trajectory");
  return out;
}

std::vector<PrimeInterval> left_wing(const Lattice& L, PrimeInterval p) {
  for (const auto& tr : trajectories(L)) {
    auto it = std::find(tr.begin(), tr.end(), p);
    if (it == tr.end()) continue;
    std::vector<PrimeInterval> wing(tr.begin(), it + 1);
    std::reverse(wing.begin(), wing.end());
    return wing;
  }
  throw Error(ErrorCode::PreconditionViolated, interval_text(p) + " is not a prime interval");
}

std::vector<PrimeInterval> right_wing(const Lattice& L, PrimeInterval p) {
  return left_wing(L.mirrored(), p);
}

bool is_descending_wing(const Lattice& L, std::span<const PrimeInterval> wing) {
  for (std::size_t i = 0; i + 1 < wing.size(); ++i) {
    if (!L.covered_by(wing[i + 1].top, wing[i].top) || !L.covered_by(wing[i + 1].bottom, wing[i].bottom))
      return false;
  }
  return true;
}

std::vector<ElementId> descend_boundary(const Lattice& L, ElementId x, bool rightmost) {
  std::vector<ElementId> chain{x};
  while (!L.lower_covers(x).empty()) {
    auto low = L.lower_covers(x);
    x = rightmost ? low.back() : low.front();
    chain.push_back(x);
  }
  return chain;
}

std::pair<std::vector<ElementId>, std::vector<ElementId>> boundary_chains(const Lattice& L) {
  auto walk = [&](bool rightmost) {
    std::vector<ElementId> chain{L.bottom()};
    ElementId x = L.bottom();
    while (!L.upper_covers(x).empty()) {
      auto up = L.upper_covers(x);
      x = rightmost ? up.back() : up.front();
      chain.push_back(x);
    }
    return chain;
  };
  return {walk(false), walk(true)};
}

Corners corners(const Lattice& L) {
  auto [left, right] = boundary_chains(L);
  auto doubly_irreducible = [&](ElementId x) {
    return x != L.bottom() && x != L.top() && L.lower_covers(x).size() == 1 && L.upper_covers(x).size() == 1;
  };
  Corners c;
  for (ElementId x : left)
    if (doubly_irreducible(x)) c.left.push_back(x);
  for (ElementId x : right)
    if (doubly_irreducible(x)) c.right.push_back(x);
  return c;
}

bool is_rectangular(const Lattice& L) {
  if (!is_semimodular(L)) return false;
  auto c = corners(L);
  if (c.left.size() != 1 || c.right.size() != 1) return false;
  const ElementId lc = c.left.front(), rc = c.right.front();
  return L.join(lc, rc) == L.top() && L.meet(lc, rc) == L.bottom();
}

bool is_patch(const Lattice& L) {
  if (!is_rectangular(L)) return false;
  auto c = corners(L);
  return L.covered_by(c.left.front(), L.top()) && L.covered_by(c.right.front(), L.top());
}

std::vector<ElementId> ideal(const Lattice& L, ElementId t) {
  std::vector<ElementId> out;
  for (ElementId x = 0; x < L.size(); ++x)
    if (L.leq(x, t)) out.push_back(x);
  return out;
}

ChainSide side_of_chain(const Lattice& L, std::span<const ElementId> chain, ElementId x) {
  if (std::find(chain.begin(), chain.end(), x) != chain.end()) return ChainSide::on;
  ensure(!chain.empty() && L.leq(x, chain.front()), "side_of_chain: element not below the chain top");
  // c: the least chain element above x; d: a lower cover of c above x.
  std::size_t ci = chain.size();
  while (ci > 0 && !L.leq(x, chain[ci - 1])) --ci;
  ensure(ci > 0, "side_of_chain: no chain element above x");
  const std::size_t c_index = ci - 1;
  ensure(c_index + 1 < chain.size(), "side_of_chain: chain does not reach the bottom");
  const ElementId c = chain[c_index];
  const ElementId below = chain[c_index + 1];
  auto low = L.lower_covers(c);
  for (ElementId d : low) {
    if (d != below && L.leq(x, d))
      return position(low, d) < position(low, below) ? ChainSide::left : ChainSide::right;
  }
  throw Error(ErrorCode::EmbeddingInconsistent, "no lower cover of the chain above element " + std::to_string(x));
}

std::vector<ElementId> between_chains(const Lattice& L, std::span<const ElementId> left_chain,
                                      std::span<const ElementId> right_chain) {
  std::vector<ElementId> out;
  const ElementId top = left_chain.front();
  for (ElementId x = 0; x < L.size(); ++x) {
    if (!L.leq(x, top)) continue;
    auto sl = side_of_chain(L, left_chain, x);
    auto sr = side_of_chain(L, right_chain, x);
    if (sl == ChainSide::left || sr == ChainSide::right) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace sps
