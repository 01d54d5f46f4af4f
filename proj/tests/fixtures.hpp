#pragma once

#include <functional>
#include <vector>

#include "sps/congruence.hpp"
#include "sps/generators.hpp"
#include "sps/lattice.hpp"

namespace fx {

using sps::ElementId;
using sps::Lattice;
using sps::Partition;

// named("s7") ids
inline constexpr ElementId o = 0, b_l = 1, b_r = 2, a_l = 3, m = 4, a_r = 5, t = 6;

inline Lattice chain(std::size_t k) {
  std::vector<sps::CoverPair> c;
  for (ElementId i = 0; i + 1 < k; ++i) c.emplace_back(i, i + 1);
  return Lattice::from_covers(k, c);
}

inline Lattice cube() {
  const std::vector<sps::CoverPair> c{{0, 1}, {0, 2}, {0, 4}, {1, 3}, {1, 5}, {2, 3},
                                      {2, 6}, {4, 5}, {4, 6}, {3, 7}, {5, 7}, {6, 7}};
  return Lattice::from_covers(8, c);
}

inline Lattice s7() { return sps::named("s7"); }
inline Lattice c2sq() { return sps::named("c2sq"); }

inline Partition blocks(std::size_t n, const std::vector<std::vector<ElementId>>& b) {
  return Partition::from_blocks(n, b);
}

// Substitution property straight from the definition, over all pairs.
inline bool brute_congruence(const Lattice& L, const Partition& P) {
  for (ElementId a = 0; a < L.size(); ++a)
    for (ElementId b = 0; b < L.size(); ++b) {
      if (!P.same_block(a, b)) continue;
      for (ElementId c = 0; c < L.size(); ++c)
        if (!P.same_block(L.meet(a, c), L.meet(b, c)) || !P.same_block(L.join(a, c), L.join(b, c))) return false;
    }
  return true;
}

// Every set partition of 0..n-1 (restricted growth strings).
inline void each_partition(std::size_t n, const std::function<void(const Partition&)>& f) {
  std::vector<std::uint32_t> rgs(n, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t used) {
    if (i == n) {
      f(Partition::from_labels(rgs));
      return;
    }
    for (std::uint32_t v = 0; v <= used; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(used, v + 1));
    }
  };
  if (n == 0) return;
  rgs[0] = 0;
  rec(1, 1);
}

// Least congruence containing the pairs, by iterating the substitution
// property to a fixed point on an explicit relation matrix.
inline Partition brute_generated(const Lattice& L, const std::vector<sps::CoverPair>& pairs) {
  const std::size_t n = L.size();
  std::vector<std::vector<char>> R(n, std::vector<char>(n, 0));
  for (ElementId x = 0; x < n; ++x) R[x][x] = 1;
  for (auto [a, b] : pairs) R[a][b] = R[b][a] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    auto set = [&](ElementId x, ElementId y) {
      if (!R[x][y]) R[x][y] = R[y][x] = 1, changed = true;
    };
    for (ElementId a = 0; a < n; ++a)
      for (ElementId b = 0; b < n; ++b) {
        if (!R[a][b]) continue;
        for (ElementId c = 0; c < n; ++c) {
          set(L.meet(a, c), L.meet(b, c));
          set(L.join(a, c), L.join(b, c));
          if (R[b][c]) set(a, c);
        }
      }
  }
  std::vector<std::uint32_t> label(n);
  for (ElementId x = 0; x < n; ++x)
    for (ElementId y = 0; y <= x; ++y)
      if (R[x][y]) {
        label[x] = y;
        break;
      }
  return Partition::from_labels(label);
}

}  // namespace fx
