#include "sps/isomorphism.hpp"

#include <algorithm>
#include <array>
#include <functional>

namespace sps {

namespace {

using Signature = std::array<std::size_t, 5>;

std::vector<Signature> signatures(const Lattice& L) {
  std::vector<Signature> sig(L.size());
  for (ElementId x = 0; x < L.size(); ++x) {
    std::size_t down = 0, up = 0;
    for (ElementId y = 0; y < L.size(); ++y) {
      down += L.leq(y, x);
      up += L.leq(x, y);
    }
    sig[x] = {L.height(x), L.lower_covers(x).size(), L.upper_covers(x).size(), down, up};
  }
  return sig;
}

}  // namespace

std::optional<std::vector<ElementId>> find_isomorphism(const Lattice& A, const Lattice& B) {
  const std::size_t n = A.size();
  if (n != B.size() || A.cover_count() != B.cover_count()) return std::nullopt;
  const auto sa = signatures(A), sb = signatures(B);
  {
    auto x = sa, y = sb;
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (x != y) return std::nullopt;
  }

  // Assign A's elements bottom-up so every lower cover is placed first.
  std::vector<ElementId> order = A.elements();
  std::stable_sort(order.begin(), order.end(), [&](ElementId u, ElementId v) { return A.height(u) < A.height(v); });

  std::vector<ElementId> map(n, 0);
  std::vector<char> assigned(n, 0), used(n, 0);
  std::function<bool(std::size_t)> extend = [&](std::size_t idx) {
    if (idx == n) return true;
    const ElementId x = order[idx];
    for (ElementId y = 0; y < n; ++y) {
      if (used[y] || sa[x] != sb[y]) continue;
      bool ok = true;
      // Covers among already-assigned elements must correspond exactly.
      for (ElementId u = 0; u < n && ok; ++u) {
        if (!assigned[u]) continue;
        if (A.covered_by(u, x) != B.covered_by(map[u], y) || A.covered_by(x, u) != B.covered_by(y, map[u]))
          ok = false;
      }
      if (!ok) continue;
      map[x] = y;
      assigned[x] = used[y] = 1;
      if (extend(idx + 1)) return true;
      assigned[x] = used[y] = 0;
    }
    return false;
  };
  if (!extend(0)) return std::nullopt;
  return map;
}

}  // namespace sps
