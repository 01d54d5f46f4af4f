#include "sps/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace sps {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotALattice: return "NotALattice";
    case ErrorCode::NotReduced: return "NotReduced";
    case ErrorCode::BadOrder: return "BadOrder";
    case ErrorCode::MultipleExtremes: return "MultipleExtremes";
    case ErrorCode::NotSlim: return "NotSlim";
    case ErrorCode::NotIntervalClasses: return "NotIntervalClasses";
    case ErrorCode::NotSublattice: return "NotSublattice";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotCoveringSquare: return "NotCoveringSquare";
    case ErrorCode::NotSPS: return "NotSPS";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::EmbeddingInconsistent: return "EmbeddingInconsistent";
    case ErrorCode::HasProtrusion: return "HasProtrusion";
    case ErrorCode::NotTight: return "NotTight";
    case ErrorCode::NoProtrusion: return "NoProtrusion";
    case ErrorCode::NonTermination: return "NonTermination";
    case ErrorCode::NotWide: return "NotWide";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::InvariantViolated: return "InvariantViolated";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

void ensure(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorCode::InvariantViolated, what);
}

namespace {

std::string pair_text(ElementId a, ElementId b) {
  std::ostringstream os;
  os << "(" << a << ", " << b << ")";
  return os.str();
}

// Checks that `given` is a permutation of `neighbors`; fills it when omitted.
void settle_order(std::vector<ElementId>& given, const std::vector<ElementId>& neighbors,
                  ElementId x, const char* what) {
  if (given.empty() && neighbors.size() <= 1) {
    given = neighbors;
    return;
  }
  auto a = given;
  auto b = neighbors;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) {
    std::ostringstream os;
    os << what << " order of element " << x << " is not a permutation of its covers";
    throw Error(ErrorCode::BadOrder, os.str());
  }
}

}  // namespace

bool Lattice::covered_by(ElementId a, ElementId b) const {
  const auto& up = upper_[a];
  return std::find(up.begin(), up.end(), b) != up.end();
}

Lattice Lattice::build(std::size_t n, std::span<const CoverPair> covers,
                       std::vector<std::vector<ElementId>> lower_order,
                       std::vector<std::vector<ElementId>> upper_order) {
  if (n == 0) throw Error(ErrorCode::MultipleExtremes, "empty lattice");
  lower_order.resize(n);
  upper_order.resize(n);

  std::vector<std::vector<ElementId>> lower(n), upper(n);
  std::set<CoverPair> seen;
  for (auto [a, b] : covers) {
    if (a >= n || b >= n) throw Error(ErrorCode::NotALattice, "cover id out of range " + pair_text(a, b));
    if (a == b) throw Error(ErrorCode::NotALattice, "self-loop at " + std::to_string(a));
    if (!seen.insert({a, b}).second) throw Error(ErrorCode::NotReduced, "duplicate cover " + pair_text(a, b));
    lower[b].push_back(a);
    upper[a].push_back(b);
  }

  // Topological order (bottom first).
  std::vector<std::size_t> indegree(n);
  for (std::size_t x = 0; x < n; ++x) indegree[x] = lower[x].size();
  std::vector<ElementId> topo;
  topo.reserve(n);
  std::queue<ElementId> ready;
  for (ElementId x = 0; x < n; ++x)
    if (indegree[x] == 0) ready.push(x);
  while (!ready.empty()) {
    ElementId x = ready.front();
    ready.pop();
    topo.push_back(x);
    for (ElementId y : upper[x])
      if (--indegree[y] == 0) ready.push(y);
  }
  if (topo.size() != n) throw Error(ErrorCode::NotALattice, "cover graph has a cycle");

  std::size_t minimal = 0, maximal = 0;
  ElementId bot = 0, tp = 0;
  for (ElementId x = 0; x < n; ++x) {
    if (lower[x].empty()) ++minimal, bot = x;
    if (upper[x].empty()) ++maximal, tp = x;
  }
  if (minimal != 1 || maximal != 1)
    throw Error(ErrorCode::MultipleExtremes, std::to_string(minimal) + " minimal and " +
                                                 std::to_string(maximal) + " maximal elements");

  Lattice L;
  L.n_ = n;
  L.bottom_ = bot;
  L.top_ = tp;
  L.leq_.assign(n * n, 0);
  L.height_.assign(n, 0);
  for (ElementId x : topo) {
    L.leq_[x * n + x] = 1;
    for (ElementId y : lower[x]) {
      for (std::size_t z = 0; z < n; ++z)
        if (L.leq_[z * n + y]) L.leq_[z * n + x] = 1;
      L.height_[x] = std::max(L.height_[x], L.height_[y] + 1);
    }
  }

  for (auto [a, b] : covers) {
    for (ElementId c : lower[b])
      if (c != a && L.leq_[a * n + c])
        throw Error(ErrorCode::NotReduced, "cover " + pair_text(a, b) + " is implied through " +
                                               std::to_string(c));
  }

  std::vector<std::size_t> down_size(n, 0), up_size(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (L.leq_[a * n + b]) ++down_size[b], ++up_size[a];

  L.meet_.assign(n * n, 0);
  L.join_.assign(n * n, 0);
  for (ElementId a = 0; a < n; ++a) {
    for (ElementId b = a; b < n; ++b) {
      // meet: the common lower bound whose down-set holds every common lower bound
      std::size_t common = 0;
      ElementId best = bot;
      for (ElementId z = 0; z < n; ++z) {
        if (L.leq(z, a) && L.leq(z, b)) {
          ++common;
          if (down_size[z] > down_size[best]) best = z;
        }
      }
      if (down_size[best] != common)
        throw Error(ErrorCode::NotALattice, "no meet for " + pair_text(a, b));
      L.meet_[a * n + b] = L.meet_[b * n + a] = best;

      common = 0;
      best = tp;
      for (ElementId z = 0; z < n; ++z) {
        if (L.leq(a, z) && L.leq(b, z)) {
          ++common;
          if (up_size[z] > up_size[best]) best = z;
        }
      }
      if (up_size[best] != common)
        throw Error(ErrorCode::NotALattice, "no join for " + pair_text(a, b));
      L.join_[a * n + b] = L.join_[b * n + a] = best;
    }
  }

  // Lattice axioms on the derived tables.
  for (ElementId a = 0; a < n; ++a) {
    if (L.meet(a, a) != a || L.join(a, a) != a)
      throw Error(ErrorCode::NotALattice, "idempotence fails at " + std::to_string(a));
    for (ElementId b = 0; b < n; ++b) {
      if (L.join(a, L.meet(a, b)) != a || L.meet(a, L.join(a, b)) != a)
        throw Error(ErrorCode::NotALattice, "absorption fails at " + pair_text(a, b));
      for (ElementId c = 0; c < n; ++c) {
        if (L.meet(L.meet(a, b), c) != L.meet(a, L.meet(b, c)) ||
            L.join(L.join(a, b), c) != L.join(a, L.join(b, c)))
          throw Error(ErrorCode::NotALattice, "associativity fails");
      }
    }
  }

  for (ElementId x = 0; x < n; ++x) {
    settle_order(lower_order[x], lower[x], x, "lower");
    settle_order(upper_order[x], upper[x], x, "upper");
  }
  L.lower_ = std::move(lower_order);
  L.upper_ = std::move(upper_order);
  return L;
}

Lattice Lattice::from_covers(std::size_t n, std::span<const CoverPair> covers) {
  std::vector<std::vector<ElementId>> lower(n), upper(n);
  for (auto [a, b] : covers) {
    if (a < n && b < n) {
      lower[b].push_back(a);
      upper[a].push_back(b);
    }
  }
  for (auto& v : lower) std::sort(v.begin(), v.end());
  for (auto& v : upper) std::sort(v.begin(), v.end());
  return build(n, covers, std::move(lower), std::move(upper));
}

std::vector<CoverPair> Lattice::cover_pairs() const {
  std::vector<CoverPair> out;
  for (ElementId x = 0; x < n_; ++x)
    for (ElementId y : upper_[x]) out.emplace_back(x, y);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PrimeInterval> Lattice::prime_intervals() const {
  std::vector<PrimeInterval> out;
  for (auto [a, b] : cover_pairs()) out.push_back({a, b});
  return out;
}

std::size_t Lattice::cover_count() const {
  std::size_t c = 0;
  for (const auto& u : upper_) c += u.size();
  return c;
}

Lattice Lattice::mirrored() const {
  Lattice m = *this;
  for (auto& v : m.lower_) std::reverse(v.begin(), v.end());
  for (auto& v : m.upper_) std::reverse(v.begin(), v.end());
  return m;
}

std::vector<ElementId> Lattice::elements() const {
  std::vector<ElementId> all(n_);
  std::iota(all.begin(), all.end(), ElementId{0});
  return all;
}

bool is_sublattice(const Lattice& lattice, std::span<const ElementId> subset) {
  std::vector<char> in(lattice.size(), 0);
  for (ElementId x : subset) in[x] = 1;
  for (ElementId a : subset)
    for (ElementId b : subset)
      if (!in[lattice.meet(a, b)] || !in[lattice.join(a, b)]) return false;
  return !subset.empty();
}

Sublattice induced_sublattice(const Lattice& lattice, std::span<const ElementId> subset) {
  if (!is_sublattice(lattice, subset))
    throw Error(ErrorCode::NotSublattice, "subset is not closed under meet and join");
  const std::size_t k = subset.size();
  Sublattice out{Lattice::from_covers(1, {}), {subset.begin(), subset.end()},
                 std::vector<std::int64_t>(lattice.size(), -1)};
  for (std::size_t i = 0; i < k; ++i) out.to_local[subset[i]] = static_cast<std::int64_t>(i);

  std::vector<CoverPair> covers;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      ElementId a = subset[i], b = subset[j];
      if (!lattice.less(a, b)) continue;
      bool is_cover = true;
      for (ElementId c : subset)
        if (lattice.less(a, c) && lattice.less(c, b)) {
          is_cover = false;
          break;
        }
      if (is_cover) covers.emplace_back(static_cast<ElementId>(i), static_cast<ElementId>(j));
    }
  }

  // Order cover lists by the parent's horizontal order where the cover is
  // also a parent cover; others keep ascending parent id at the end.
  auto rank_in = [](std::span<const ElementId> list, ElementId x) {
    auto it = std::find(list.begin(), list.end(), x);
    return static_cast<std::size_t>(it - list.begin());
  };
  std::vector<std::vector<ElementId>> lower(k), upper(k);
  for (auto [a, b] : covers) {
    lower[b].push_back(a);
    upper[a].push_back(b);
  }
  for (std::size_t i = 0; i < k; ++i) {
    ElementId px = subset[i];
    std::stable_sort(lower[i].begin(), lower[i].end(), [&](ElementId u, ElementId v) {
      return rank_in(lattice.lower_covers(px), subset[u]) < rank_in(lattice.lower_covers(px), subset[v]);
    });
    std::stable_sort(upper[i].begin(), upper[i].end(), [&](ElementId u, ElementId v) {
      return rank_in(lattice.upper_covers(px), subset[u]) < rank_in(lattice.upper_covers(px), subset[v]);
    });
  }
  out.lattice = Lattice::build(k, covers, std::move(lower), std::move(upper));
  return out;
}

std::vector<ElementId> generated_sublattice(const Lattice& lattice,
                                            std::span<const ElementId> generators) {
  std::vector<char> in(lattice.size(), 0);
  std::vector<ElementId> members;
  for (ElementId g : generators)
    if (!in[g]) in[g] = 1, members.push_back(g);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t count = members.size();
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        for (ElementId c : {lattice.meet(members[i], members[j]), lattice.join(members[i], members[j])}) {
          if (!in[c]) in[c] = 1, members.push_back(c), grew = true;
        }
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace sps
