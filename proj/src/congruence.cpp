#include "sps/congruence.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace sps {

Congruence trust_congruence(Partition P) { return Congruence(std::move(P)); }

// --- Partition --------------------------------------------------------------

Partition Partition::identity(std::size_t n) {
  Partition p;
  p.label_.resize(n);
  std::iota(p.label_.begin(), p.label_.end(), std::uint32_t{0});
  p.count_ = n;
  return p;
}

Partition Partition::one_block(std::size_t n) {
  Partition p;
  p.label_.assign(n, 0);
  p.count_ = n == 0 ? 0 : 1;
  return p;
}

Partition Partition::from_labels(std::span<const std::uint32_t> labels) {
  Partition p;
  p.label_.resize(labels.size());
  std::map<std::uint32_t, std::uint32_t> renumber;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, fresh] = renumber.try_emplace(labels[i], static_cast<std::uint32_t>(renumber.size()));
    p.label_[i] = it->second;
  }
  p.count_ = renumber.size();
  return p;
}

Partition Partition::from_blocks(std::size_t n, const std::vector<std::vector<ElementId>>& blocks) {
  std::vector<std::uint32_t> labels(n, 0);
  std::vector<char> seen(n, 0);
  std::uint32_t b = 0;
  for (const auto& block : blocks) {
    ensure(!block.empty(), "partition block is empty");
    for (ElementId x : block) {
      ensure(x < n, "partition element out of range");
      ensure(!seen[x], "partition blocks overlap at " + std::to_string(x));
      seen[x] = 1;
      labels[x] = b;
    }
    ++b;
  }
  for (std::size_t x = 0; x < n; ++x) ensure(seen[x], "partition misses element " + std::to_string(x));
  return from_labels(labels);
}

Partition Partition::from_union_find(UnionFind& uf) {
  std::vector<std::uint32_t> labels(uf.size());
  for (std::uint32_t x = 0; x < uf.size(); ++x) labels[x] = uf.find(x);
  return from_labels(labels);
}

std::vector<std::vector<ElementId>> Partition::blocks() const {
  std::vector<std::vector<ElementId>> out(count_);
  for (ElementId x = 0; x < label_.size(); ++x) out[label_[x]].push_back(x);
  return out;
}

bool Partition::refines(const Partition& other) const {
  if (size() != other.size()) return false;
  std::vector<std::int64_t> image(count_, -1);
  for (std::size_t x = 0; x < label_.size(); ++x) {
    auto& slot = image[label_[x]];
    if (slot < 0) slot = other.label_[x];
    else if (slot != other.label_[x]) return false;
  }
  return true;
}

Partition Partition::join(const Partition& other) const {
  ensure(size() == other.size(), "joining partitions of different sizes");
  UnionFind uf(size());
  std::vector<std::int64_t> first_a(count_, -1), first_b(other.count_, -1);
  for (std::uint32_t x = 0; x < size(); ++x) {
    if (first_a[label_[x]] < 0) first_a[label_[x]] = x;
    else uf.merge(x, static_cast<std::uint32_t>(first_a[label_[x]]));
    if (first_b[other.label_[x]] < 0) first_b[other.label_[x]] = x;
    else uf.merge(x, static_cast<std::uint32_t>(first_b[other.label_[x]]));
  }
  return from_union_find(uf);
}

std::string serialize_blocks(const Partition& P) {
  std::ostringstream os;
  for (const auto& block : P.blocks()) {
    for (std::size_t i = 0; i < block.size(); ++i) os << (i ? " " : "") << block[i];
    os << "\n";
  }
  return os.str();
}

Partition parse_blocks(std::string_view text, std::size_t n) {
  std::vector<std::vector<ElementId>> blocks;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<ElementId> block;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v >= n)
        throw Error(ErrorCode::Parse, "line " + std::to_string(line_no) + ": bad element '" + tok + "'");
      block.push_back(static_cast<ElementId>(v));
    }
    if (!block.empty()) blocks.push_back(std::move(block));
  }
  // Elements not listed are singletons.
  std::vector<char> seen(n, 0);
  for (const auto& b : blocks)
    for (ElementId x : b) {
      if (seen[x]) throw Error(ErrorCode::Parse, "element " + std::to_string(x) + " listed twice");
      seen[x] = 1;
    }
  for (ElementId x = 0; x < n; ++x)
    if (!seen[x]) blocks.push_back({x});
  return Partition::from_blocks(n, blocks);
}

Congruence Congruence::verified(const Lattice& L, Partition P) {
  if (P.size() != L.size() || !is_congruence(L, P))
    throw Error(ErrorCode::InvariantViolated, "partition is not a congruence");
  return Congruence(std::move(P));
}

// --- generation ---------------------------------------------------------------

Congruence congruence_generated(const Lattice& L, std::span<const CoverPair> pairs) {
  const std::size_t n = L.size();
  UnionFind uf(n);
  std::deque<CoverPair> work;
  for (auto [a, b] : pairs)
    if (uf.merge(a, b)) work.emplace_back(a, b);
  while (!work.empty()) {
    auto [x, y] = work.front();
    work.pop_front();
    for (ElementId c = 0; c < n; ++c) {
      const ElementId m1 = L.meet(x, c), m2 = L.meet(y, c);
      if (uf.merge(m1, m2)) work.emplace_back(m1, m2);
      const ElementId j1 = L.join(x, c), j2 = L.join(y, c);
      if (uf.merge(j1, j2)) work.emplace_back(j1, j2);
    }
  }
  return trust_congruence(Partition::from_union_find(uf));
}

Congruence principal_congruence(const Lattice& L, ElementId a, ElementId b) {
  const CoverPair pair{a, b};
  return congruence_generated(L, std::span<const CoverPair>(&pair, 1));
}

Congruence congruence_join(const Lattice& L, const Congruence& a, const Congruence& b) {
  ensure(a.size() == L.size() && b.size() == L.size(), "congruence size mismatch");
  return trust_congruence(a.partition().join(b.partition()));
}

Congruence identity_congruence(const Lattice& L) { return trust_congruence(Partition::identity(L.size())); }
Congruence one_block_congruence(const Lattice& L) { return trust_congruence(Partition::one_block(L.size())); }

// --- tests --------------------------------------------------------------------

bool is_congruence(const Lattice& L, const Partition& P) {
  if (P.size() != L.size()) return false;
  for (const auto& block : P.blocks()) {
    const ElementId rep = block.front();
    for (std::size_t i = 1; i < block.size(); ++i) {
      const ElementId y = block[i];
      for (ElementId c = 0; c < L.size(); ++c) {
        if (!P.same_block(L.meet(rep, c), L.meet(y, c)) || !P.same_block(L.join(rep, c), L.join(y, c)))
          return false;
      }
    }
  }
  return true;
}

bool has_interval_classes(const Lattice& L, const Partition& P) {
  if (P.size() != L.size()) return false;
  for (const auto& block : P.blocks()) {
    ElementId lo = block.front(), hi = block.front();
    for (ElementId x : block) lo = L.meet(lo, x), hi = L.join(hi, x);
    if (!P.same_block(lo, block.front()) || !P.same_block(hi, block.front())) return false;
    for (ElementId x = 0; x < L.size(); ++x)
      if (L.leq(lo, x) && L.leq(x, hi) && !P.same_block(x, lo)) return false;
  }
  return true;
}

bool is_congruence_via_covers(const Lattice& L, const Partition& P) {
  if (!has_interval_classes(L, P))
    throw Error(ErrorCode::NotIntervalClasses, "equivalence classes are not intervals");
  for (ElementId a = 0; a < L.size(); ++a) {
    auto up = L.upper_covers(a);
    for (ElementId b : up)
      for (ElementId c : up)
        if (b != c && P.same_block(a, b) && !P.same_block(c, L.join(b, c))) return false;
    auto low = L.lower_covers(a);
    for (ElementId b : low)
      for (ElementId c : low)
        if (b != c && P.same_block(a, b) && !P.same_block(c, L.meet(b, c))) return false;
  }
  return true;
}

// --- perspectivity ------------------------------------------------------------

bool cpersp_up(const Lattice& L, Interval ab, Interval cd) {
  return L.leq(ab.bottom, cd.bottom) && cd.top == L.join(ab.top, cd.bottom);
}

bool cpersp_down(const Lattice& L, Interval ab, Interval cd) {
  return L.leq(cd.top, ab.top) && cd.bottom == L.meet(ab.bottom, cd.top);
}

bool cpersp(const Lattice& L, Interval ab, Interval cd) { return cpersp_up(L, ab, cd) || cpersp_down(L, ab, cd); }

const std::vector<char>& CprojSearch::reachable(Interval from) {
  if (auto it = memo_.find(from); it != memo_.end()) return it->second;
  const Lattice& L = *L_;
  const std::size_t n = L.size();
  std::vector<char> seen(n * n, 0);
  std::deque<Interval> queue{from};
  seen[from.bottom * n + from.top] = 1;
  while (!queue.empty()) {
    const Interval cur = queue.front();
    queue.pop_front();
    auto visit = [&](Interval next) {
      auto& s = seen[next.bottom * n + next.top];
      if (!s) s = 1, queue.push_back(next);
    };
    for (ElementId c = 0; c < n; ++c) {
      if (L.leq(cur.bottom, c)) visit({c, L.join(cur.top, c)});
      if (L.leq(c, cur.top)) visit({L.meet(cur.bottom, c), c});
    }
  }
  return memo_.emplace(from, std::move(seen)).first->second;
}

bool CprojSearch::cproj(Interval from, Interval to) {
  return reachable(from)[to.bottom * L_->size() + to.top] != 0;
}

bool collapses_iff_cproj_check(const Lattice& L, ElementId a, ElementId b, PrimeInterval q,
                               CprojSearch* search) {
  CprojSearch local(L);
  CprojSearch& s = search ? *search : local;
  const bool collapsed = principal_congruence(L, a, b).same_block(q.bottom, q.top);
  bool via_prime = false;
  for (const auto& p : L.prime_intervals()) {
    if (L.leq(a, p.bottom) && L.leq(p.top, b) && s.cproj({p.bottom, p.top}, {q.bottom, q.top})) {
      via_prime = true;
      break;
    }
  }
  ensure(collapsed == via_prime,
         "collapse and congruence-projectivity disagree on [" + std::to_string(a) + "," + std::to_string(b) + "]");
  return collapsed;
}

// --- restriction and extension ------------------------------------------------

Partition restrict_to(const Lattice& host, const Partition& theta, std::span<const ElementId> subset) {
  if (!is_sublattice(host, subset)) throw Error(ErrorCode::NotSublattice, "restriction target is not a sublattice");
  std::vector<std::uint32_t> labels;
  labels.reserve(subset.size());
  for (ElementId x : subset) labels.push_back(theta.block_of(x));
  return Partition::from_labels(labels);
}

Extension generated_in_extension(const Lattice& L, const Congruence& alpha, const Lattice& K,
                                 std::span<const ElementId> embed) {
  ensure(embed.size() == L.size() && alpha.size() == L.size(), "embedding size mismatch");
  std::vector<CoverPair> pairs;
  for (const auto& block : alpha.partition().blocks())
    for (std::size_t i = 1; i < block.size(); ++i) pairs.emplace_back(embed[block.front()], embed[block[i]]);
  Congruence bar = congruence_generated(K, pairs);
  const bool ext = restrict_to(K, bar.partition(), embed) == alpha.partition();
  return {std::move(bar), ext};
}

// --- Ji order -----------------------------------------------------------------

std::optional<std::size_t> JiOrder::find(const Congruence& c) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].congruence == c) return i;
  return std::nullopt;
}

std::vector<std::size_t> JiOrder::upper_covers(std::size_t i) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == i || !leq[i][j]) continue;
    bool direct = true;
    for (std::size_t k = 0; k < nodes.size() && direct; ++k)
      if (k != i && k != j && leq[i][k] && leq[k][j]) direct = false;
    if (direct) out.push_back(j);
  }
  return out;
}

JiOrder ji_congruences(const Lattice& L) {
  JiOrder order;
  std::map<Partition, std::size_t> index;
  for (const auto& p : L.prime_intervals()) {
    Congruence c = principal_congruence(L, p);
    if (index.count(c.partition())) continue;
    index.emplace(c.partition(), order.nodes.size());
    order.nodes.push_back({std::move(c), p});
  }
  const std::size_t k = order.nodes.size();
  order.leq.assign(k, std::vector<char>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) order.leq[i][j] = order.nodes[i].congruence <= order.nodes[j].congruence;
  return order;
}

std::vector<Congruence> all_congruences(const Lattice& L, std::size_t max_nodes) {
  return all_congruences(L, ji_congruences(L), max_nodes);
}

std::vector<Congruence> all_congruences(const Lattice& L, const JiOrder& ji, std::size_t max_nodes) {
  if (ji.size() > max_nodes)
    throw Error(ErrorCode::TooLarge, std::to_string(ji.size()) + " join-irreducible congruences exceed the bound " +
                                         std::to_string(max_nodes));
  std::set<Partition> seen{Partition::identity(L.size())};
  std::vector<Congruence> out{identity_congruence(L)};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& node : ji.nodes) {
      if (node.congruence <= out[i]) continue;
      Congruence next = congruence_join(L, out[i], node.congruence);
      if (seen.insert(next.partition()).second) out.push_back(std::move(next));
    }
  }
  return out;
}

}  // namespace sps
