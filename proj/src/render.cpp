#include "sps/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace sps {

namespace {

const char* const kPalette[] = {"red", "blue", "green!60!black", "orange", "violet", "cyan", "brown", "magenta",
                                "olive", "teal", "gray", "pink"};
const char* const kDotPalette[] = {"red", "blue", "darkgreen", "orange", "violet", "cyan", "brown", "magenta",
                                   "olivedrab", "teal", "gray", "pink"};
constexpr std::size_t kColours = std::size(kPalette);

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

bool bold(const std::optional<Partition>& blocks, ElementId a, ElementId b) {
  return blocks && blocks->same_block(a, b);
}

std::string dot(const Lattice& L, const Placement& pos, const std::optional<Partition>& blocks) {
  std::ostringstream out;
  out << "digraph L {\n  rankdir=BT;\n  node [shape=circle, width=0.35, fixedsize=true, fontsize=10];\n"
      << "  edge [arrowhead=none];\n";
  for (ElementId x = 0; x < L.size(); ++x) {
    out << "  " << x << " [pos=\"" << fmt(pos.x[x]) << "," << fmt(pos.y[x]) << "!\"";
    if (blocks) {
      const auto b = blocks->block_of(x);
      out << ", class=\"block" << b << "\", style=filled, fillcolor=" << kDotPalette[b % kColours];
    }
    out << "];\n";
  }
  std::map<std::size_t, std::vector<ElementId>> levels;
  for (ElementId x = 0; x < L.size(); ++x) levels[L.height(x)].push_back(x);
  for (auto& [h, xs] : levels) {
    std::sort(xs.begin(), xs.end(), [&](ElementId a, ElementId b) { return pos.x[a] < pos.x[b]; });
    out << "  { rank=same;";
    for (ElementId x : xs) out << " " << x << ";";
    out << " }\n";
  }
  for (const auto& [a, b] : L.cover_pairs()) {
    out << "  " << a << " -> " << b;
    if (bold(blocks, a, b)) out << " [penwidth=3]";
    out << ";\n";
  }
  out << "}\n";
  return out.str();
}

std::string tikz(const Lattice& L, const Placement& pos, const std::optional<Partition>& blocks) {
  std::ostringstream out;
  out << "\\begin{tikzpicture}[every node/.style={circle, draw, inner sep=1.5pt}]\n";
  for (ElementId x = 0; x < L.size(); ++x) {
    out << "  \\node";
    if (blocks) out << "[fill=" << kPalette[blocks->block_of(x) % kColours] << "]";
    out << " (v" << x << ") at (" << fmt(pos.x[x]) << "," << fmt(pos.y[x]) << ") {};\n";
  }
  for (const auto& [a, b] : L.cover_pairs()) {
    out << "  \\draw";
    if (bold(blocks, a, b)) out << "[ultra thick]";
    out << " (v" << a << ") -- (v" << b << ");\n";
  }
  out << "\\end{tikzpicture}\n";
  return out.str();
}

}  // namespace

RenderFormat parse_render_format(std::string_view text) {
  if (text == "dot") return RenderFormat::dot;
  if (text == "tikz") return RenderFormat::tikz;
  throw Error(ErrorCode::UnknownName, "unknown format: " + std::string(text));
}

Placement place(const Lattice& L) {
  const std::size_t n = L.size();
  // Preorder from the top, lower covers left to right.
  std::vector<std::size_t> order(n, n);
  std::size_t next = 0;
  std::vector<ElementId> stack{L.top()};
  while (!stack.empty()) {
    const ElementId x = stack.back();
    stack.pop_back();
    if (order[x] != n) continue;
    order[x] = next++;
    const auto low = L.lower_covers(x);
    for (auto it = low.rbegin(); it != low.rend(); ++it)
      if (order[*it] == n) stack.push_back(*it);
  }
  std::map<std::size_t, std::vector<ElementId>> levels;
  for (ElementId x = 0; x < n; ++x) levels[L.height(x)].push_back(x);
  Placement p{std::vector<double>(n), std::vector<double>(n)};
  for (auto& [h, xs] : levels) {
    std::sort(xs.begin(), xs.end(), [&](ElementId a, ElementId b) { return order[a] < order[b]; });
    for (std::size_t i = 0; i < xs.size(); ++i) {
      p.x[xs[i]] = static_cast<double>(i) - static_cast<double>(xs.size() - 1) / 2.0;
      p.y[xs[i]] = static_cast<double>(h);
    }
  }
  return p;
}

std::string render(const Lattice& L, RenderFormat format, const std::optional<Partition>& blocks) {
  if (blocks && blocks->size() != L.size()) throw Error(ErrorCode::Parse, "render: partition size mismatch");
  const Placement pos = place(L);
  return format == RenderFormat::dot ? dot(L, pos, blocks) : tikz(L, pos, blocks);
}

}  // namespace sps
