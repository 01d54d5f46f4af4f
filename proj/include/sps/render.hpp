#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sps/congruence.hpp"
#include "sps/lattice.hpp"

namespace sps {

enum class RenderFormat { dot, tikz };

/// "dot" or "tikz"; UnknownName otherwise.
RenderFormat parse_render_format(std::string_view text);

/// Drawing position: y is the height, x orders each level left to right
/// following the stored cover lists, centred on 0.
struct Placement {
  std::vector<double> x;
  std::vector<double> y;
};

Placement place(const Lattice& L);

/// Hasse diagram. With `blocks`, every block is a group with its own colour
/// and edges inside a block are drawn bold.
std::string render(const Lattice& L, RenderFormat format, const std::optional<Partition>& blocks = std::nullopt);

}  // namespace sps
