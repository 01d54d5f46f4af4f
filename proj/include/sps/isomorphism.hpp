#pragma once

#include <optional>
#include <vector>

#include "sps/lattice.hpp"

namespace sps {

/// Order isomorphism A → B as a map of element ids, if one exists. Candidates
/// are pruned by a level/degree invariant and refined by backtracking over
/// the cover graph. The planar embedding is ignored.
std::optional<std::vector<ElementId>> find_isomorphism(const Lattice& A, const Lattice& B);

inline bool are_isomorphic(const Lattice& A, const Lattice& B) {
  return find_isomorphism(A, B).has_value();
}

}  // namespace sps
