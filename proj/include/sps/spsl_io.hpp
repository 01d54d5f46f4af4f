#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sps/lattice.hpp"

namespace sps {

/// SPSL v1 text format:
///
///   spsl 1
///   n <count>
///   cover <lower> <upper>          (one per edge)
///   up <elem> : <c1> <c2> ...      (upper covers left to right, only if ≥ 2)
///   down <elem> : <c1> <c2> ...    (lower covers left to right, only if ≥ 2)
///
/// '#' starts a comment. Syntax problems raise ErrorCode::Parse with the line
/// number; structural problems raise the corresponding Lattice::build error.
Lattice parse_spsl(std::string_view text);
std::string write_spsl(const Lattice& L);

Lattice read_spsl_file(const std::filesystem::path& path);
void write_spsl_file(const std::filesystem::path& path, const Lattice& L);

}  // namespace sps
