#pragma once

// Text format for (F, G) pairs:
//
//   # comment
//   [F]
//   2 3 1
//   3 1 2
//   [G]
//
// One permutation per line in one-line notation. A missing section is empty.
// Blank lines and text after '#' are ignored. Output is canonical: sections
// in shortlex order.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "popstack/avoidance.hpp"

namespace popstack {

/// Throws InvalidInput with a line number on malformed input.
AvoidancePair parse_pair(std::string_view text);
AvoidancePair read_pair_file(const std::filesystem::path& path);

/// `comments` are written first, each prefixed with "# ".
std::string format_pair(const AvoidancePair& pair, const std::vector<std::string>& comments = {});
void write_pair_file(const std::filesystem::path& path, const AvoidancePair& pair,
                     const std::vector<std::string>& comments = {});

}  // namespace popstack
