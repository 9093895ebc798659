#pragma once

// The deterministic pop stack: block decomposition, passes, sortability.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "popstack/permutation.hpp"

namespace popstack {

/// Maximal descending factors B1 | B2 | ... | Bm. Inside a block entries
/// strictly decrease; the last entry of a block is smaller than the first
/// entry of the next.
struct BlockDecomposition {
    std::vector<std::vector<Entry>> blocks;

    std::size_t size() const noexcept { return blocks.size(); }
    /// Blocks joined by "|", e.g. "8763|4|521".
    std::string to_string() const;

    friend bool operator==(const BlockDecomposition&, const BlockDecomposition&) = default;
};

BlockDecomposition block_decompose(const Permutation& p);

/// One pass through the deterministic pop stack (each block reversed).
Permutation pop_pass(const Permutation& p);

/// k passes; stops early once sorted since further passes are the identity.
Permutation pop_pass_k(const Permutation& p, std::size_t k);

bool is_k_sortable(const Permutation& p, std::size_t k);

/// Smallest k with is_k_sortable(p, k).
std::size_t min_passes(const Permutation& p);

/// Positions (first, second) of entries a > b with a in block j and b in
/// block j + n - 1 for some span n >= 3^k. Such a pair certifies that p is
/// not k-pass sortable. Gaps are scanned smallest first, then by block.
std::optional<std::pair<std::size_t, std::size_t>> far_apart_witness(const Permutation& p,
                                                                      std::size_t k);

struct PassRecord {
    Permutation input;
    BlockDecomposition blocks;
    Permutation output;
};

struct SortTrace {
    std::vector<PassRecord> passes;

    const Permutation& final_permutation(const Permutation& start) const;
};

/// Passes until sorted, or until max_passes passes have been made.
SortTrace sort_trace(const Permutation& p,
                     std::optional<std::size_t> max_passes = std::nullopt);

/// One line per pass: "input | blocks | output".
std::string render_trace(const SortTrace& trace);

}  // namespace popstack
