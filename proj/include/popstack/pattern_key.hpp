#pragma once

// Packed keys for short reduced permutations, and reduction of arbitrary
// index subsets of a host via bitmasks. This is the fast path used when a
// pattern set is too large to search pattern by pattern.

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "popstack/permutation.hpp"

namespace popstack {

/// Longest permutation that fits a PatternKey and a subset mask.
inline constexpr std::size_t kMaxMaskLength = 16;

/// A reduced permutation of length <= 16, four bits per entry.
struct PatternKey {
    std::uint64_t code = 0;
    std::uint8_t length = 0;

    friend bool operator==(const PatternKey&, const PatternKey&) = default;
};

struct PatternKeyHash {
    std::size_t operator()(const PatternKey& k) const noexcept {
        std::uint64_t h = k.code ^ (std::uint64_t{k.length} * 0x9E3779B97F4A7C15ULL);
        h ^= h >> 33;
        h *= 0xff51afd7ed558ccdULL;
        h ^= h >> 33;
        return static_cast<std::size_t>(h);
    }
};

/// Key of a reduced permutation. Throws InvalidInput if p is not reduced or
/// is longer than kMaxMaskLength.
PatternKey key_of(const Permutation& p);

Permutation permutation_of(const PatternKey& key);

/// Reduces the subsequence of a fixed host selected by a bitmask
/// (bit i = position i) in O(popcount).
class SubsetReducer {
public:
    /// Throws InvalidInput if host is longer than kMaxMaskLength.
    explicit SubsetReducer(const Permutation& host);

    std::size_t size() const noexcept { return n_; }
    std::uint32_t full_mask() const noexcept {
        return (1u << n_) - 1u;
    }

    PatternKey key(std::uint32_t mask) const noexcept {
        PatternKey k;
        const std::uint32_t selected = mask;
        unsigned slot = 0;
        while (mask != 0) {
            const int i = std::countr_zero(mask);
            mask &= mask - 1;
            // 0-based rank among the selected entries
            const auto rank = static_cast<std::uint64_t>(std::popcount(selected & below_[i]));
            k.code |= rank << (4 * slot);
            ++slot;
        }
        k.length = static_cast<std::uint8_t>(slot);
        return k;
    }

private:
    std::size_t n_ = 0;
    std::array<std::uint32_t, kMaxMaskLength> below_{};
};

/// Converts a bitmask to sorted positions.
std::vector<std::size_t> mask_indices(std::uint32_t mask);

}  // namespace popstack
