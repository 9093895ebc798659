#pragma once

// Brute-force reference implementations. They share nothing with the
// library beyond the Permutation container.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "popstack/permutation.hpp"

namespace popstack::oracle {

inline std::vector<Entry> values_at(const Permutation& host, std::uint32_t mask) {
    std::vector<Entry> out;
    for (std::size_t i = 0; i < host.size(); ++i) {
        if (mask & (1u << i)) out.push_back(host[i]);
    }
    return out;
}

inline std::vector<std::size_t> positions(std::uint32_t mask) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < 32; ++i) {
        if (mask & (1u << i)) out.push_back(i);
    }
    return out;
}

/// Pairwise comparison of relative order.
inline bool same_shape(const std::vector<Entry>& a, const Permutation& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) {
            if ((a[i] < a[j]) != (b[i] < b[j])) return false;
        }
    }
    return true;
}

/// Entry i becomes 1 + the number of entries smaller than it.
inline std::vector<Entry> rank_form(const std::vector<Entry>& s) {
    std::vector<Entry> out;
    for (Entry x : s) {
        out.push_back(1 + static_cast<Entry>(std::count_if(s.begin(), s.end(), [x](Entry y) { return y < x; })));
    }
    return out;
}

/// All occurrences, by trying every subset, in lexicographic order of
/// index sets.
inline std::vector<std::vector<std::size_t>> occurrences(const Permutation& pattern, const Permutation& host) {
    std::vector<std::vector<std::size_t>> out;
    for (std::uint32_t mask = 0; mask < (1u << host.size()); ++mask) {
        if (static_cast<std::size_t>(__builtin_popcount(mask)) != pattern.size()) continue;
        if (same_shape(values_at(host, mask), pattern)) out.push_back(positions(mask));
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool contains(const Permutation& pattern, const Permutation& host) {
    return !oracle::occurrences(pattern, host).empty();
}

/// Straight from the definition: some subset shaped like a forbidden
/// pattern has no superset shaped like a saving pattern.
inline bool two_contains(const Permutation& host, const std::vector<Permutation>& forbidden,
                         const std::vector<Permutation>& saving) {
    const std::uint32_t full = (1u << host.size()) - 1u;
    auto shaped_like_any = [&](std::uint32_t mask, const std::vector<Permutation>& set) {
        const auto vals = values_at(host, mask);
        return std::any_of(set.begin(), set.end(), [&](const Permutation& q) { return same_shape(vals, q); });
    };
    for (std::uint32_t gamma = 0; gamma <= full; ++gamma) {
        if (!shaped_like_any(gamma, forbidden)) continue;
        bool saved = false;
        for (std::uint32_t delta = gamma;; delta = (delta + 1) | gamma) {
            if (shaped_like_any(delta, saving)) {
                saved = true;
                break;
            }
            if (delta == full) break;
        }
        if (!saved) return true;
    }
    return false;
}

/// The deterministic pop stack as a machine: push unless the top of the
/// stack is larger than the next input; otherwise, or at the end, pop the
/// whole stack.
inline Permutation machine_pass(const Permutation& p) {
    std::vector<Entry> stack;
    std::vector<Entry> output;
    for (Entry next : p) {
        if (!stack.empty() && stack.back() < next) {
            while (!stack.empty()) {
                output.push_back(stack.back());
                stack.pop_back();
            }
        }
        stack.push_back(next);
    }
    while (!stack.empty()) {
        output.push_back(stack.back());
        stack.pop_back();
    }
    return Permutation(output);
}

inline bool machine_sortable(Permutation p, std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) p = machine_pass(p);
    return std::is_sorted(p.begin(), p.end());
}

inline std::uint64_t count_inversions(const Permutation& p) {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j] ? 1 : 0;
    }
    return c;
}

/// Every reduced permutation of each length 1..n_max.
inline std::vector<Permutation> all_up_to(std::size_t n_max) {
    std::vector<Permutation> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::vector<Entry> v(n);
        for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Entry>(i + 1);
        do {
            out.emplace_back(v);
        } while (std::next_permutation(v.begin(), v.end()));
    }
    return out;
}

}  // namespace popstack::oracle
