#include "popstack/pattern_key.hpp"

#include <string>

namespace popstack {

PatternKey key_of(const Permutation& p) {
    if (p.size() > kMaxMaskLength) {
        throw InvalidInput("pattern longer than " + std::to_string(kMaxMaskLength));
    }
    if (!p.is_reduced()) throw InvalidInput("pattern key requires a reduced permutation");
    PatternKey k;
    for (std::size_t i = 0; i < p.size(); ++i) {
        k.code |= static_cast<std::uint64_t>(p[i] - 1) << (4 * i);
    }
    k.length = static_cast<std::uint8_t>(p.size());
    return k;
}

Permutation permutation_of(const PatternKey& key) {
    std::vector<Entry> entries(key.length);
    for (std::size_t i = 0; i < key.length; ++i) {
        entries[i] = static_cast<Entry>((key.code >> (4 * i)) & 0xF) + 1;
    }
    return Permutation(std::move(entries));
}

SubsetReducer::SubsetReducer(const Permutation& host) : n_(host.size()) {
    if (n_ > kMaxMaskLength) {
        throw InvalidInput("host longer than " + std::to_string(kMaxMaskLength));
    }
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < n_; ++j) {
            if (host[j] < host[i]) below_[i] |= 1u << j;
        }
    }
}

std::vector<std::size_t> mask_indices(std::uint32_t mask) {
    std::vector<std::size_t> out;
    while (mask != 0) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

}  // namespace popstack
