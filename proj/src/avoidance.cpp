#include "popstack/avoidance.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

namespace popstack {

PatternSet make_pattern_set(std::vector<Permutation> patterns) {
    for (const auto& p : patterns) {
        if (!p.is_reduced()) {
            throw InvalidInput("pattern " + p.to_string() + " is not in reduced form");
        }
    }
    std::sort(patterns.begin(), patterns.end(), ShortLex{});
    patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
    return patterns;
}

bool avoids_all(const Permutation& p, const PatternSet& patterns) {
    return std::none_of(patterns.begin(), patterns.end(),
                        [&](const Permutation& f) { return contains(f, p); });
}

BarredPattern::BarredPattern(Permutation e, std::vector<bool> bars)
    : entries(std::move(e)), barred(std::move(bars)) {
    if (barred.size() != entries.size()) {
        throw InvalidInput("one bar flag per entry is required");
    }
}

BarredPattern BarredPattern::parse(std::string_view text) {
    // Tokens are integers optionally followed by '!'. Without whitespace,
    // every digit is its own entry ("46!31!572").
    const bool spaced = std::any_of(text.begin(), text.end(),
                                    [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    std::vector<Entry> values;
    std::vector<bool> bars;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_space();
    while (i < text.size()) {
        std::size_t start = i;
        if (spaced) {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '!') ++i;
        } else {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
                throw InvalidInput("malformed barred pattern '" + std::string(text) + "'");
            }
            ++i;
        }
        const auto token = text.substr(start, i - start);
        if (token.empty()) throw InvalidInput("malformed barred pattern '" + std::string(text) + "'");
        Entry value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            throw InvalidInput("not an integer: '" + std::string(token) + "'");
        }
        values.push_back(value);
        bool bar = false;
        if (i < text.size() && text[i] == '!') {
            bar = true;
            ++i;
        }
        bars.push_back(bar);
        if (spaced && i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
            throw InvalidInput("malformed barred pattern '" + std::string(text) + "'");
        }
        skip_space();
    }
    return BarredPattern(Permutation(std::move(values)), std::move(bars));
}

Permutation BarredPattern::removebar() const {
    std::vector<Entry> kept;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (!barred[i]) kept.push_back(entries[i]);
    }
    return Permutation(std::move(kept));
}

std::string BarredPattern::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        if (i != 0) out += ' ';
        out += std::to_string(entries[i]);
        if (barred[i]) out += '!';
    }
    return out;
}

bool barred_avoids(const Permutation& p, const BarredPattern& b) {
    const Permutation core = reduce(b.removebar());
    if (core.empty()) return true;
    const Permutation full = reduce(b.unbar());
    return for_each_occurrence(core, p, [&](std::span<const std::size_t> occ) {
        return first_occurrence(full, p, occ).has_value();
    });
}

struct PairMatcher::Impl {
    AvoidancePair pair;
    MatchStrategy strategy;
    bool memoize;

    // Subset-route lookup tables. Patterns longer than kMaxMaskLength cannot
    // occur in a host that fits a mask, so they are simply left out.
    std::unordered_set<PatternKey, PatternKeyHash> forbidden_keys;
    std::unordered_set<PatternKey, PatternKeyHash> saving_keys;
    std::uint32_t forbidden_lengths = 0;  // bit L set if some pattern has length L
    std::uint32_t saving_lengths = 0;

    mutable std::shared_mutex cache_mutex;
    mutable std::unordered_map<PatternKey, bool, PatternKeyHash> cache;

    Impl(AvoidancePair p, MatchStrategy s, bool m) : pair(std::move(p)), strategy(s), memoize(m) {
        for (const auto& f : pair.forbidden) {
            if (f.size() <= kMaxMaskLength) {
                forbidden_keys.insert(key_of(f));
                forbidden_lengths |= 1u << f.size();
            }
        }
        for (const auto& g : pair.saving) {
            if (g.size() <= kMaxMaskLength) {
                saving_keys.insert(key_of(g));
                saving_lengths |= 1u << g.size();
            }
        }
    }

    bool use_subsets(const Permutation& p) const {
        if (p.size() > kMaxMaskLength) return false;
        switch (strategy) {
        case MatchStrategy::Backtracking: return false;
        case MatchStrategy::Subsets: return true;
        case MatchStrategy::Automatic: break;
        }
        const std::size_t patterns = pair.forbidden.size() + pair.saving.size();
        return (std::size_t{1} << p.size()) <= 64 * patterns;
    }

    bool saved_by_search(const Permutation& p, std::span<const std::size_t> gamma) const {
        for (const auto& g : pair.saving) {
            if (g.size() < gamma.size()) continue;
            if (first_occurrence(g, p, gamma)) return true;
        }
        return false;
    }

    std::optional<TwoContainmentWitness> contains_by_search(const Permutation& p) const {
        std::optional<TwoContainmentWitness> witness;
        for (const auto& f : pair.forbidden) {
            for_each_occurrence(f, p, [&](std::span<const std::size_t> gamma) {
                if (saved_by_search(p, gamma)) return true;
                witness = TwoContainmentWitness{Occurrence{{gamma.begin(), gamma.end()}}, f};
                return false;
            });
            if (witness) return witness;
        }
        return witness;
    }

    // Enumerates all index subsets of p. Forbidden subsets are tested for a
    // saving superset with a superset-closure pass over the saving subsets.
    std::optional<TwoContainmentWitness> contains_by_subsets(const Permutation& p, bool any) const {
        const SubsetReducer reducer(p);
        const std::uint32_t count = reducer.full_mask() + 1u;

        std::vector<std::uint32_t> hits;
        for (std::uint32_t mask = 0; mask < count; ++mask) {
            if (((forbidden_lengths >> std::popcount(mask)) & 1u) == 0) continue;
            if (forbidden_keys.contains(reducer.key(mask))) hits.push_back(mask);
        }
        if (hits.empty()) return std::nullopt;

        std::vector<std::uint8_t> saved;
        if (!saving_keys.empty()) {
            saved.assign(count, 0);
            for (std::uint32_t mask = 0; mask < count; ++mask) {
                if (((saving_lengths >> std::popcount(mask)) & 1u) == 0) continue;
                if (saving_keys.contains(reducer.key(mask))) saved[mask] = 1;
            }
            for (std::size_t bit = 0; bit < reducer.size(); ++bit) {
                const std::uint32_t b = 1u << bit;
                for (std::uint32_t mask = 0; mask < count; ++mask) {
                    if ((mask & b) == 0) saved[mask] |= saved[mask | b];
                }
            }
        }

        std::optional<TwoContainmentWitness> best;
        for (auto mask : hits) {
            if (!saved.empty() && saved[mask]) continue;
            TwoContainmentWitness candidate{Occurrence{mask_indices(mask)},
                                            permutation_of(reducer.key(mask))};
            if (any) return candidate;
            if (!best || ShortLex{}(candidate.matched_pattern, best->matched_pattern) ||
                (candidate.matched_pattern == best->matched_pattern && candidate.gamma < best->gamma)) {
                best = std::move(candidate);
            }
        }
        return best;
    }

    std::optional<TwoContainmentWitness> find(const Permutation& p, bool any) const {
        return use_subsets(p) ? contains_by_subsets(p, any) : contains_by_search(p);
    }
};

PairMatcher::PairMatcher(AvoidancePair pair, MatchStrategy strategy, bool memoize)
    : impl_(std::make_unique<Impl>(std::move(pair), strategy, memoize)) {}

PairMatcher::~PairMatcher() = default;
PairMatcher::PairMatcher(PairMatcher&&) noexcept = default;
PairMatcher& PairMatcher::operator=(PairMatcher&&) noexcept = default;

const AvoidancePair& PairMatcher::pair() const noexcept { return impl_->pair; }

std::optional<TwoContainmentWitness> PairMatcher::two_contains(const Permutation& p) const {
    return impl_->find(p, false);
}

bool PairMatcher::two_avoids(const Permutation& p) const {
    if (!impl_->memoize || p.size() > kMaxMaskLength) return !impl_->find(p, true);

    const PatternKey key = key_of(reduce(p));
    {
        std::shared_lock lock(impl_->cache_mutex);
        if (auto it = impl_->cache.find(key); it != impl_->cache.end()) return it->second;
    }
    const bool result = !impl_->find(p, true);
    std::unique_lock lock(impl_->cache_mutex);
    impl_->cache.emplace(key, result);
    return result;
}

std::optional<TwoContainmentWitness> two_contains(const Permutation& p, const AvoidancePair& pair) {
    return PairMatcher(pair).two_contains(p);
}

bool two_avoids(const Permutation& p, const AvoidancePair& pair) {
    return !two_contains(p, pair).has_value();
}

}  // namespace popstack
