#pragma once

// Classical avoidance, barred-pattern avoidance, and 2-avoidance of a pair
// (F, G) of forbidden and saving patterns.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "popstack/pattern_key.hpp"
#include "popstack/permutation.hpp"

namespace popstack {

/// Sorted (shortlex), deduplicated reduced permutations.
using PatternSet = std::vector<Permutation>;

/// Sorts and deduplicates. Throws InvalidInput if a member is not reduced.
PatternSet make_pattern_set(std::vector<Permutation> patterns);

/// (F, G): forbidden patterns and the patterns that can save them.
struct AvoidancePair {
    PatternSet forbidden;
    PatternSet saving;

    AvoidancePair() = default;
    AvoidancePair(std::vector<Permutation> f, std::vector<Permutation> g)
        : forbidden(make_pattern_set(std::move(f))), saving(make_pattern_set(std::move(g))) {}

    friend bool operator==(const AvoidancePair&, const AvoidancePair&) = default;
};

/// True iff p contains no member of patterns.
bool avoids_all(const Permutation& p, const PatternSet& patterns);

/// A pattern with some entries marked. Text form: "4 6! 3 1! 5 7 2".
struct BarredPattern {
    Permutation entries;
    std::vector<bool> barred;

    BarredPattern(Permutation e, std::vector<bool> bars);
    static BarredPattern parse(std::string_view text);

    /// Unbarred entries only (not reduced).
    Permutation removebar() const;
    /// All entries, flags dropped.
    Permutation unbar() const { return entries; }
    std::string to_string() const;
};

/// Every occurrence of removebar(b) in p is contained (as an index set) in
/// an occurrence of unbar(b). Vacuously true when there is no such
/// occurrence, and when every entry is barred.
bool barred_avoids(const Permutation& p, const BarredPattern& b);

/// An occurrence of a forbidden pattern that no saving pattern extends.
struct TwoContainmentWitness {
    Occurrence gamma;
    Permutation matched_pattern;

    friend bool operator==(const TwoContainmentWitness&, const TwoContainmentWitness&) = default;
};

enum class MatchStrategy {
    /// Subsets when the host is short relative to the pattern count.
    Automatic,
    /// Occurrence search pattern by pattern.
    Backtracking,
    /// Reduce every index subset of the host and look it up. Hosts of length
    /// up to kMaxMaskLength only.
    Subsets,
};

/// Prepared 2-avoidance queries for a fixed pair. Thread-safe.
class PairMatcher {
public:
    explicit PairMatcher(AvoidancePair pair, MatchStrategy strategy = MatchStrategy::Automatic,
                         bool memoize = false);
    ~PairMatcher();
    PairMatcher(PairMatcher&&) noexcept;
    PairMatcher& operator=(PairMatcher&&) noexcept;

    const AvoidancePair& pair() const noexcept;

    /// The witness with the shortlex-least pattern, then the lexicographically
    /// least index set; nothing iff p 2-avoids the pair.
    std::optional<TwoContainmentWitness> two_contains(const Permutation& p) const;
    bool two_avoids(const Permutation& p) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::optional<TwoContainmentWitness> two_contains(const Permutation& p, const AvoidancePair& pair);
bool two_avoids(const Permutation& p, const AvoidancePair& pair);

}  // namespace popstack
