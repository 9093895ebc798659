#pragma once

// Permutations in one-line notation, order-isomorphism and pattern
// containment.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace popstack {

using Entry = std::int32_t;

/// Thrown for malformed user input: duplicate entries, bad indices,
/// unparsable text.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A finite sequence of pairwise distinct integers.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<Entry> entries);
    Permutation(std::initializer_list<Entry> entries);

    /// Parses "4 1 3 5 2" or the compact single-digit form "41352".
    static Permutation parse(std::string_view text);

    /// The identity 1 2 ... n.
    static Permutation identity(std::size_t n);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    Entry operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Entry> entries() const noexcept { return entries_; }
    auto begin() const noexcept { return entries_.begin(); }
    auto end() const noexcept { return entries_.end(); }

    /// True when the entry set is exactly {1, ..., n}.
    bool is_reduced() const noexcept;
    /// Strictly increasing.
    bool is_sorted() const noexcept;

    /// Space separated one-line notation.
    std::string to_string() const;
    /// Digits run together when every entry is a single digit, otherwise
    /// the same as to_string().
    std::string to_compact_string() const;

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation&, const Permutation&) = default;

private:
    std::vector<Entry> entries_;
};

/// Canonical ordering for pattern sets: shorter first, then lexicographic.
struct ShortLex {
    bool operator()(const Permutation& a, const Permutation& b) const noexcept {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

/// An occurrence of a pattern: strictly increasing 0-based positions into a
/// host permutation.
struct Occurrence {
    std::vector<std::size_t> indices;

    friend bool operator==(const Occurrence&, const Occurrence&) = default;
    friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

/// Replaces the i-th smallest entry by i. Throws InvalidInput on duplicates.
Permutation reduce(std::span<const Entry> seq);
inline Permutation reduce(const Permutation& p) { return reduce(p.entries()); }

bool is_order_isomorphic(const Permutation& a, const Permutation& b);

/// Callback for occurrence enumeration; return false to stop.
using OccurrenceVisitor = std::function<bool(std::span<const std::size_t>)>;

/// Visits every occurrence of `pattern` in `host` in lexicographic order of
/// index sets. When `required` is non-empty (sorted, distinct), only
/// occurrences whose index set includes all of `required` are visited.
/// Returns false if the visitor stopped the search early.
bool for_each_occurrence(const Permutation& pattern, const Permutation& host,
                         const OccurrenceVisitor& visit,
                         std::span<const std::size_t> required = {});

std::vector<Occurrence> occurrences(const Permutation& pattern, const Permutation& host,
                                    std::span<const std::size_t> required = {});

std::optional<Occurrence> first_occurrence(const Permutation& pattern, const Permutation& host,
                                           std::span<const std::size_t> required = {});

bool contains(const Permutation& pattern, const Permutation& host);

/// Values of `host` at `indices`. Throws InvalidInput if an index is out of
/// range or the indices are not strictly increasing.
Permutation subpermutation_at(const Permutation& host, std::span<const std::size_t> indices);
inline Permutation subpermutation_at(const Permutation& host, const Occurrence& occ) {
    return subpermutation_at(host, occ.indices);
}

std::uint64_t inversions(const Permutation& p);

/// All reduced permutations of length n in lexicographic order.
std::vector<Permutation> all_permutations(std::size_t n);

}  // namespace popstack
