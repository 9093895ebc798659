#include "popstack/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <sstream>

namespace popstack {

namespace {

void require_distinct(std::span<const Entry> entries) {
    std::vector<Entry> sorted(entries.begin(), entries.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw InvalidInput("permutation entries must be pairwise distinct");
    }
}

Entry parse_entry(std::string_view token) {
    Entry value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    if (!token.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last) {
        throw InvalidInput("not an integer: '" + std::string(token) + "'");
    }
    return value;
}

}  // namespace

Permutation::Permutation(std::vector<Entry> entries) : entries_(std::move(entries)) {
    require_distinct(entries_);
}

Permutation::Permutation(std::initializer_list<Entry> entries)
    : Permutation(std::vector<Entry>(entries)) {}

Permutation Permutation::parse(std::string_view text) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        const std::size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.push_back(text.substr(start, i - start));
    }

    std::vector<Entry> entries;
    const bool compact = tokens.size() == 1 && tokens[0].size() > 1 &&
                         std::all_of(tokens[0].begin(), tokens[0].end(),
                                     [](char c) { return c >= '0' && c <= '9'; });
    if (compact) {
        for (char c : tokens[0]) entries.push_back(c - '0');
    } else {
        entries.reserve(tokens.size());
        for (auto token : tokens) entries.push_back(parse_entry(token));
    }
    return Permutation(std::move(entries));
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<Entry> entries(n);
    std::iota(entries.begin(), entries.end(), Entry{1});
    return Permutation(std::move(entries));
}

bool Permutation::is_reduced() const noexcept {
    const auto n = static_cast<Entry>(entries_.size());
    // distinct entries, so the range check is enough
    return std::all_of(entries_.begin(), entries_.end(),
                       [n](Entry e) { return e >= 1 && e <= n; });
}

bool Permutation::is_sorted() const noexcept {
    return std::is_sorted(entries_.begin(), entries_.end());
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i != 0) out << ' ';
        out << entries_[i];
    }
    return out.str();
}

std::string Permutation::to_compact_string() const {
    const bool digits =
        std::all_of(entries_.begin(), entries_.end(), [](Entry e) { return e >= 0 && e <= 9; });
    if (!digits) return to_string();
    std::string out;
    out.reserve(entries_.size());
    for (Entry e : entries_) out.push_back(static_cast<char>('0' + e));
    return out;
}

Permutation reduce(std::span<const Entry> seq) {
    std::vector<std::size_t> order(seq.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seq[a] < seq[b]; });
    std::vector<Entry> out(seq.size());
    for (std::size_t rank = 0; rank < order.size(); ++rank) {
        if (rank > 0 && seq[order[rank]] == seq[order[rank - 1]]) {
            throw InvalidInput("cannot reduce a sequence with repeated entries");
        }
        out[order[rank]] = static_cast<Entry>(rank + 1);
    }
    return Permutation(std::move(out));
}

bool is_order_isomorphic(const Permutation& a, const Permutation& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            if ((a[i] < a[j]) != (b[i] < b[j])) return false;
        }
    }
    return true;
}

namespace {

constexpr std::ptrdiff_t kNone = -1;

// Backtracking over host positions. For each pattern slot we keep the
// earlier slots holding the nearest smaller and nearest larger pattern
// values; a candidate host value must fall strictly between the host values
// chosen for those slots. That is sufficient for order-isomorphism by
// induction on the slot.
class OccurrenceSearch {
public:
    OccurrenceSearch(const Permutation& pattern, const Permutation& host,
                     std::span<const std::size_t> required, const OccurrenceVisitor& visit)
        : pattern_(pattern), host_(host), required_(required), visit_(visit),
          lower_(pattern.size(), kNone), upper_(pattern.size(), kNone), chosen_(pattern.size()) {
        for (std::size_t j = 0; j < pattern.size(); ++j) {
            for (std::size_t t = 0; t < j; ++t) {
                if (pattern[t] < pattern[j]) {
                    if (lower_[j] == kNone || pattern[t] > pattern[static_cast<std::size_t>(lower_[j])]) {
                        lower_[j] = static_cast<std::ptrdiff_t>(t);
                    }
                } else if (upper_[j] == kNone ||
                           pattern[t] < pattern[static_cast<std::size_t>(upper_[j])]) {
                    upper_[j] = static_cast<std::ptrdiff_t>(t);
                }
            }
        }
    }

    bool run() { return step(0, 0, 0); }

private:
    bool step(std::size_t slot, std::size_t start, std::size_t next_required) {
        const std::size_t m = pattern_.size();
        const std::size_t n = host_.size();
        if (slot == m) {
            if (next_required != required_.size()) return true;
            return visit_(std::span<const std::size_t>(chosen_));
        }
        const std::size_t remaining = m - slot;
        if (required_.size() - next_required > remaining) return true;
        if (n < remaining || start > n - remaining) return true;
        std::size_t limit = n - remaining;
        if (next_required < required_.size()) limit = std::min(limit, required_[next_required]);

        for (std::size_t pos = start; pos <= limit; ++pos) {
            const Entry v = host_[pos];
            if (lower_[slot] != kNone && v < host_[chosen_[static_cast<std::size_t>(lower_[slot])]]) continue;
            if (upper_[slot] != kNone && v > host_[chosen_[static_cast<std::size_t>(upper_[slot])]]) continue;
            chosen_[slot] = pos;
            const bool hit = next_required < required_.size() && pos == required_[next_required];
            if (!step(slot + 1, pos + 1, next_required + (hit ? 1 : 0))) return false;
        }
        return true;
    }

    const Permutation& pattern_;
    const Permutation& host_;
    std::span<const std::size_t> required_;
    const OccurrenceVisitor& visit_;
    std::vector<std::ptrdiff_t> lower_;
    std::vector<std::ptrdiff_t> upper_;
    std::vector<std::size_t> chosen_;
};

void check_indices(std::span<const std::size_t> indices, std::size_t host_size) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= host_size) {
            throw InvalidInput("index " + std::to_string(indices[i] + 1) + " is out of range");
        }
        if (i > 0 && indices[i] <= indices[i - 1]) {
            throw InvalidInput("indices must be strictly increasing");
        }
    }
}

}  // namespace

bool for_each_occurrence(const Permutation& pattern, const Permutation& host,
                         const OccurrenceVisitor& visit, std::span<const std::size_t> required) {
    check_indices(required, host.size());
    if (pattern.size() > host.size()) return true;
    OccurrenceSearch search(pattern, host, required, visit);
    return search.run();
}

std::vector<Occurrence> occurrences(const Permutation& pattern, const Permutation& host,
                                    std::span<const std::size_t> required) {
    std::vector<Occurrence> out;
    for_each_occurrence(
        pattern, host,
        [&](std::span<const std::size_t> idx) {
            out.push_back(Occurrence{{idx.begin(), idx.end()}});
            return true;
        },
        required);
    return out;
}

std::optional<Occurrence> first_occurrence(const Permutation& pattern, const Permutation& host,
                                           std::span<const std::size_t> required) {
    std::optional<Occurrence> found;
    for_each_occurrence(
        pattern, host,
        [&](std::span<const std::size_t> idx) {
            found = Occurrence{{idx.begin(), idx.end()}};
            return false;
        },
        required);
    return found;
}

bool contains(const Permutation& pattern, const Permutation& host) {
    return first_occurrence(pattern, host).has_value();
}

Permutation subpermutation_at(const Permutation& host, std::span<const std::size_t> indices) {
    check_indices(indices, host.size());
    std::vector<Entry> values;
    values.reserve(indices.size());
    for (auto i : indices) values.push_back(host[i]);
    return Permutation(std::move(values));
}

std::uint64_t inversions(const Permutation& p) {
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (std::size_t j = i + 1; j < p.size(); ++j) {
            if (p[i] > p[j]) ++count;
        }
    }
    return count;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    std::vector<Permutation> out;
    std::vector<Entry> current(n);
    std::iota(current.begin(), current.end(), Entry{1});
    do {
        out.emplace_back(current);
    } while (std::next_permutation(current.begin(), current.end()));
    return out;
}

}  // namespace popstack
