#include "popstack/characterize.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <unordered_set>

#include "popstack/pattern_key.hpp"
#include "popstack/popstack.hpp"

namespace popstack {

namespace {

using KeySet = std::unordered_set<PatternKey, PatternKeyHash>;

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw ArithmeticOverflow(std::string(what) + " does not fit in 64 bits");
    }
    return out;
}

KeySet keys_of(const PatternSet& set) {
    KeySet keys;
    keys.reserve(set.size());
    for (const auto& p : set) keys.insert(key_of(p));
    return keys;
}

std::uint32_t length_mask(const PatternSet& set) {
    std::uint32_t mask = 0;
    for (const auto& p : set) {
        if (p.size() <= kMaxMaskLength) mask |= 1u << p.size();
    }
    return mask;
}

// All distinct reduced patterns contained in p, p itself included.
KeySet subpattern_keys(const Permutation& p) {
    const SubsetReducer reducer(p);
    KeySet keys;
    for (std::uint32_t mask = 0; mask <= reducer.full_mask(); ++mask) keys.insert(reducer.key(mask));
    return keys;
}

bool contains_any(const Permutation& host, const KeySet& patterns, std::uint32_t lengths) {
    const SubsetReducer reducer(host);
    for (std::uint32_t mask = 0; mask <= reducer.full_mask(); ++mask) {
        if (((lengths >> std::popcount(mask)) & 1u) == 0) continue;
        if (patterns.contains(reducer.key(mask))) return true;
    }
    return false;
}

PatternSet collect_up_to(std::size_t cap, const EnumerationLimits& limits,
                         const std::function<bool(const Permutation&)>& pred) {
    std::vector<Permutation> out;
    for (std::size_t n = 1; n <= cap; ++n) {
        auto part = collect_permutations(n, limits.worker_count(), pred);
        out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    // already shortlex ordered
    return out;
}

}  // namespace

Bounds bounds(const PatternSet& prior_forbidden, std::size_t k) {
    if (prior_forbidden.empty()) throw InvalidInput("the previous forbidden set must be non-empty");
    Bounds b;
    for (const auto& p : prior_forbidden) b.f_max = std::max<std::uint64_t>(b.f_max, p.size());
    b.omega1_len = checked_mul(3, b.f_max, "3 * f_max");
    std::uint64_t power = 1;
    for (std::size_t i = 0; i < k + 2; ++i) power = checked_mul(power, 3, "3^(k+2)");
    b.c = checked_mul(power, b.f_max, "3^(k+2) * f_max");
    return b;
}

AvoidancePair one_pass_pair() {
    return AvoidancePair({Permutation{2, 3, 1}, Permutation{3, 1, 2}}, {});
}

AvoidancePair two_pass_pair() {
    return AvoidancePair(
        {Permutation{2, 3, 4, 1}, Permutation{3, 4, 1, 2}, Permutation{3, 4, 2, 1},
         Permutation{4, 1, 2, 3}, Permutation{4, 2, 3, 1}, Permutation{4, 3, 1, 2},
         Permutation{3, 2, 4, 1}, Permutation{4, 1, 3, 2}},
        {Permutation{4, 1, 3, 5, 2}});
}

PatternSet construct_omega1(std::size_t k, std::size_t cap, const EnumerationLimits& limits) {
    if (cap == 0) throw InvalidInput("Omega1 cap must be positive");
    limits.require(cap, "Omega1");
    return collect_up_to(cap, limits, [k](const Permutation& p) { return !is_k_sortable(p, k); });
}

PatternSet construct_omega2(std::size_t k, const PatternSet& omega1, std::size_t cap,
                            const EnumerationLimits& limits) {
    if (omega1.empty()) throw InvalidInput("Omega1 must be non-empty");
    if (cap == 0) throw InvalidInput("Omega2 cap must be positive");
    limits.require(cap, "Omega2");
    const KeySet keys = keys_of(omega1);
    const std::uint32_t lengths = length_mask(omega1);
    return collect_up_to(cap, limits, [&](const Permutation& p) {
        return is_k_sortable(p, k) && contains_any(p, keys, lengths);
    });
}

Construction construct(const ConstructionConfig& config, const EnumerationLimits& limits) {
    if (config.k == 0) throw InvalidInput("k must be at least 1");
    Construction out;
    out.bounds = bounds(config.prior_pair.forbidden, config.k);
    out.omega1_cap = config.omega1_cap.value_or(static_cast<std::size_t>(out.bounds.omega1_len));
    out.omega2_cap = config.omega2_cap.value_or(
        static_cast<std::size_t>(std::min<std::uint64_t>(out.bounds.c, SIZE_MAX)));
    if (out.omega1_cap == 0 || out.omega2_cap == 0) throw InvalidInput("caps must be positive");
    if (out.omega1_cap > out.bounds.omega1_len) {
        throw InvalidInput("Omega1 cap " + std::to_string(out.omega1_cap) + " exceeds 3 * f_max = " +
                           std::to_string(out.bounds.omega1_len));
    }
    if (out.omega2_cap > out.bounds.c) {
        throw InvalidInput("Omega2 cap " + std::to_string(out.omega2_cap) + " exceeds C = " +
                           std::to_string(out.bounds.c));
    }
    limits.require(out.omega1_cap, "Omega1");
    limits.require(out.omega2_cap, "Omega2");

    PatternSet omega1 = construct_omega1(config.k, out.omega1_cap, limits);
    PatternSet omega2;
    if (!omega1.empty()) omega2 = construct_omega2(config.k, omega1, out.omega2_cap, limits);
    out.pair.forbidden = std::move(omega1);
    out.pair.saving = std::move(omega2);
    return out;
}

AvoidancePair reduce_lemma_A(const AvoidancePair& pair) {
    const KeySet forbidden = keys_of(pair.forbidden);
    const std::uint32_t lengths = length_mask(pair.forbidden);
    AvoidancePair out;
    out.forbidden = pair.forbidden;
    for (const auto& alpha : pair.saving) {
        if (contains_any(alpha, forbidden, lengths)) out.saving.push_back(alpha);
    }
    return out;
}

// A saving pattern beta contained in alpha always has the forbidden patterns
// of beta among those of alpha, so the inclusion test reduces to comparing
// counts. That test alone is not enough: in F = {12}, G = {213, 3124} the
// occurrence 12 at values 1, 2 of the host 3124 is saved only by 3124. So
// alpha must also 2-avoid (F, shorter saving patterns), which puts a shorter
// saving occurrence over every forbidden occurrence inside alpha. Savers are
// strictly shorter, so removing in one batch is safe by induction on length.
AvoidancePair reduce_lemma_B(const AvoidancePair& pair) {
    const KeySet forbidden = keys_of(pair.forbidden);
    std::vector<KeySet> subpatterns;
    std::vector<std::size_t> forbidden_count;
    subpatterns.reserve(pair.saving.size());
    for (const auto& alpha : pair.saving) {
        subpatterns.push_back(subpattern_keys(alpha));
        std::size_t count = 0;
        for (const auto& key : subpatterns.back()) count += forbidden.contains(key) ? 1 : 0;
        forbidden_count.push_back(count);
    }

    AvoidancePair out;
    out.forbidden = pair.forbidden;
    for (std::size_t a = 0; a < pair.saving.size(); ++a) {
        const Permutation& alpha = pair.saving[a];
        bool hypothesis = false;
        std::vector<Permutation> shorter;
        for (std::size_t b = 0; b < pair.saving.size(); ++b) {
            if (pair.saving[b].size() >= alpha.size()) continue;
            shorter.push_back(pair.saving[b]);
            hypothesis = hypothesis || (subpatterns[a].contains(key_of(pair.saving[b])) &&
                                        forbidden_count[b] == forbidden_count[a]);
        }
        const bool removable = hypothesis && PairMatcher(AvoidancePair(pair.forbidden, shorter)).two_avoids(alpha);
        if (!removable) out.saving.push_back(alpha);
    }
    return out;
}

// Batch removal is safe for the same reason as in lemma B: a removed kappa
// always has a shorter unsaved forbidden pattern below it that stays.
AvoidancePair reduce_lemma_C(const AvoidancePair& pair) {
    KeySet covered;
    for (const auto& alpha : pair.saving) {
        auto keys = subpattern_keys(alpha);
        covered.insert(keys.begin(), keys.end());
    }
    KeySet unsaved;
    std::uint32_t unsaved_lengths = 0;
    for (const auto& kappa : pair.forbidden) {
        const auto key = key_of(kappa);
        if (!covered.contains(key)) {
            unsaved.insert(key);
            unsaved_lengths |= 1u << kappa.size();
        }
    }

    AvoidancePair out;
    out.saving = pair.saving;
    for (const auto& lambda : pair.forbidden) {
        const SubsetReducer reducer(lambda);
        bool removable = false;
        // proper subsets only, so kappa != lambda
        for (std::uint32_t mask = 0; mask < reducer.full_mask() && !removable; ++mask) {
            if (((unsaved_lengths >> std::popcount(mask)) & 1u) == 0) continue;
            removable = unsaved.contains(reducer.key(mask));
        }
        if (!removable) out.forbidden.push_back(lambda);
    }
    return out;
}

AvoidancePair reduce_pair(const AvoidancePair& pair, const ReduceOptions& options) {
    AvoidancePair current = pair;
    for (;;) {
        AvoidancePair next = reduce_lemma_C(reduce_lemma_B(reduce_lemma_A(current)));
        if (next == current) break;
        current = std::move(next);
    }

    if (options.check_bound > 0) {
        options.limits.require(options.check_bound, "reduction check");
        const PairMatcher before(pair);
        const PairMatcher after(current);
        for (std::size_t n = 1; n <= options.check_bound; ++n) {
            const auto differing = count_permutations(n, options.limits.worker_count(), [&](const Permutation& p) {
                return before.two_avoids(p) != after.two_avoids(p);
            });
            if (differing != 0) {
                throw std::logic_error("reduction changed the 2-avoidance class at length " +
                                       std::to_string(n));
            }
        }
    }
    return current;
}

bool VerifyReport::ok() const noexcept { return mismatch_count() == 0; }

std::uint64_t VerifyReport::mismatch_count() const noexcept {
    std::uint64_t total = 0;
    for (const auto& row : rows) total += row.mismatches.size();
    return total;
}

std::string VerifyReport::to_csv() const {
    std::ostringstream out;
    out << "n,av2_count,sortable_count,mismatches\n";
    for (const auto& row : rows) {
        out << row.n << ',' << row.av2_count << ',' << row.sortable_count << ',' << row.mismatches.size()
            << '\n';
    }
    return out.str();
}

VerifyReport verify_pair(const AvoidancePair& pair, std::size_t k, std::size_t n_max,
                         const EnumerationLimits& limits) {
    limits.require(n_max, "verification");
    const PairMatcher matcher(pair);
    VerifyReport report;
    report.k = k;
    for (std::size_t n = 1; n <= n_max; ++n) {
        const std::size_t chunks = permutation_chunk_count(n);
        std::vector<VerifyRow> parts(chunks);
        run_chunks(chunks, limits.worker_count(), [&](std::size_t c) {
            for_each_permutation_in_chunk(n, c, [&](const Permutation& p) {
                const bool avoids = matcher.two_avoids(p);
                const bool sortable = is_k_sortable(p, k);
                parts[c].av2_count += avoids ? 1 : 0;
                parts[c].sortable_count += sortable ? 1 : 0;
                if (avoids != sortable) parts[c].mismatches.push_back(p);
            });
        });
        VerifyRow row;
        row.n = n;
        for (auto& part : parts) {
            row.av2_count += part.av2_count;
            row.sortable_count += part.sortable_count;
            row.mismatches.insert(row.mismatches.end(), part.mismatches.begin(), part.mismatches.end());
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

std::uint64_t count_sortable(std::size_t k, std::size_t n, const EnumerationLimits& limits) {
    limits.require(n, "counting");
    return count_permutations(n, limits.worker_count(),
                              [k](const Permutation& p) { return is_k_sortable(p, k); });
}

std::uint64_t count_av2(const AvoidancePair& pair, std::size_t n, const EnumerationLimits& limits) {
    limits.require(n, "counting");
    const PairMatcher matcher(pair);
    return count_permutations(n, limits.worker_count(),
                              [&](const Permutation& p) { return matcher.two_avoids(p); });
}

}  // namespace popstack
