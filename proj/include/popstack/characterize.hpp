#pragma once

// Construction and reduction of finite (F, G) pairs whose 2-avoidance class
// is the set of k-pass pop-stack sortable permutations, and exhaustive
// verification of candidate pairs.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "popstack/avoidance.hpp"
#include "popstack/enumerate.hpp"
#include "popstack/permutation.hpp"

namespace popstack {

class ArithmeticOverflow : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Length bounds for the forbidden and saving candidates at pass count k.
struct Bounds {
    std::uint64_t f_max = 0;       // longest pattern of the previous F
    std::uint64_t omega1_len = 0;  // 3 * f_max
    std::uint64_t c = 0;           // 3^(k+2) * f_max
};

/// Throws InvalidInput for an empty prior_forbidden, ArithmeticOverflow if
/// a bound does not fit 64 bits.
Bounds bounds(const PatternSet& prior_forbidden, std::size_t k);

/// (F1, G1) = ({231, 312}, {}).
AvoidancePair one_pass_pair();

/// The two-pass pair ({2341, 3412, 3421, 4123, 4231, 4312, 3241, 4132}, {41352}).
AvoidancePair two_pass_pair();

struct ConstructionConfig {
    std::size_t k = 2;
    /// Defaults to 3 * f_max.
    std::optional<std::size_t> omega1_cap;
    /// Defaults to C, which is almost always refused by the budget.
    std::optional<std::size_t> omega2_cap;
    AvoidancePair prior_pair = one_pass_pair();
};

struct Construction {
    Bounds bounds;
    std::size_t omega1_cap = 0;
    std::size_t omega2_cap = 0;
    AvoidancePair pair;  // (Omega1, Omega2)

    bool omega1_exact() const noexcept { return omega1_cap == bounds.omega1_len; }
    bool omega2_exact() const noexcept { return omega2_cap == bounds.c; }
};

/// Reduced permutations of length <= cap that are not k-sortable.
PatternSet construct_omega1(std::size_t k, std::size_t cap, const EnumerationLimits& limits = {});

/// Reduced k-sortable permutations of length <= cap containing a member of omega1.
PatternSet construct_omega2(std::size_t k, const PatternSet& omega1, std::size_t cap,
                            const EnumerationLimits& limits = {});

Construction construct(const ConstructionConfig& config, const EnumerationLimits& limits = {});

/// Drops every saving pattern that contains no forbidden pattern.
AvoidancePair reduce_lemma_A(const AvoidancePair& pair);

/// Drops a saving pattern alpha when a shorter saving pattern beta is
/// contained in it, every forbidden pattern contained in alpha is also
/// contained in beta, and alpha 2-avoids (F, saving patterns shorter than
/// alpha).
AvoidancePair reduce_lemma_B(const AvoidancePair& pair);

/// Drops a forbidden pattern lambda when a different forbidden pattern kappa,
/// contained in no saving pattern, is contained in lambda.
AvoidancePair reduce_lemma_C(const AvoidancePair& pair);

struct ReduceOptions {
    /// Confirm the 2-avoidance class is unchanged on all lengths up to this
    /// bound; 0 skips the check.
    std::size_t check_bound = 0;
    EnumerationLimits limits;
};

/// Applies the three lemmas in the order A, B, C until nothing changes. The
/// result is not claimed to be minimal. Throws std::logic_error if the check
/// finds a difference.
AvoidancePair reduce_pair(const AvoidancePair& pair, const ReduceOptions& options = {});

struct VerifyRow {
    std::size_t n = 0;
    std::uint64_t av2_count = 0;
    std::uint64_t sortable_count = 0;
    /// Permutations on exactly one side, lexicographic.
    std::vector<Permutation> mismatches;
};

struct VerifyReport {
    std::size_t k = 0;
    std::vector<VerifyRow> rows;

    bool ok() const noexcept;
    std::uint64_t mismatch_count() const noexcept;
    /// Header "n,av2_count,sortable_count,mismatches", one row per length.
    std::string to_csv() const;
};

/// Compares Av2(pair) with the k-sortable permutations for n = 1..n_max.
VerifyReport verify_pair(const AvoidancePair& pair, std::size_t k, std::size_t n_max,
                         const EnumerationLimits& limits = {});

std::uint64_t count_sortable(std::size_t k, std::size_t n, const EnumerationLimits& limits = {});
std::uint64_t count_av2(const AvoidancePair& pair, std::size_t n, const EnumerationLimits& limits = {});

}  // namespace popstack
