#pragma once

// Exhaustive enumeration of S_n split into rank-ordered chunks that run on
// worker threads. Results are collected per chunk, so merging them in chunk
// order gives the same output for any number of workers.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "popstack/permutation.hpp"

namespace popstack {

/// Raised when a request would enumerate more than the configured budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnumerationLimits {
    /// Longest permutations that may be enumerated exhaustively.
    std::size_t max_length = 10;
    /// Worker threads; 0 means one per hardware thread.
    unsigned jobs = 0;

    /// Defaults, with max_length taken from POPSTACK_MAX_ENUM_LEN when set.
    /// Throws InvalidInput if the variable is not a positive integer <= 16.
    static EnumerationLimits from_env();

    unsigned worker_count() const noexcept;
    /// Throws BudgetExceeded when length > max_length.
    void require(std::size_t length, const std::string& what) const;
};

std::uint64_t factorial(std::size_t n);

/// The permutation of {1..n} with the given lexicographic rank.
std::vector<Entry> unrank_permutation(std::size_t n, std::uint64_t rank);

/// Runs work(chunk) for chunk in [0, chunks) on up to `jobs` threads. The
/// first exception thrown by any chunk is rethrown after all workers join.
void run_chunks(std::size_t chunks, unsigned jobs, const std::function<void(std::size_t)>& work);

/// Number of rank-contiguous chunks S_n is split into (at most 64).
std::size_t permutation_chunk_count(std::size_t n);

/// Visits the permutations of {1..n} in chunk `chunk` of
/// permutation_chunk_count(n), in lexicographic order.
void for_each_permutation_in_chunk(std::size_t n, std::size_t chunk,
                                   const std::function<void(const Permutation&)>& visit);

/// Every permutation of length n satisfying pred, in lexicographic order.
std::vector<Permutation> collect_permutations(std::size_t n, unsigned jobs,
                                              const std::function<bool(const Permutation&)>& pred);

/// Number of permutations of length n satisfying pred.
std::uint64_t count_permutations(std::size_t n, unsigned jobs,
                                 const std::function<bool(const Permutation&)>& pred);

}  // namespace popstack
