#include <doctest.h>

#include <atomic>
#include <cstdlib>

#include "popstack/enumerate.hpp"

using namespace popstack;

TEST_CASE("unranking follows lexicographic order") {
    for (std::size_t n = 0; n <= 6; ++n) {
        const auto all = all_permutations(n);
        REQUIRE(all.size() == factorial(n));
        for (std::uint64_t r = 0; r < all.size(); ++r) {
            REQUIRE(Permutation(unrank_permutation(n, r)) == all[r]);
        }
    }
    CHECK_THROWS_AS(unrank_permutation(3, 6), InvalidInput);
    CHECK_THROWS_AS(factorial(21), std::overflow_error);
}

TEST_CASE("chunks cover S_n in order") {
    for (std::size_t n = 1; n <= 7; ++n) {
        std::vector<Permutation> seen;
        for (std::size_t c = 0; c < permutation_chunk_count(n); ++c) {
            for_each_permutation_in_chunk(n, c, [&](const Permutation& p) { seen.push_back(p); });
        }
        REQUIRE(seen == all_permutations(n));
    }
}

TEST_CASE("results do not depend on the worker count") {
    auto even_first = [](const Permutation& p) { return p[0] % 2 == 0; };
    const auto one = collect_permutations(7, 1, even_first);
    const auto four = collect_permutations(7, 4, even_first);
    CHECK(one == four);
    CHECK(count_permutations(7, 3, even_first) == one.size());
    CHECK(one.size() == 3 * 720);
}

TEST_CASE("worker exceptions propagate") {
    std::atomic<int> ran{0};
    CHECK_THROWS_AS(run_chunks(16, 4,
                               [&](std::size_t c) {
                                   ++ran;
                                   if (c == 5) throw InvalidInput("boom");
                               }),
                    InvalidInput);
}

TEST_CASE("budget") {
    EnumerationLimits limits;
    CHECK_NOTHROW(limits.require(10, "x"));
    CHECK_THROWS_AS(limits.require(11, "x"), BudgetExceeded);

    ::setenv("POPSTACK_MAX_ENUM_LEN", "7", 1);
    CHECK(EnumerationLimits::from_env().max_length == 7);
    ::setenv("POPSTACK_MAX_ENUM_LEN", "seven", 1);
    CHECK_THROWS_AS(EnumerationLimits::from_env(), InvalidInput);
    ::setenv("POPSTACK_MAX_ENUM_LEN", "17", 1);
    CHECK_THROWS_AS(EnumerationLimits::from_env(), InvalidInput);
    ::unsetenv("POPSTACK_MAX_ENUM_LEN");
    CHECK(EnumerationLimits::from_env().max_length == 10);
}
