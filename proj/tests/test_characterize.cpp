#include <doctest.h>

#include "generators.hpp"
#include "oracles.hpp"
#include "popstack/characterize.hpp"
#include "popstack/popstack.hpp"

using namespace popstack;

namespace {

Permutation P(const char* text) { return Permutation::parse(text); }

bool has(const PatternSet& set, const Permutation& p) {
    return std::find(set.begin(), set.end(), p) != set.end();
}

// Av2 membership unchanged for every permutation of length <= n_max.
bool same_class(const AvoidancePair& a, const AvoidancePair& b, std::size_t n_max) {
    const PairMatcher ma(a);
    const PairMatcher mb(b);
    for (const auto& p : oracle::all_up_to(n_max)) {
        if (ma.two_avoids(p) != mb.two_avoids(p)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("bounds") {
    const auto b1 = bounds(one_pass_pair().forbidden, 2);
    CHECK(b1.f_max == 3);
    CHECK(b1.omega1_len == 9);
    CHECK(b1.c == 243);

    const auto b2 = bounds(make_pattern_set({P("1")}), 1);
    CHECK(b2.f_max == 1);
    CHECK(b2.omega1_len == 3);
    CHECK(b2.c == 27);

    const auto b3 = bounds(two_pass_pair().forbidden, 3);
    CHECK(b3.f_max == 4);
    CHECK(b3.omega1_len == 12);
    CHECK(b3.c == 972);

    CHECK_THROWS_AS(bounds({}, 2), InvalidInput);
    CHECK_NOTHROW(bounds(make_pattern_set({P("1")}), 38));
    CHECK_THROWS_AS(bounds(make_pattern_set({P("1")}), 39), ArithmeticOverflow);
}

TEST_CASE("Omega1") {
    CHECK(construct_omega1(1, 3) == make_pattern_set({P("231"), P("312")}));
    CHECK(construct_omega1(1, 1).empty());
    CHECK(construct_omega1(4, 1).empty());
    const auto two = construct_omega1(2, 4);
    CHECK(has(two, P("3241")));
    CHECK(has(two, P("4132")));
    for (const auto& t : two) CHECK_FALSE(oracle::machine_sortable(t, 2));

    EnumerationLimits small;
    small.max_length = 5;
    CHECK_THROWS_AS(construct_omega1(2, 6, small), BudgetExceeded);
    CHECK_THROWS_AS(construct_omega1(2, 0), InvalidInput);
}

TEST_CASE("Omega2") {
    const auto contains_41352 = construct_omega2(2, make_pattern_set({P("3241")}), 5);
    CHECK(has(contains_41352, P("41352")));
    CHECK(construct_omega2(2, make_pattern_set({P("3241")}), 3).empty());
    CHECK_THROWS_AS(construct_omega2(2, {}, 5), InvalidInput);

    // full Omega1 at the exact length 9, Omega2 cut at 5
    const auto omega1 = construct_omega1(2, 9);
    CHECK(omega1.size() == 405738);
    const auto omega2 = construct_omega2(2, omega1, 5);
    std::vector<Permutation> expected;
    for (const auto& kappa : oracle::all_up_to(5)) {
        if (!oracle::machine_sortable(kappa, 2)) continue;
        bool contains_unsortable = false;
        for (std::uint32_t mask = 1; mask < (1u << kappa.size()); ++mask) {
            const Permutation sub(oracle::rank_form(oracle::values_at(kappa, mask)));
            contains_unsortable = contains_unsortable || !oracle::machine_sortable(sub, 2);
        }
        if (contains_unsortable) expected.push_back(kappa);
    }
    CHECK(omega2 == make_pattern_set(expected));
    CHECK(omega2 == make_pattern_set({P("41352")}));
}

TEST_CASE("construct with small caps") {
    ConstructionConfig config;
    config.k = 2;
    config.omega1_cap = 5;
    config.omega2_cap = 6;
    const auto c = construct(config);
    CHECK(c.bounds.c == 243);
    CHECK_FALSE(c.omega1_exact());
    CHECK(c.pair.forbidden.size() == 86);
    CHECK(c.pair.saving == make_pattern_set({P("41352"), P("152463"), P("251463"), P("413526"),
                                             P("413625"), P("413652"), P("521463")}));

    ConstructionConfig defaults;
    CHECK_THROWS_AS(construct(defaults), BudgetExceeded);
    config.omega1_cap = 10;
    CHECK_THROWS_AS(construct(config), InvalidInput);
}

TEST_CASE("lemma A") {
    CHECK(reduce_lemma_A(AvoidancePair({P("21")}, {P("123")})).saving.empty());
    const AvoidancePair simple({P("3241")}, {P("41352")});
    CHECK(reduce_lemma_A(simple) == simple);
    CHECK(reduce_lemma_A(AvoidancePair({P("231"), P("312")}, {P("1234")})).saving.empty());
}

TEST_CASE("lemma B") {
    const AvoidancePair nested({P("21")}, {P("321"), P("21")});
    const auto reduced = reduce_lemma_B(nested);
    CHECK(reduced.saving == make_pattern_set({P("21")}));
    CHECK(same_class(nested, reduced, 6));

    const AvoidancePair simple({P("3241")}, {P("41352")});
    CHECK(reduce_lemma_B(simple) == simple);

    // 231 holds the forbidden 12 which 21 lacks
    const AvoidancePair blocked({P("12"), P("21")}, {P("21"), P("231")});
    CHECK(reduce_lemma_B(blocked) == blocked);

    // 213 lies inside 3124 with the same forbidden content, but the 12 at
    // values 1, 2 of 3124 has no 213 over it
    const AvoidancePair misplaced({P("12")}, {P("213"), P("3124")});
    CHECK(reduce_lemma_B(misplaced) == misplaced);
    CHECK(two_avoids(P("3124"), misplaced));
    CHECK_FALSE(two_avoids(P("3124"), AvoidancePair({P("12")}, {P("213")})));
}

TEST_CASE("lemma C") {
    CHECK(reduce_lemma_C(AvoidancePair({P("231"), P("4231")}, {})).forbidden == make_pattern_set({P("231")}));

    const AvoidancePair saved_kappa({P("3241"), P("43251")}, {P("41352")});
    CHECK(reduce_lemma_C(saved_kappa) == saved_kappa);

    CHECK(reduce_lemma_C(AvoidancePair({P("21"), P("321")}, {P("132")})) ==
          AvoidancePair({P("21"), P("321")}, {P("132")}));
    const AvoidancePair with_123({P("21"), P("321")}, {P("123")});
    const auto reduced = reduce_lemma_C(with_123);
    CHECK(reduced.forbidden == make_pattern_set({P("21")}));
    CHECK(same_class(with_123, reduced, 6));
}

TEST_CASE("the lemmas keep the 2-avoidance class on generated pairs") {
    std::mt19937 rng(101);
    int fired_a = 0, fired_b = 0, fired_c = 0;
    for (int trial = 0; trial < 60; ++trial) {
        const auto a = gen::lemma_a_candidate(rng);
        const auto b = gen::lemma_b_candidate(rng);
        const auto c = gen::lemma_c_candidate(rng);
        const auto ra = reduce_lemma_A(a);
        const auto rb = reduce_lemma_B(b);
        const auto rc = reduce_lemma_C(c);
        fired_a += ra == a ? 0 : 1;
        fired_b += rb == b ? 0 : 1;
        fired_c += rc == c ? 0 : 1;
        REQUIRE(same_class(a, ra, 6));
        REQUIRE(same_class(b, rb, 6));
        REQUIRE(same_class(c, rc, 6));
    }
    CHECK(fired_a > 10);
    CHECK(fired_b > 10);
    CHECK(fired_c > 10);
}

TEST_CASE("reduce_pair") {
    const AvoidancePair redundant_long({P("4123"), P("4231"), P("43251"), P("3241")}, {P("41352")});
    CHECK(reduce_pair(redundant_long) == redundant_long);
    // yet 43251 is redundant there
    const AvoidancePair without({P("4123"), P("4231"), P("3241")}, {P("41352")});
    CHECK(same_class(redundant_long, without, 7));

    ConstructionConfig config;
    config.omega1_cap = 5;
    config.omega2_cap = 6;
    const auto omega = construct(config).pair;
    ReduceOptions options;
    options.check_bound = 7;
    const auto reduced = reduce_pair(omega, options);
    // every saving pattern of length 6 holds a length-5 forbidden pattern 41352 lacks
    CHECK(reduced.forbidden.size() == 18);
    CHECK(reduced.saving == omega.saving);
    CHECK(reduce_pair(reduced) == reduced);

    const auto two = two_pass_pair();
    CHECK(reduce_pair(two) == two);
}

TEST_CASE("verify_pair and counts") {
    const auto report = verify_pair(two_pass_pair(), 2, 7);
    CHECK(report.ok());
    REQUIRE(report.rows.size() == 7);
    CHECK(report.rows[6].sortable_count == 298);

    const auto k1 = verify_pair(one_pass_pair(), 1, 6);
    CHECK(k1.ok());
    CHECK(k1.to_csv() == "n,av2_count,sortable_count,mismatches\n1,1,1,0\n2,2,2,0\n3,4,4,0\n4,8,8,0\n5,16,16,0\n6,32,32,0\n");

    // a wrong pair is caught
    const auto bad = verify_pair(one_pass_pair(), 2, 4);
    CHECK_FALSE(bad.ok());
    CHECK(bad.rows[2].mismatches == std::vector<Permutation>{P("231"), P("312")});

    CHECK(count_sortable(1, 5) == 16);
    CHECK(count_sortable(3, 1) == 1);
    const AvoidancePair all_but_one({P("1")}, {P("12"), P("21")});
    CHECK(count_av2(all_but_one, 1) == 0);
    for (std::size_t n = 2; n <= 6; ++n) CHECK(count_av2(all_but_one, n) == factorial(n));

    EnumerationLimits small;
    small.max_length = 6;
    CHECK_THROWS_AS(verify_pair(two_pass_pair(), 2, 7, small), BudgetExceeded);
}

TEST_CASE("Omega1 catches every short unsortable permutation") {
    const auto omega1 = construct_omega1(2, 6);
    const PairMatcher matcher(AvoidancePair(omega1, {P("41352")}));
    for (const auto& p : oracle::all_up_to(6)) {
        if (!is_k_sortable(p, 2)) REQUIRE(matcher.two_contains(p));
    }
}

TEST_CASE("truncated Omega2 stays sound, n <= 8") {
    const auto omega1 = construct_omega1(2, 9);
    const auto omega2 = construct_omega2(2, omega1, 5);
    const auto report = verify_pair(AvoidancePair(omega1, omega2), 2, 8);
    for (const auto& row : report.rows) {
        for (const auto& p : row.mismatches) REQUIRE(is_k_sortable(p, 2));  // only sortable-side misses
    }
}
