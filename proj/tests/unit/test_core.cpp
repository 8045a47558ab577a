#include "galoiskit/core.hpp"

#include <doctest.h>

using namespace gk;

TEST_CASE("extended naturals order infinity above every count") {
    const ExtNat inf = ExtNat::infinity();
    CHECK(ExtNat(3) < inf);
    CHECK(ExtNat(0).is_zero());
    CHECK(!inf.is_zero());
    CHECK(inf == ExtNat::infinity());
    CHECK(ExtNat(2) + ExtNat(5) == ExtNat(7));
    CHECK((inf + ExtNat(5)).is_infinite());
    CHECK(inf.minus(9).is_infinite());
    CHECK(ExtNat(4).minus(9) == ExtNat(0));
    CHECK_THROWS_AS(inf.value(), Error);
}

TEST_CASE("extended naturals round-trip through text") {
    CHECK(ExtNat::parse("inf").is_infinite());
    CHECK(ExtNat::parse("12") == ExtNat(12));
    CHECK(ExtNat(12).to_string() == "12");
    CHECK(ExtNat::infinity().to_string() == "inf");
    CHECK_THROWS(ExtNat::parse("-1"));
    CHECK_THROWS(ExtNat::parse("x"));
}

TEST_CASE("budget copies share one counter and refuse explicitly") {
    Budget b(10);
    Budget copy = b;
    copy.charge(6, "first");
    CHECK(b.used() == 6);
    CHECK_THROWS_AS(b.charge(5, "second"), BudgetExceeded);
    try {
        Budget small(3);
        small.require(4, "listing");
        FAIL("expected a refusal");
    } catch (const BudgetExceeded& e) {
        CHECK(e.limit() == 3);
    }
}

TEST_CASE("tuple ranks put the first coordinate most significant") {
    CHECK(tuple_rank(Tuple{1, 0, 1}, 2) == 5);
    CHECK(tuple_rank(Tuple{2, 1}, 3) == 7);
    CHECK(tuple_unrank(5, 3, 2) == Tuple{1, 0, 1});
    const auto all = all_tuples(2, 3);
    REQUIRE(all.size() == 9);
    for (std::size_t r = 0; r < all.size(); ++r)
        CHECK(tuple_rank(all[r], 3) == r);
    CHECK(all_tuples(0, 2).size() == 1);
    Tuple t{1, 1};
    CHECK(!next_tuple(t, 2));
    CHECK(tuple_to_string(Tuple{0, 1}) == "(0,1)");
    CHECK(checked_pow(3, 4) == 81);
    CHECK(checked_pow(2, 70) == UINT64_MAX);
}
