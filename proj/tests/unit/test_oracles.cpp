#include "galoiskit/verify.hpp"

#include <doctest.h>

using namespace gk;

namespace {
    const Operation AND(2, 2, {0, 0, 0, 1});
    const Operation XOR(2, 2, {0, 1, 1, 0});
    const Operation NOT(2, 1, {1, 0});
}

TEST_CASE("the oracles agree with hand-computed facts") {
    const Relation leq(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    CHECK(oracle::preserves_relation(AND, leq));
    CHECK(!oracle::preserves_relation(NOT, leq));
    CHECK(oracle::preserving_or_reversing_each_variable(NOT, PartialOrder::chain(2)));
    CHECK(!oracle::preserving_or_reversing_each_variable(XOR, PartialOrder::chain(2)));
    RepetitionFunction box(2, 2);
    for (const auto& t : leq.tuples())
        box.set(t, ExtNat::infinity());
    const GeneralizedConstraint c(box, leq);
    CHECK(oracle::satisfies_constraint(AND, c));
    CHECK(!oracle::satisfies_constraint(XOR, c));
    CHECK(oracle::satisfies_breadth_restricted(NOT, order_cluster(PartialOrder::chain(2)), 4));
    CHECK(!oracle::satisfies_breadth_restricted(XOR, order_cluster(PartialOrder::chain(2)), 4));
}

TEST_CASE("the oracles agree with the library on every binary boolean operation") {
    const auto ord = order_cluster(PartialOrder::chain(2));
    for (const auto& f : all_operations(2, 2, 2)) {
        CHECK(oracle::preserving_or_reversing_each_variable(f, PartialOrder::chain(2)) ==
              satisfies_cluster(f, ord, 4).satisfied());
    }
}

TEST_CASE("every verification suite passes with the default seed") {
    for (const auto& r : run_suite("all")) {
        CAPTURE(r.detail);
        CHECK_MESSAGE(r.passed, r.name);
    }
    CHECK_THROWS_AS(run_suite("bogus"), PreconditionError);
}
