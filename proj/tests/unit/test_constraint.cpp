#include "galoiskit/constraint.hpp"

#include <doctest.h>

using namespace gk;

namespace {
    const Operation AND(2, 2, {0, 0, 0, 1});
    const Operation XOR(2, 2, {0, 1, 1, 0});
    const Operation NOT(2, 1, {1, 0});

    const Relation leq(2, 2, {{0, 0}, {0, 1}, {1, 1}});

    // Columns drawn from the order relation itself, each at most `mult` times.
    GeneralizedConstraint leq_constraint(ExtNat mult) {
        RepetitionFunction phi(2, 2);
        for (const auto& t : leq.tuples())
            phi.set(t, mult);
        return GeneralizedConstraint(phi, leq);
    }
}

TEST_CASE("relations") {
    Relation r(2, 2, {{0, 1}});
    CHECK(r.contains(Tuple{0, 1}));
    CHECK(!r.contains(Tuple{1, 0}));
    CHECK(r.is_subset_of(Relation::full(2, 2)));
    CHECK(Relation::full(2, 3).size() == 9);
    CHECK(relation_intersection(r, Relation(2, 2, {{1, 0}})).empty());
    CHECK_THROWS_AS(r.insert(Tuple{0, 2}), PreconditionError);
    CHECK_THROWS_AS(r.insert(Tuple{0}), PreconditionError);
}

TEST_CASE("monotone operations satisfy the order constraint") {
    const auto c = leq_constraint(ExtNat::infinity());
    CHECK(satisfies_constraint(AND, c).satisfied);
    const auto v = satisfies_constraint(NOT, c);
    CHECK(!v.satisfied);
    REQUIRE(v.witness);
    CHECK(v.witness->column(0) == Tuple{0, 1});
    CHECK(*v.image == Tuple{1, 0});
    const auto x = satisfies_constraint(XOR, c);
    CHECK(!x.satisfied);
    CHECK(!c.consequent().contains(*x.image));
    CHECK(apply_op_rows(XOR, *x.witness) == *x.image);
}

TEST_CASE("repetition bounds limit which matrices are checked") {
    // With each column allowed once, XOR only sees matrices with two
    // distinct columns.
    const GeneralizedConstraint once(rf_constant(1, 2, ExtNat(1)), Relation(1, 2, {{1}}));
    CHECK(satisfies_constraint(XOR, once).satisfied);
    const GeneralizedConstraint twice(rf_constant(1, 2, ExtNat(2)), Relation(1, 2, {{1}}));
    CHECK(!satisfies_constraint(XOR, twice).satisfied);
}

TEST_CASE("relaxations preserve satisfaction") {
    const auto c = leq_constraint(ExtNat::infinity());
    const auto smaller = restrict_antecedent(c, leq_constraint(ExtNat(1)).antecedent());
    const auto larger = extend_consequent(c, Relation::full(2, 2));
    for (const auto& f : all_operations(2, 2, 2)) {
        if (satisfies_constraint(f, c).satisfied) {
            CHECK(satisfies_constraint(f, smaller).satisfied);
            CHECK(satisfies_constraint(f, larger).satisfied);
        }
    }
    CHECK_THROWS_AS(restrict_antecedent(smaller, leq_constraint(ExtNat(2)).antecedent()), PreconditionError);
    CHECK_THROWS_AS(extend_consequent(c, Relation(2, 2)), PreconditionError);

    const GeneralizedConstraint family[] = {c, GeneralizedConstraint(c.antecedent(),
                                                                      Relation(2, 2, {{0, 0}, {1, 1}, {1, 0}}))};
    const auto both = intersect_consequents(family);
    CHECK(both.consequent() == Relation(2, 2, {{0, 0}, {1, 1}}));

    const auto finite = finite_restriction(c, {{0, 1}});
    CHECK(finite.antecedent()(Tuple{0, 1}).is_infinite());
    CHECK(finite.antecedent()(Tuple{0, 0}) == ExtNat(0));
    CHECK(satisfies_constraint(AND, finite).satisfied);
    CHECK(!satisfies_constraint(NOT, finite).satisfied);
    const auto diagonal = finite_restriction(c, {{0, 0}, {1, 1}});
    CHECK(satisfies_constraint(NOT, diagonal).satisfied);
}

TEST_CASE("distinguished constraints") {
    const auto eq = equality_constraint(2, 2, 2);
    const auto empty = empty_constraint(1, 2, 2);
    const auto trivial = trivial_constraint(3, 2, 2);
    for (const auto& f : all_operations(2, 2, 2)) {
        CHECK(satisfies_constraint(f, eq).satisfied);
        CHECK(satisfies_constraint(f, trivial).satisfied);
        // Nothing sits below the zero antecedent, so the empty constraint holds vacuously.
        CHECK(satisfies_constraint(f, empty).satisfied);
    }
    CHECK(eq.consequent() == Relation(2, 2, {{0, 0}, {1, 1}}));
    CHECK(empty.consequent().empty());
    CHECK(trivial.consequent() == Relation::full(3, 2));
}

TEST_CASE("maximal elements") {
    const RepetitionFunction fam[] = {rf_constant(1, 2, ExtNat(1)), rf_constant(1, 2, ExtNat(3)),
                                      rf_constant(1, 2, ExtNat(3)), rf_constant(1, 2, ExtNat(0))};
    const auto top = maximal_elements(fam);
    REQUIRE(top.size() == 1);
    CHECK(top[0] == rf_constant(1, 2, ExtNat(3)));
    RepetitionFunction a(1, 2), b(1, 2);
    a.set(Tuple{0}, ExtNat(1));
    b.set(Tuple{1}, ExtNat(1));
    const RepetitionFunction incomparable[] = {a, b};
    CHECK(maximal_elements(incomparable).size() == 2);
}
