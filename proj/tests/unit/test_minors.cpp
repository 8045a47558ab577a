#include "galoiskit/minors.hpp"

#include <doctest.h>

using namespace gk;

namespace {
    const Relation leq(2, 2, {{0, 0}, {0, 1}, {1, 1}});

    // h: 2 -> 3, h(0) = 0, h(1) = 1 and h(0) = 1, h(1) = 2: a chain of length three.
    MinorScheme chain3() {
        return MinorScheme(3, {}, {{SchemeEntry::coord(0), SchemeEntry::coord(1)},
                                   {SchemeEntry::coord(1), SchemeEntry::coord(2)}});
    }

    // Projects a binary relation onto its first coordinate via an indeterminate.
    MinorScheme exists_second() {
        return MinorScheme(1, {"u"}, {{SchemeEntry::coord(0), SchemeEntry::var(0)}});
    }
}

TEST_CASE("schemes validate their maps") {
    CHECK_THROWS_AS(MinorScheme(2, {}, {{SchemeEntry::coord(2)}}), PreconditionError);
    CHECK_THROWS_AS(MinorScheme(2, {"u"}, {{SchemeEntry::var(1)}}), PreconditionError);
    CHECK(MinorScheme::identity(3).family_size() == 1);
    CHECK(MinorScheme::identity(3).source_arity(0) == 3);
    CHECK(default_column_cap(chain3()) == 4);
}

TEST_CASE("applying a scheme map reads target coordinates and indeterminates") {
    const MinorScheme h = exists_second();
    CHECK(apply_scheme_map(Tuple{1}, SkolemMap{0}, h.maps()[0]) == Tuple{1, 0});
    CHECK(apply_scheme_map(Tuple{0, 1, 1}, SkolemMap{}, chain3().maps()[1]) == Tuple{1, 1});
}

TEST_CASE("tight relation minors") {
    const Relation chain = tight_relation_minor(chain3(), {leq, leq});
    CHECK(chain == Relation(3, 2, {{0, 0, 0}, {0, 0, 1}, {0, 1, 1}, {1, 1, 1}}));
    const Relation above = tight_relation_minor(exists_second(), {Relation(2, 2, {{0, 1}})});
    CHECK(above == Relation(1, 2, {{0}}));
    CHECK(tight_relation_minor(MinorScheme::identity(2), {leq}) == leq);
    CHECK_THROWS_AS(tight_relation_minor(chain3(), {leq}), PreconditionError);
}

TEST_CASE("composite schemes rename colliding indeterminates") {
    const MinorScheme outer(1, {}, {{SchemeEntry::coord(0)}, {SchemeEntry::coord(0)}});
    const auto composite = compose_schemes(outer, {exists_second(), exists_second()});
    CHECK(composite.scheme.target() == 1);
    CHECK(composite.scheme.vars().size() == 2);
    CHECK(composite.scheme.vars()[0] != composite.scheme.vars()[1]);
    CHECK(composite.origin.size() == 2);
    CHECK(composite.origin[1] == std::pair<int, int>{1, 0});
    CHECK(composite.renamed[0][0] == "u");
}

TEST_CASE("repetition function minors") {
    const MinorScheme id = MinorScheme::identity(1);
    const RepetitionFunction two = rf_constant(1, 2, ExtNat(2));
    const RepetitionFunction three = rf_constant(1, 2, ExtNat(3));
    // The identity scheme: phi is restrictive exactly when phi <= phi_1.
    CHECK(is_restrictive_rf_minor(two, {three}, id, 4).holds);
    CHECK(!is_restrictive_rf_minor(three, {two}, id, 4).holds);
    CHECK(is_extensive_rf_minor(three, {two}, id, 4).holds);
    CHECK(!is_extensive_rf_minor(two, {three}, id, 4).holds);
    CHECK(remark_sum_refutation(three, {two}, id, true) != "");
    CHECK(remark_sum_refutation(two, {three}, id, true) == "");
}

TEST_CASE("distinguished constraints arise as conjunctive minors") {
    for (int k : {2, 3}) {
        for (int m = 2; m <= 3; ++m) {
            for (FixtureKind kind : all_fixture_kinds()) {
                CAPTURE(fixture_name(kind));
                const MinorScheme h = scheme_fixture(kind, m);
                const auto family = fixture_family(kind, m, k, k);
                const auto expected = fixture_expected(kind, m, k, k);
                CHECK(pullback_minor(h, family).normalized() == expected.normalized());
                CHECK(is_conjunctive_minor_constraint(expected, family, h, default_column_cap(h)).holds);
            }
        }
    }
}

TEST_CASE("pullback minors require a scheme without indeterminates") {
    const GeneralizedConstraint c(rf_constant(2, 2, ExtNat::infinity()), leq);
    CHECK_THROWS_AS(pullback_minor(exists_second(), {c}), PreconditionError);
    const auto chain = pullback_minor(chain3(), {c, c});
    CHECK(chain.consequent() == tight_relation_minor(chain3(), {leq, leq}));
    CHECK(chain.antecedent()(Tuple{0, 1, 0}).is_infinite());
}
