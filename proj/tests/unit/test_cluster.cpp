#include "galoiskit/cluster.hpp"

#include <doctest.h>

using namespace gk;

namespace {
    const Operation AND(2, 2, {0, 0, 0, 1});
    const Operation XOR(2, 2, {0, 1, 1, 0});
    const Operation NOT(2, 1, {1, 0});

    FiniteMultiset ms(int arity, std::vector<Tuple> elements) { return FiniteMultiset(arity, elements); }
}

TEST_CASE("membership in boxed generators") {
    RepetitionFunction box(1, 2);
    box.set(Tuple{0}, ExtNat(2));
    box.set(Tuple{1}, ExtNat::infinity());
    const Cluster c(1, 2, {{box, ExtNat(3)}});
    CHECK(member(FiniteMultiset(1), c));
    CHECK(member(ms(1, {{0}, {0}, {1}}), c));
    CHECK(!member(ms(1, {{0}, {0}, {0}}), c));
    CHECK(!member(ms(1, {{1}, {1}, {1}, {1}}), c));
    CHECK(!member(FiniteMultiset(1), empty_cluster(1, 2)));
    CHECK(breadth(c) == ExtNat(3));
    CHECK(!breadth(empty_cluster(1, 2)).has_value());
    CHECK(breadth(equality_cluster(2))->is_infinite());
}

TEST_CASE("members are listed once in size order") {
    const auto c = trivial_cluster(1, 2, 2);
    std::vector<FiniteMultiset> seen;
    for_each_member(c, 5, [&](const FiniteMultiset& s) {
        seen.push_back(s);
        return true;
    });
    // {}, {0}, {1}, {00}, {01}, {11}
    REQUIRE(seen.size() == 6);
    CHECK(seen[0].empty());
    CHECK(seen[5] == ms(1, {{1}, {1}}));
}

TEST_CASE("the order cluster separates monotone from non-monotone behaviour") {
    const auto ord = order_cluster(PartialOrder::chain(2));
    CHECK(ord.arity() == 4);
    CHECK(satisfies_cluster(AND, ord, 4).satisfied());
    CHECK(satisfies_cluster(NOT, ord, 4).satisfied());
    const auto v = satisfies_cluster(XOR, ord, 4);
    REQUIRE(v.status == ClusterStatus::Violated);
    const auto& w = *v.witness;
    CHECK(w.output == Tuple{0, 1, 1, 0});
    CHECK(columns_multiset(w.first) == ms(4, {{0, 0, 1, 1}, {0, 1, 0, 1}}));
    CHECK(member(w.source, ord));
    CHECK(!member(ms_join(w.rest, ms(4, {w.output})), ord));
    CHECK(satisfies_cluster(XOR, ord, 1).status == ClusterStatus::BreadthBelowArity);
    CHECK(satisfies_cluster(NOT, ord, 1).satisfied());
    CHECK(!satisfies_cluster(XOR, ord, 2).satisfied());
}

TEST_CASE("relation clusters agree with relation preservation") {
    const Relation leq(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    const auto c = relation_cluster(leq);
    CHECK(satisfies_cluster(AND, c, 3).satisfied());
    CHECK(!satisfies_cluster(NOT, c, 3).satisfied());
    CHECK(!satisfies_cluster(XOR, c, 3).satisfied());
}

TEST_CASE("distinguished clusters") {
    for (const auto& f : all_operations(2, 2, 2)) {
        CHECK(satisfies_cluster(f, trivial_cluster(2, 2, 2), 3).satisfied());
        CHECK(satisfies_cluster(f, equality_cluster(2), 3).satisfied());
        CHECK(satisfies_cluster(f, empty_cluster(2, 2), 3).satisfied());
    }
}

TEST_CASE("quotients, unions and breadth restriction") {
    const auto c = trivial_cluster(1, 3, 2);
    const auto s = ms(1, {{0}});
    const auto q = quotient(c, s);
    CHECK(member(ms(1, {{1}, {1}}), q));
    CHECK(!member(ms(1, {{1}, {1}, {1}}), q));
    CHECK(!member(FiniteMultiset(1), quotient(c, ms(1, {{0}, {0}, {0}, {0}}))));

    const auto r = breadth_restrict(equality_cluster(2), 2);
    CHECK(member(ms(2, {{0, 0}, {1, 1}}), r));
    CHECK(!member(ms(2, {{0, 0}, {1, 1}, {1, 1}}), r));

    const Cluster parts[] = {relation_cluster(Relation(1, 2, {{0}})), relation_cluster(Relation(1, 2, {{1}}))};
    const auto u = cluster_union(parts);
    CHECK(member(ms(1, {{0}, {0}}), u));
    CHECK(!member(ms(1, {{0}, {1}}), u));
    const auto i = intersect(parts[0], trivial_cluster(1, 1, 2));
    CHECK(member(ms(1, {{0}}), i));
    CHECK(!member(ms(1, {{0}, {0}}), i));
    CHECK(normalize(cluster_union(parts)).generators().size() == 2);
}

TEST_CASE("partial orders are validated") {
    CHECK_THROWS_AS(PartialOrder(2, {{0, 1}}), PreconditionError);
    CHECK_THROWS_AS(PartialOrder(2, {{0, 0}, {1, 1}, {0, 1}, {1, 0}}), PreconditionError);
    const PartialOrder p(3, {{0, 0}, {1, 1}, {2, 2}, {0, 2}, {1, 2}});
    CHECK(p.leq(0, 2));
    CHECK(!p.leq(0, 1));
}

TEST_CASE("cluster minors") {
    // Identity scheme over one family member reproduces the member.
    const auto ord = order_cluster(PartialOrder::chain(2));
    const auto h = MinorScheme::identity(4);
    const auto s = ms(4, {{0, 0, 1, 1}, {0, 1, 0, 1}});
    CHECK(cluster_minor_member(s, {ord}, h) == member(s, ord));
    const auto m = materialize_minor({equality_cluster(2)}, MinorScheme::identity(2), 2);
    CHECK(member(ms(2, {{0, 0}, {1, 1}}), m));
    CHECK(!member(ms(2, {{0, 1}}), m));
}
