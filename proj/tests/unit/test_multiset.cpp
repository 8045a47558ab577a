#include "galoiskit/multiset.hpp"
#include "galoiskit/repetition.hpp"

#include <doctest.h>

#include <set>

using namespace gk;

namespace {
    FiniteMultiset unary(std::initializer_list<Elem> xs) {
        FiniteMultiset s(1);
        for (Elem x : xs)
            s.add(Tuple{x});
        return s;
    }
}

TEST_CASE("repetition functions store a default and exceptions") {
    RepetitionFunction phi(2, 2, ExtNat(1));
    phi.set(Tuple{0, 1}, ExtNat(0));
    phi.set(Tuple{1, 1}, ExtNat::infinity());
    CHECK(phi(Tuple{0, 0}) == ExtNat(1));
    CHECK(phi(Tuple{0, 1}) == ExtNat(0));
    CHECK(phi.total().is_infinite());
    CHECK(phi.support().size() == 3);
    CHECK(phi.normalized() == phi);
    CHECK_THROWS_AS(phi.set(Tuple{0, 2}, ExtNat(1)), PreconditionError);

    RepetitionFunction all_inf(1, 2, ExtNat::infinity());
    all_inf.set(Tuple{0}, ExtNat(2));
    all_inf.set(Tuple{1}, ExtNat(3));
    CHECK(all_inf.total() == ExtNat(5));

    CHECK(rf_leq(rf_constant(2, 2, ExtNat(0)), phi));
    CHECK(!rf_leq(phi, rf_constant(2, 2, ExtNat(1))));
    const RepetitionFunction fam[] = {phi, rf_constant(2, 2, ExtNat(2))};
    const auto sup = rf_pointwise_sup(fam);
    CHECK(sup(Tuple{0, 1}) == ExtNat(2));
    CHECK(sup(Tuple{1, 1}).is_infinite());
    CHECK(rf_pointwise_min(phi, rf_constant(2, 2, ExtNat(2)))(Tuple{1, 1}) == ExtNat(2));
}

TEST_CASE("multiset join, difference and inclusion") {
    const auto a = unary({0, 0, 1});
    const auto b = unary({0, 1, 1});
    const auto j = ms_join(a, b);
    CHECK(j.cardinality() == 6);
    CHECK(j.count(Tuple{0}) == 3);
    CHECK(ms_diff(a, b) == unary({0}));
    CHECK(ms_diff(b, a) == unary({1}));
    CHECK(ms_sub(unary({0, 1}), a));
    CHECK(!ms_sub(unary({1, 1}), a));
    CHECK(ms_sub(FiniteMultiset(1), a));
    // |S + T| = |S| + |T| and (S + T) - T = S
    CHECK(ms_diff(j, b) == a);
    FiniteMultiset r = a;
    r.remove(Tuple{0}, 5);
    CHECK(r == unary({1}));
    CHECK(a.elements() == std::vector<Tuple>{{0}, {0}, {1}});
}

TEST_CASE("partition counts follow the Bell numbers on sets") {
    CHECK(ms_partitions(FiniteMultiset(1)).size() == 1);
    CHECK(ms_partitions(unary({0})).size() == 1);
    CHECK(ms_partitions(unary({0, 1})).size() == 2);
    CHECK(ms_partitions(unary({0, 0})).size() == 2);
    CHECK(ms_partitions(unary({0, 0, 1})).size() == 4);
    CHECK(ms_partitions(unary({0, 1, 2})).size() == 5);
    CHECK(ms_partitions(unary({0, 0, 0})).size() == 3);
    for (const auto& p : ms_partitions(unary({0, 0, 1, 2}))) {
        FiniteMultiset joined(1);
        for (const auto& block : p) {
            CHECK(!block.empty());
            joined = ms_join(joined, block);
        }
        CHECK(joined == unary({0, 0, 1, 2}));
    }
    std::set<std::vector<FiniteMultiset>> distinct;
    const auto parts = ms_partitions(unary({0, 0, 1, 1}));
    for (const auto& p : parts)
        distinct.insert(p);
    CHECK(distinct.size() == parts.size());
    CHECK(parts.size() == 9);
}

TEST_CASE("matrices, columns and characteristic functions") {
    const auto m = TupleMatrix::from_rows({{0, 0, 1}, {1, 0, 1}}, 3);
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 3);
    CHECK(m.column(0) == Tuple{0, 1});
    CHECK(m.row(1) == Tuple{1, 0, 1});
    const auto chi = characteristic_function(m, 2);
    // columns (0,1), (0,0), (1,1)
    CHECK(chi(Tuple{0, 1}) == ExtNat(1));
    CHECK(chi(Tuple{0, 0}) == ExtNat(1));
    CHECK(chi(Tuple{1, 0}) == ExtNat(0));
    CHECK(characteristic_function(hcat(m, m), 2)(Tuple{1, 1}) == ExtNat(2));
    CHECK(chi.total() == ExtNat(3));
    CHECK(as_repetition_function(columns_multiset(m), 2) == chi);

    const Operation AND(2, 3, {0, 0, 0, 0, 0, 0, 0, 1});
    CHECK(apply_op_rows(AND, m) == Tuple{0, 0});
    CHECK(hcat(m, m).cols() == 6);
    const auto all = all_rows_matrix(2, 2);
    CHECK(all.rows() == 4);
    CHECK(all.column(0) == Tuple{0, 0, 1, 1});
    CHECK(all.column(1) == Tuple{0, 1, 0, 1});
    CHECK_THROWS_AS(TupleMatrix(2, {Tuple{0}}), PreconditionError);
}

TEST_CASE("matrices below a repetition function") {
    RepetitionFunction phi(1, 3);
    phi.set(Tuple{0}, ExtNat(1));
    phi.set(Tuple{2}, ExtNat(2));
    const auto two = enumerate_matrices_leq(phi, 2);
    // ordered pairs from {0, 2, 2}: (0,2), (2,0), (2,2)
    CHECK(two.size() == 3);
    CHECK(enumerate_matrices_leq(phi, 4).empty());
    for (const auto& m : two) {
        const auto chi = characteristic_function(m, 3);
        CHECK(rf_leq(chi, phi));
    }
    RepetitionFunction free(1, 2, ExtNat::infinity());
    CHECK(enumerate_matrices_leq(free, 3).size() == 8);
    CHECK_THROWS_AS(enumerate_matrices_leq(free, 20, Budget(100)), BudgetExceeded);
}

TEST_CASE("splits choose ordered columns and keep the rest") {
    const auto s = unary({0, 0, 1});
    const auto splits = split_enumerate(s, 2);
    CHECK(splits.size() == 3);
    for (const auto& sp : splits) {
        CHECK(sp.first.cols() == 2);
        CHECK(ms_join(columns_multiset(sp.first), sp.rest) == s);
    }
    CHECK(split_enumerate(s, 4).empty());
    CHECK_THROWS_AS(split_enumerate(s, 0), PreconditionError);

    std::vector<FiniteMultiset> seen;
    for_each_bounded_multiset(1, {{0}, {1}}, {ExtNat(1), ExtNat::infinity()}, 2, [&](const FiniteMultiset& m) {
        seen.push_back(m);
        return true;
    });
    CHECK(seen.size() == 2);
}
