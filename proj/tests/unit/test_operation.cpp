#include "galoiskit/operation.hpp"

#include <doctest.h>

#include <numeric>

using namespace gk;

namespace {
    const Operation AND(2, 2, {0, 0, 0, 1});
    const Operation OR(2, 2, {0, 1, 1, 1});
    const Operation NOT(2, 1, {1, 0});
    const Operation ID(2, 1, {0, 1});

    std::vector<Operation> ops_up_to(int k, int n) {
        std::vector<Operation> out;
        for (int a = 1; a <= n; ++a)
            for (auto& f : all_operations(k, k, a))
                out.push_back(f);
        return out;
    }
}

TEST_CASE("evaluation looks up the rank of the input") {
    CHECK(eval(AND, Tuple{1, 1}) == 1);
    CHECK(eval(AND, Tuple{0, 1}) == 0);
    CHECK(eval(Operation(2, 3, {0, 0, 0, 1, 0, 1, 0, 1}), Tuple{1, 0, 1}) == 1);
    CHECK_THROWS_AS(eval(AND, Tuple{1}), PreconditionError);
    CHECK_THROWS_AS(eval(AND, Tuple{1, 2}), PreconditionError);
}

TEST_CASE("operations validate their tables") {
    CHECK_THROWS_AS(Operation(2, 2, {0, 1, 1}), PreconditionError);
    CHECK_THROWS_AS(Operation(2, 1, {0, 2}), PreconditionError);
    CHECK_THROWS_AS(Operation(2, 0, {0}), PreconditionError);
    CHECK_THROWS_AS(FiniteDomain(0), PreconditionError);
    const Operation mixed(2, 3, 1, {2, 0});
    CHECK(mixed.codomain_size() == 3);
}

TEST_CASE("Mal'cev operations on the documented examples") {
    CHECK(zeta(projection(3, 1, 2)) == projection(3, 2, 2));
    CHECK(tau(AND) == AND);
    CHECK(delta(AND) == ID);
    CHECK(nabla(ID) == projection(2, 2, 2));
    CHECK(zeta(NOT) == NOT);
    CHECK(tau(NOT) == NOT);
    CHECK(delta(NOT) == NOT);
    // (tau f)(x1, x2) = f(x2, x1)
    const Operation implies(2, 2, {1, 1, 0, 1});
    CHECK(tau(implies).table() == std::vector<Elem>{1, 0, 1, 1});
}

TEST_CASE("star substitutes into the first argument") {
    CHECK(star(AND, OR).table() == std::vector<Elem>{0, 0, 0, 1, 0, 1, 0, 1});
    CHECK(star(ID, AND) == AND);
    CHECK(star(projection(2, 2, 2), AND) == projection(3, 3, 2));
    CHECK_THROWS_AS(star(AND, Operation(3, 1, {0, 1, 2})), PreconditionError);
}

TEST_CASE("projections") {
    CHECK(projection(2, 1, 2).table() == std::vector<Elem>{0, 0, 1, 1});
    CHECK(projection(2, 2, 2).table() == std::vector<Elem>{0, 1, 0, 1});
    CHECK(projection(1, 1, 3).table() == std::vector<Elem>{0, 1, 2});
    CHECK_THROWS_AS(projection(2, 3, 2), PreconditionError);
    CHECK_THROWS_AS(projection(2, 0, 2), PreconditionError);
}

TEST_CASE("minors by injection") {
    const int to_second[] = {1};
    CHECK(minor_by_injection(ID, to_second, 2) == projection(2, 2, 2));
    const int swap[] = {1, 0};
    CHECK(minor_by_injection(AND, swap, 2) == AND);
    const int spread[] = {0, 2};
    const Operation g = minor_by_injection(AND, spread, 3);
    for (const auto& x : all_tuples(3, 2))
        CHECK(g(x) == (x[0] & x[2]));
    const int same[] = {0, 0};
    CHECK_THROWS_AS(minor_by_injection(AND, same, 2), PreconditionError);
    for (const auto& f : ops_up_to(2, 3)) {
        std::vector<int> id(static_cast<std::size_t>(f.arity()));
        std::iota(id.begin(), id.end(), 0);
        CHECK(minor_by_injection(f, id, f.arity()) == f);
    }
}

TEST_CASE("Mal'cev identities hold for every small operation") {
    for (const auto& f : ops_up_to(2, 3)) {
        Operation g = f;
        for (int i = 0; i < f.arity(); ++i)
            g = zeta(g);
        CHECK(g == f);
        CHECK(tau(tau(f)) == f);
        CHECK(delta(nabla(f)) == f);
    }
    for (const auto& f : ops_up_to(3, 2))
        CHECK(delta(nabla(f)) == f);
}

TEST_CASE("operation classes deduplicate and iterate canonically") {
    OperationClass c(2);
    CHECK(c.empty());
    CHECK(c.max_arity() == 0);
    CHECK(c.insert(AND));
    CHECK(!c.insert(AND));
    c.insert(NOT);
    c.insert(OR);
    CHECK(c.size() == 3);
    CHECK(c.max_arity() == 2);
    const auto members = c.members();
    CHECK(members[0] == NOT);
    CHECK(members[1] == AND);
    CHECK(members[2] == OR);
    CHECK(c.part(5).empty());
    CHECK(c.truncated(1).size() == 1);
    CHECK(c.truncated(1).is_subset_of(c));
    CHECK_THROWS_AS(c.insert(Operation(3, 1, {0, 1, 2})), PreconditionError);
    CHECK(all_operations(2, 2, 2).size() == 16);
    CHECK(all_operations(2, 3, 1).size() == 9);
}

TEST_CASE("closure under permutation and dummy variables") {
    OperationClass id(2);
    id.insert(ID);
    const auto closed = close_perm_dummy(id, 2);
    CHECK(closed.size() == 3);
    CHECK(closed.contains(projection(2, 1, 2)));
    CHECK(closed.contains(projection(2, 2, 2)));

    OperationClass and_only(2);
    and_only.insert(AND);
    CHECK(close_perm_dummy(and_only, 2) == and_only);
    CHECK(close_perm_dummy(OperationClass(2), 3).empty());
    CHECK_THROWS_AS(close_perm_dummy(and_only, 1), PreconditionError);

    // Idempotent, extensive, monotone; agrees with zeta/tau/nabla closure.
    OperationClass mixed(2);
    mixed.insert(NOT);
    mixed.insert(Operation(2, 2, {1, 1, 0, 1}));
    const auto once = close_perm_dummy(mixed, 3);
    CHECK(close_perm_dummy(once, 3) == once);
    CHECK(mixed.is_subset_of(once));
    CHECK(close_under(mixed, {true, true, false, true, false}, 3) == once);
}

TEST_CASE("closure under composition") {
    const auto proj = close_composition(OperationClass(2), 2);
    CHECK(proj == projections_class(2, 2));
    CHECK(proj.size() == 3);

    OperationClass and_only(2);
    and_only.insert(AND);
    const auto with_and = close_composition(and_only, 2);
    CHECK(with_and.size() == 4);
    CHECK(with_and.contains(AND));

    OperationClass not_only(2);
    not_only.insert(NOT);
    const auto with_not = close_composition(not_only, 1);
    CHECK(with_not.size() == 2);
    CHECK(with_not.contains(ID));

    // A fixpoint of one more round within the cap.
    CHECK(close_under(with_and, {true, true, false, true, true}, 2) == with_and);
    CHECK_THROWS_AS(close_composition(OperationClass(2, 3), 2), PreconditionError);
}

TEST_CASE("linear class fixture") {
    const auto unary = linear_class_fixture(3, 2, 1);
    CHECK(unary.size() == 2);
    CHECK(unary.contains(Operation(3, 1, {0, 1, 2})));
    CHECK(unary.contains(Operation(3, 1, {0, 2, 1})));

    const auto binary = linear_class_fixture(3, 2, 2);
    const auto x_plus_0y = Operation::from_function(3, 3, 2, [](std::span<const Elem> x) { return x[0]; });
    const auto x_plus_y = Operation::from_function(3, 3, 2, [](std::span<const Elem> x) { return (x[0] + x[1]) % 3; });
    CHECK(binary.contains(x_plus_0y));
    CHECK(!binary.contains(x_plus_y));

    const auto ternary = linear_class_fixture(3, 2, 3);
    const auto sum = Operation::from_function(3, 3, 3, [](std::span<const Elem> x) { return (x[0] + x[1] + x[2]) % 3; });
    CHECK(ternary.contains(sum));
    CHECK(!ternary.contains(delta(sum)));
    CHECK(close_under(ternary, {true, true, false, true, true}, 3) == ternary);

    CHECK_THROWS_AS(linear_class_fixture(2, 2, 2), PreconditionError);
    CHECK_THROWS_AS(linear_class_fixture(4, 2, 2), PreconditionError);
}
