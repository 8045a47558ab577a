#include "galoiskit/galois.hpp"

#include <doctest.h>

using namespace gk;

namespace {
    const Operation AND(2, 2, {0, 0, 0, 1});
    const Operation OR(2, 2, {0, 1, 1, 1});
    const Operation XOR(2, 2, {0, 1, 1, 0});
    const Operation NOT(2, 1, {1, 0});

    OperationClass monotone_k2() {
        OperationClass c(2);
        for (int n = 1; n <= 2; ++n)
            for (const auto& f : all_operations(2, 2, n)) {
                bool mono = true;
                for (const auto& x : all_tuples(n, 2))
                    for (const auto& y : all_tuples(n, 2)) {
                        bool below = true;
                        for (int i = 0; i < n; ++i)
                            below = below && x[static_cast<std::size_t>(i)] <= y[static_cast<std::size_t>(i)];
                        if (below && f(x) > f(y))
                            mono = false;
                    }
                if (mono)
                    c.insert(f);
            }
        return c;
    }
}

TEST_CASE("class images") {
    OperationClass c(2);
    c.insert(AND);
    c.insert(OR);
    const auto m = TupleMatrix::from_rows({{0, 1}, {1, 1}}, 2);
    CHECK(class_image(c, m) == Relation(2, 2, {{0, 1}, {1, 1}}));
    CHECK(class_image(c, all_rows_matrix(1, 2)).empty());
}

TEST_CASE("constraint round trip on the monotone functions") {
    GaloisConfig cfg;
    cfg.arity_cap = 2;
    cfg.constraint_arity_cap = 4;
    cfg.column_cap = 2;
    const auto mono = monotone_k2();
    CHECK(mono.size() == 9);
    const auto inv = gc_inv(mono, cfg);
    CHECK(!inv.empty());
    for (const auto& f : mono.members())
        for (const auto& c : inv)
            CHECK(satisfies_constraint(f, c).satisfied);
    CHECK(f_pol(inv, 2, 2, cfg) == mono);
}

TEST_CASE("cluster Galois connection") {
    GaloisConfig cfg;
    const Cluster ord[] = {order_cluster(PartialOrder::chain(2))};
    const auto pol = c_pol(ord, 2, cfg);
    CHECK(pol.size() == 18);
    CHECK(pol.contains(NOT));
    CHECK(!pol.contains(XOR));

    OperationClass proj(2);
    const auto clusters = cl_inv(proj, cfg);
    CHECK(clusters.size() == 2);
    CHECK(c_pol(clusters, 2, cfg) == projections_class(2, 2));
}

TEST_CASE("separators") {
    const auto mono = monotone_k2();
    const auto sep = separating_constraint(mono, NOT);
    CHECK(!satisfies_constraint(NOT, sep.constraint).satisfied);
    CHECK(apply_op_rows(NOT, sep.witness) == sep.image);
    CHECK_THROWS_AS(separating_constraint(mono, AND), NoSeparatorError);

    GaloisConfig cfg;
    OperationClass and_only(2);
    and_only.insert(AND);
    const auto cs = separating_cluster(and_only, OR, cfg);
    CHECK(!satisfies_cluster(OR, cs.cluster, cs.breadth).satisfied());
    CHECK(satisfies_cluster(AND, cs.cluster, cs.breadth).satisfied());
    CHECK_THROWS_AS(separating_cluster(and_only, projection(2, 1, 2), cfg), NoSeparatorError);
}

TEST_CASE("configuration validation") {
    GaloisConfig cfg;
    cfg.arity_cap = 0;
    CHECK_THROWS_AS(cfg.validate(), PreconditionError);
    GaloisConfig narrow;
    narrow.breadth_cap = 0;
    CHECK_THROWS_AS(narrow.validate(), PreconditionError);
}
