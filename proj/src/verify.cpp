#include "galoiskit/verify.hpp"

#include "galoiskit/galois.hpp"
#include "galoiskit/textio.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace gk {

namespace {

    // Odometer over {0..base-1}^len; false after the last vector.
    bool advance(std::vector<int>& v, int base) {
        for (std::size_t i = v.size(); i-- > 0;) {
            if (++v[i] < base)
                return true;
            v[i] = 0;
        }
        return false;
    }

    int power(int k, int n) {
        int out = 1;
        for (int i = 0; i < n; ++i)
            out *= k;
        return out;
    }

    Tuple unrank(int rank, int len, int k) {
        Tuple t(static_cast<std::size_t>(len));
        for (int i = len; i-- > 0;) {
            t[static_cast<std::size_t>(i)] = rank % k;
            rank /= k;
        }
        return t;
    }

    int rank_of(const Tuple& t, int k) {
        int r = 0;
        for (Elem x : t)
            r = r * k + x;
        return r;
    }

    // Generator boxes tabulated by tuple rank.
    struct ClusterTable {
        int m;
        int k;
        std::vector<std::vector<ExtNat>> boxes;
        std::vector<ExtNat> caps;

        explicit ClusterTable(const Cluster& c) : m(c.arity()), k(c.domain_size()) {
            const int n = power(k, m);
            for (const auto& g : c.generators()) {
                std::vector<ExtNat> box;
                for (int r = 0; r < n; ++r)
                    box.push_back(g.box(unrank(r, m, k)));
                boxes.push_back(std::move(box));
                caps.push_back(g.cap);
            }
        }

        bool member(const std::vector<Elem>& counts, std::uint64_t size) const {
            for (std::size_t g = 0; g < boxes.size(); ++g) {
                if (ExtNat(size) > caps[g])
                    continue;
                bool ok = true;
                for (std::size_t r = 0; r < counts.size() && ok; ++r)
                    ok = ExtNat(static_cast<std::uint64_t>(counts[r])) <= boxes[g][r];
                if (ok)
                    return true;
            }
            return false;
        }
    };

    // Every count vector over `slots` positions with total <= max_total.
    void for_each_count_vector(int slots, int max_total, const std::function<void(const std::vector<Elem>&, int)>& visit) {
        std::vector<Elem> counts(static_cast<std::size_t>(slots), 0);
        auto rec = [&](auto&& self, int pos, int left) -> void {
            if (pos == slots) {
                visit(counts, max_total - left);
                return;
            }
            for (int c = 0; c <= left; ++c) {
                counts[static_cast<std::size_t>(pos)] = c;
                self(self, pos + 1, left - c);
            }
            counts[static_cast<std::size_t>(pos)] = 0;
        };
        rec(rec, 0, max_total);
    }

    std::vector<FiniteMultiset> all_multisets(int m, int k, int max_size) {
        std::vector<FiniteMultiset> out;
        for_each_count_vector(power(k, m), max_size, [&](const std::vector<Elem>& counts, int) {
            FiniteMultiset s(m);
            for (std::size_t r = 0; r < counts.size(); ++r)
                if (counts[r] > 0)
                    s.add(unrank(static_cast<int>(r), m, k), static_cast<std::uint64_t>(counts[r]));
            out.push_back(std::move(s));
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    std::vector<Elem> counts_of(const FiniteMultiset& s, int k) {
        std::vector<Elem> counts(static_cast<std::size_t>(power(k, s.arity())), 0);
        for (const auto& [t, n] : s.entries())
            counts[static_cast<std::size_t>(rank_of(t, k))] += static_cast<Elem>(n);
        return counts;
    }

    class Rng {
      public:
        explicit Rng(std::uint64_t seed) : gen_(seed) {}
        int below(int n) { return static_cast<int>(gen_() % static_cast<std::uint64_t>(n)); }
        int range(int lo, int hi) { return lo + below(hi - lo + 1); }
        bool chance(int num, int den) { return below(den) < num; }

      private:
        std::mt19937_64 gen_;
    };

    Operation random_operation(Rng& rng, int k, int n) {
        std::vector<Elem> table(static_cast<std::size_t>(power(k, n)));
        for (auto& v : table)
            v = rng.below(k);
        return Operation(k, n, std::move(table));
    }

    ExtNat random_count(Rng& rng) {
        switch (rng.below(4)) {
        case 0:
            return ExtNat(0);
        case 1:
            return ExtNat(1);
        case 2:
            return ExtNat(2);
        default:
            return ExtNat::infinity();
        }
    }

    Cluster random_cluster(Rng& rng, int m, int k) {
        Cluster c(m, k);
        const int gens = rng.chance(1, 20) ? 0 : rng.range(1, 3);
        for (int g = 0; g < gens; ++g) {
            RepetitionFunction box(m, k, rng.chance(1, 3) ? ExtNat::infinity() : ExtNat(0));
            for (const auto& t : all_tuples(m, k))
                if (rng.chance(1, 2))
                    box.set(t, random_count(rng));
            ExtNat cap = rng.chance(1, 3) ? ExtNat::infinity() : ExtNat(static_cast<std::uint64_t>(rng.range(0, 5)));
            c.add({box, cap});
        }
        return c;
    }

    Relation random_relation(Rng& rng, int m, int k, int num = 1, int den = 2) {
        Relation r(m, k);
        for (const auto& t : all_tuples(m, k))
            if (rng.chance(num, den))
                r.insert(t);
        return r;
    }

    // The least superset of r closed under f.
    Relation close_relation(const Relation& r, const Operation& f) {
        Relation out = r;
        bool grown = true;
        while (grown && !out.empty()) {
            grown = false;
            std::vector<Tuple> rows(out.tuples().begin(), out.tuples().end());
            std::vector<int> pick(static_cast<std::size_t>(f.arity()), 0);
            do {
                Tuple img(static_cast<std::size_t>(out.arity()));
                Tuple in(static_cast<std::size_t>(f.arity()));
                for (int c = 0; c < out.arity(); ++c) {
                    for (int i = 0; i < f.arity(); ++i)
                        in[static_cast<std::size_t>(i)] =
                            rows[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])][static_cast<std::size_t>(c)];
                    img[static_cast<std::size_t>(c)] = f(in);
                }
                if (!out.contains(img)) {
                    out.insert(img);
                    grown = true;
                }
            } while (advance(pick, static_cast<int>(rows.size())));
        }
        return out;
    }

    MinorScheme random_scheme(Rng& rng, int target, int max_vars, int max_family, int max_source,
                              const std::vector<std::string>& var_pool) {
        const int nv = rng.range(0, max_vars);
        std::vector<std::string> vars(var_pool.begin(), var_pool.begin() + nv);
        std::vector<SchemeMap> maps(static_cast<std::size_t>(rng.range(1, max_family)));
        for (auto& h : maps) {
            const int n = rng.range(1, max_source);
            for (int i = 0; i < n; ++i)
                h.push_back(nv > 0 && rng.chance(1, 3) ? SchemeEntry::var(rng.below(nv))
                                                       : SchemeEntry::coord(rng.below(target)));
        }
        return MinorScheme(target, vars, maps);
    }

    std::string describe_op(const Operation& f) { return format_operation("f", f); }

    std::vector<Operation> operations_up_to(int k, int max_arity) {
        std::vector<Operation> out;
        for (int n = 1; n <= max_arity; ++n)
            for (auto& f : all_operations(k, k, n))
                out.push_back(std::move(f));
        return out;
    }

    // Runs body, timing it and turning exceptions into failures.
    CheckResult timed(const std::string& name, const std::function<void(CheckResult&)>& body) {
        CheckResult r;
        r.name = name;
        r.passed = true;
        auto start = std::chrono::steady_clock::now();
        try {
            body(r);
        } catch (const std::exception& e) {
            r.passed = false;
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return r;
    }

    void fail(CheckResult& r, const std::string& detail) {
        if (r.passed) {
            r.passed = false;
            r.detail = detail;
        }
    }

    OperationClass monotone_class_k2() {
        OperationClass out(2);
        PartialOrder chain = PartialOrder::chain(2);
        for (const auto& f : operations_up_to(2, 2)) {
            bool mono = true;
            for (const auto& x : all_tuples(f.arity(), 2))
                for (const auto& y : all_tuples(f.arity(), 2)) {
                    bool below = true;
                    for (std::size_t i = 0; i < x.size(); ++i)
                        below = below && chain.leq(x[i], y[i]);
                    if (below && !chain.leq(f(x), f(y)))
                        mono = false;
                }
            if (mono)
                out.insert(f);
        }
        return out;
    }

    std::string sizes_note(const OperationClass& c) {
        std::ostringstream os;
        os << c.size() << " ops";
        return os.str();
    }
}

namespace oracle {

    bool preserves_relation(const Operation& f, const Relation& r) {
        if (r.empty())
            return true;
        std::vector<Tuple> rows(r.tuples().begin(), r.tuples().end());
        std::vector<int> pick(static_cast<std::size_t>(f.arity()), 0);
        do {
            Tuple out;
            for (int c = 0; c < r.arity(); ++c) {
                Tuple in;
                for (int i : pick)
                    in.push_back(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
                out.push_back(f.at_rank(static_cast<std::uint64_t>(rank_of(in, f.domain_size()))));
            }
            if (!r.contains(out))
                return false;
        } while (advance(pick, static_cast<int>(rows.size())));
        return true;
    }

    bool preserving_or_reversing_each_variable(const Operation& f, const PartialOrder& order) {
        const int k = f.domain_size();
        for (int i = 0; i < f.arity(); ++i) {
            bool preserving = true;
            bool reversing = true;
            std::vector<int> x(static_cast<std::size_t>(f.arity()), 0);
            do {
                for (Elem b = 0; b < k; ++b) {
                    if (!order.leq(x[static_cast<std::size_t>(i)], b))
                        continue;
                    Tuple y = x;
                    y[static_cast<std::size_t>(i)] = b;
                    Elem fx = f.at_rank(static_cast<std::uint64_t>(rank_of(x, k)));
                    Elem fy = f.at_rank(static_cast<std::uint64_t>(rank_of(y, k)));
                    preserving = preserving && order.leq(fx, fy);
                    reversing = reversing && order.leq(fy, fx);
                }
            } while (advance(x, k));
            if (!preserving && !reversing)
                return false;
        }
        return true;
    }

    bool in_cluster(const std::vector<Elem>& counts_by_rank, std::uint64_t size, const Cluster& c) {
        return ClusterTable(c).member(counts_by_rank, size);
    }

    bool satisfies_breadth_restricted(const Operation& f, const Cluster& c, std::uint64_t breadth) {
        const ClusterTable table(c);
        const int m = c.arity();
        const int k = c.domain_size();
        const int n = f.arity();
        bool ok = true;
        for_each_count_vector(power(k, m), static_cast<int>(breadth), [&](const std::vector<Elem>& counts, int size) {
            if (!ok || size < n || !table.member(counts, static_cast<std::uint64_t>(size)))
                return;
            std::vector<int> slots;  // one entry per element, by rank
            for (std::size_t r = 0; r < counts.size(); ++r)
                for (int c2 = 0; c2 < counts[r]; ++c2)
                    slots.push_back(static_cast<int>(r));
            std::vector<int> pick(static_cast<std::size_t>(n), 0);
            do {
                std::set<int> distinct(pick.begin(), pick.end());
                if (static_cast<int>(distinct.size()) != n)
                    continue;
                std::vector<Elem> rest = counts;
                std::vector<Tuple> cols;
                for (int p : pick) {
                    int r = slots[static_cast<std::size_t>(p)];
                    --rest[static_cast<std::size_t>(r)];
                    cols.push_back(unrank(r, m, k));
                }
                Tuple out(static_cast<std::size_t>(m));
                for (int row = 0; row < m; ++row) {
                    Tuple in;
                    for (const auto& col : cols)
                        in.push_back(col[static_cast<std::size_t>(row)]);
                    out[static_cast<std::size_t>(row)] = f.at_rank(static_cast<std::uint64_t>(rank_of(in, k)));
                }
                ++rest[static_cast<std::size_t>(rank_of(out, k))];
                if (!table.member(rest, static_cast<std::uint64_t>(size - n + 1))) {
                    ok = false;
                    return;
                }
            } while (advance(pick, static_cast<int>(slots.size())));
        });
        return ok;
    }

    bool satisfies_constraint(const Operation& f, const GeneralizedConstraint& c) {
        const int m = c.arity();
        const int k = c.domain_size();
        const int n = f.arity();
        const int cols = power(k, m);
        std::vector<ExtNat> bound;
        for (int r = 0; r < cols; ++r)
            bound.push_back(c.antecedent()(unrank(r, m, k)));
        std::vector<int> pick(static_cast<std::size_t>(n), 0);
        do {
            std::map<int, std::uint64_t> used;
            bool fits = true;
            for (int r : pick)
                fits = fits && ExtNat(++used[r]) <= bound[static_cast<std::size_t>(r)];
            if (!fits)
                continue;
            Tuple out;
            for (int row = 0; row < m; ++row) {
                Tuple in;
                for (int r : pick)
                    in.push_back(unrank(r, m, k)[static_cast<std::size_t>(row)]);
                out.push_back(f.at_rank(static_cast<std::uint64_t>(rank_of(in, k))));
            }
            if (!c.consequent().contains(out))
                return false;
        } while (advance(pick, cols));
        return true;
    }

    Relation tight_minor(const MinorScheme& h, const std::vector<Relation>& family) {
        const int k = family.front().domain_size();
        const int m = h.target();
        Relation out(m, k);
        std::vector<int> a(static_cast<std::size_t>(m), 0);
        do {
            std::vector<int> sigma(h.vars().size(), 0);
            bool found = false;
            do {
                bool all = true;
                for (std::size_t j = 0; j < family.size() && all; ++j) {
                    Tuple t;
                    for (const auto& e : h.maps()[j])
                        t.push_back(e.is_var() ? sigma[static_cast<std::size_t>(e.index)]
                                               : a[static_cast<std::size_t>(e.index)]);
                    all = family[j].contains(t);
                }
                found = all;
            } while (!found && advance(sigma, k));
            if (found)
                out.insert(a);
        } while (advance(a, k));
        return out;
    }

}  // namespace oracle

CheckResult check_malcev_identities() {
    return timed("malcev identities", [](CheckResult& r) {
        int count = 0;
        for (int n = 1; n <= 3; ++n) {
            for (const auto& f : all_operations(2, 2, n)) {
                ++count;
                Operation g = f;
                for (int i = 0; i < n; ++i)
                    g = zeta(g);
                if (g != f)
                    fail(r, "zeta^n f != f for " + describe_op(f));
                if (tau(tau(f)) != f)
                    fail(r, "tau tau f != f for " + describe_op(f));
                if (delta(nabla(f)) != f)
                    fail(r, "delta nabla f != f for " + describe_op(f));
                if (n == 1 && (zeta(f) != f || tau(f) != f || delta(f) != f))
                    fail(r, "a unary operation is moved by zeta, tau or delta: " + describe_op(f));
            }
        }
        if (r.passed)
            r.detail = std::to_string(count) + " operations of arity 1..3 on {0,1}";
    });
}

CheckResult check_characteristic_matrices(std::uint64_t seed) {
    return timed("characteristic matrices", [seed](CheckResult& r) {
        Rng rng(seed);
        std::uint64_t checks = 0;
        for (int trial = 0; trial < 50 && r.passed; ++trial) {
            OperationClass gens(2);
            const int count = rng.range(1, 3);
            for (int i = 0; i < count; ++i)
                gens.insert(random_operation(rng, 2, rng.range(1, 3)));
            const OperationClass cls = close_perm_dummy(gens, 3);
            const auto members = cls.members();
            for (int n = 1; n <= 3 && r.passed; ++n) {
                const auto rows = all_tuples(n, 2);
                for (int m = 1; m <= 3 && r.passed; ++m) {
                    if (m > static_cast<int>(rows.size()))
                        continue;
                    // Ordered choices of m distinct rows.
                    std::vector<int> pick(static_cast<std::size_t>(m), 0);
                    do {
                        if (std::set<int>(pick.begin(), pick.end()).size() != pick.size())
                            continue;
                        std::vector<Tuple> chosen;
                        for (int i : pick)
                            chosen.push_back(rows[static_cast<std::size_t>(i)]);
                        const TupleMatrix mat = TupleMatrix::from_rows(chosen, n);
                        const GeneralizedConstraint c(characteristic_function(mat, 2), class_image(cls, mat));
                        for (const auto& f : members) {
                            ++checks;
                            auto v = satisfies_constraint(f, c);
                            if (!v.satisfied) {
                                fail(r, "class #" + std::to_string(trial) + ": " + describe_op(f) +
                                            " violates the constraint of " + format_matrix(mat) + " on " +
                                            format_matrix(*v.witness));
                                break;
                            }
                        }
                    } while (r.passed && advance(pick, static_cast<int>(rows.size())));
                }
            }
        }
        if (r.passed)
            r.detail = "50 classes, " + std::to_string(checks) + " member/matrix pairs";
    });
}

CheckResult check_minor_preservation(std::uint64_t seed) {
    return timed("conjunctive minor preservation", [seed](CheckResult& r) {
        Rng rng(seed);
        const std::vector<std::string> pool = {"u", "v"};
        int constraint_premises = 0;
        int cluster_premises = 0;
        const std::uint64_t breadth = 3;

        for (int trial = 0; trial < 200 && r.passed; ++trial) {
            const MinorScheme h = random_scheme(rng, rng.range(1, 3), 2, 2, 3, pool);
            const Operation f = random_operation(rng, 2, rng.range(1, 2));
            const int col_cap = std::max(default_column_cap(h), f.arity());

            // Constraint form: a family f satisfies by construction.
            std::vector<GeneralizedConstraint> family;
            std::vector<Relation> consequents;
            for (int j = 0; j < h.family_size(); ++j) {
                const int nj = h.source_arity(j);
                RepetitionFunction phi(nj, 2, rng.chance(1, 2) ? ExtNat::infinity() : ExtNat(0));
                for (const auto& t : all_tuples(nj, 2))
                    if (rng.chance(1, 3))
                        phi.set(t, random_count(rng));
                Relation s = random_relation(rng, nj, 2, 1, 4);
                for (const auto& mat : enumerate_matrices_leq(phi, f.arity()))
                    s.insert(apply_op_rows(f, mat));
                family.emplace_back(phi, s);
                consequents.push_back(s);
            }
            RepetitionFunction phi(h.target(), 2, 0);
            for (const auto& t : all_tuples(h.target(), 2))
                if (rng.chance(1, 3))
                    phi.set(t, rng.chance(1, 4) ? ExtNat::infinity() : ExtNat(static_cast<std::uint64_t>(rng.range(1, 2))));
            Relation s = tight_relation_minor(h, consequents);
            for (const auto& t : all_tuples(h.target(), 2))
                if (rng.chance(1, 6))
                    s.insert(t);
            const GeneralizedConstraint c(phi, s);

            const bool family_ok = std::all_of(family.begin(), family.end(), [&](const auto& fc) {
                return satisfies_constraint(f, fc).satisfied;
            });
            if (family_ok && is_conjunctive_minor_constraint(c, family, h, col_cap).holds) {
                ++constraint_premises;
                const bool lib = satisfies_constraint(f, c).satisfied;
                const bool direct = oracle::satisfies_constraint(f, c);
                if (!lib || !direct)
                    fail(r, "instance #" + std::to_string(trial) + ": " + describe_op(f) + " violates the minor " +
                                format_constraint("c", c) + " via " + format_scheme(h));
            }

            // Cluster form: relations closed under f, padded with small trivial clusters.
            std::vector<Cluster> clusters;
            bool premise = true;
            for (int j = 0; j < h.family_size(); ++j) {
                const int nj = h.source_arity(j);
                Cluster cj(nj, 2);
                if (rng.chance(1, 3)) {
                    cj = random_cluster(rng, nj, 2);
                } else {
                    const Relation base = close_relation(random_relation(rng, nj, 2, 1, 4), f);
                    const Cluster parts[] = {relation_cluster(base),
                                             trivial_cluster(nj, static_cast<std::uint64_t>(rng.range(0, 2)), 2)};
                    cj = cluster_union(parts);
                }
                premise = premise && satisfies_cluster(f, cj, breadth).satisfied();
                clusters.push_back(std::move(cj));
            }
            if (premise) {
                ++cluster_premises;
                const Cluster minor = materialize_minor(clusters, h, breadth);
                const bool lib = satisfies_cluster(f, minor, breadth).satisfied();
                const bool direct = oracle::satisfies_breadth_restricted(f, minor, breadth);
                if (!lib || !direct)
                    fail(r, "instance #" + std::to_string(trial) + ": " + describe_op(f) +
                                " violates the cluster minor via " + format_scheme(h));
            }
        }
        if (r.passed)
            r.detail = "200 instances; premises held for " + std::to_string(constraint_premises) + " constraint and " +
                       std::to_string(cluster_premises) + " cluster families; 0 counterexamples";
    });
}

CheckResult check_trivial_constraint_fixtures() {
    return timed("trivial constraint fixtures", [](CheckResult& r) {
        int reproduced = 0;
        for (int k : {2, 3}) {
            for (int m = 1; m <= 4; ++m) {
                // The three distinguished constraints, built from their definitions.
                auto defined = [&](const std::string& which, int arity) {
                    RepetitionFunction phi(arity, k, 0);
                    Relation s(arity, k);
                    for (const auto& t : all_tuples(arity, k)) {
                        const bool constant = std::all_of(t.begin(), t.end(), [&](Elem x) { return x == t[0]; });
                        if (which == "trivial" || (which == "equality" && constant)) {
                            phi.set(t, ExtNat::infinity());
                            s.insert(t);
                        }
                    }
                    return GeneralizedConstraint(phi, s).normalized();
                };
                for (FixtureKind kind : all_fixture_kinds()) {
                    if (kind == FixtureKind::EqualityChain && m < 2)
                        continue;
                    const MinorScheme h = scheme_fixture(kind, m);
                    const auto family = fixture_family(kind, m, k, k);
                    const auto expected = fixture_expected(kind, m, k, k).normalized();
                    const std::string label = std::string(fixture_name(kind)) + " m=" + std::to_string(m) +
                                              " k=" + std::to_string(k);

                    std::string which = "trivial";
                    int arity = kind == FixtureKind::Identify ? 1 : m;
                    if (kind == FixtureKind::EqualityChain)
                        which = "equality";
                    else if (kind == FixtureKind::EmptySpread)
                        which = "empty";
                    if (!(expected == defined(which, arity)))
                        fail(r, label + ": expected object differs from the definition");

                    const auto built = pullback_minor(h, family).normalized();
                    if (!(built == expected))
                        fail(r, label + ": built " + format_constraint("got", built));

                    std::vector<Relation> consequents;
                    for (const auto& c : family)
                        consequents.push_back(c.consequent());
                    if (!(oracle::tight_minor(h, consequents) == expected.consequent()))
                        fail(r, label + ": tight minor of consequents differs");

                    auto verdict = is_conjunctive_minor_constraint(expected, family, h, default_column_cap(h));
                    if (!verdict.holds)
                        fail(r, label + ": not verified as a conjunctive minor (" + verdict.note + ")");
                    ++reproduced;
                }
            }
        }
        if (r.passed)
            r.detail = std::to_string(reproduced) + " scheme/arity/domain cases reproduced exactly";
    });
}

CheckResult check_composite_schemes(std::uint64_t seed) {
    return timed("composite schemes", [seed](CheckResult& r) {
        Rng rng(seed + 5);
        const std::vector<std::string> pool = {"u"};
        int nontrivial = 0;
        for (int trial = 0; trial < 100 && r.passed; ++trial) {
            const MinorScheme outer = random_scheme(rng, rng.range(1, 3), 1, 2, 3, pool);
            std::vector<MinorScheme> inner;
            std::vector<std::vector<Relation>> relations;
            for (int j = 0; j < outer.family_size(); ++j) {
                inner.push_back(random_scheme(rng, outer.source_arity(j), 1, 2, 3, pool));
                std::vector<Relation> rj;
                for (int i = 0; i < inner.back().family_size(); ++i)
                    rj.push_back(random_relation(rng, inner.back().source_arity(i), 2, 2, 3));
                relations.push_back(std::move(rj));
            }
            const CompositeScheme composite = compose_schemes(outer, inner);
            std::vector<Relation> flat;
            for (const auto& [j, i] : composite.origin)
                flat.push_back(relations[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);

            const Relation via_composite = tight_relation_minor(composite.scheme, flat);
            std::vector<Relation> middle;
            for (std::size_t j = 0; j < inner.size(); ++j)
                middle.push_back(tight_relation_minor(inner[j], relations[j]));
            const Relation nested = tight_relation_minor(outer, middle);

            std::vector<Relation> middle_direct;
            for (std::size_t j = 0; j < inner.size(); ++j)
                middle_direct.push_back(oracle::tight_minor(inner[j], relations[j]));
            const Relation nested_direct = oracle::tight_minor(outer, middle_direct);

            if (!(via_composite == nested) || !(via_composite == nested_direct) ||
                !(oracle::tight_minor(composite.scheme, flat) == nested_direct))
                fail(r, "stack #" + std::to_string(trial) + ": outer " + format_scheme(outer) + " composite " +
                            format_scheme(composite.scheme) + " gives " + format_relation(via_composite) +
                            " but nesting gives " + format_relation(nested_direct));
            if (!via_composite.empty() && via_composite.size() < checked_pow(2, static_cast<unsigned>(outer.target())))
                ++nontrivial;
        }
        if (r.passed)
            r.detail = "100 stacks, " + std::to_string(nontrivial) + " with a proper non-empty minor";
    });
}

CheckResult check_cluster_lemmas(std::uint64_t seed) {
    return timed("cluster lemmas", [seed](CheckResult& r) {
        Rng rng(seed + 11);
        const auto ops = operations_up_to(2, 2);
        std::uint64_t quotient_pairs = 0;
        std::uint64_t implications = 0;
        for (int trial = 0; trial < 100 && r.passed; ++trial) {
            const int m = rng.range(1, 3);
            const std::uint64_t b = static_cast<std::uint64_t>(rng.range(2, 5));
            const Cluster phi = random_cluster(rng, m, 2);
            const Cluster other = random_cluster(rng, m, 2);
            const ClusterTable table(phi);
            const std::string where = "cluster #" + std::to_string(trial) + " (B=" + std::to_string(b) + ") " +
                                      format_cluster("phi", phi);

            // Downward closure and the quotient law on all multisets of size <= 2.
            const auto small = all_multisets(m, 2, 2);
            for (const auto& s : small) {
                const Cluster q = quotient(phi, s);
                for (const auto& s2 : small) {
                    ++quotient_pairs;
                    const FiniteMultiset joined = ms_join(s, s2);
                    const bool direct = table.member(counts_of(joined, 2), joined.cardinality());
                    if (member(s2, q) != direct)
                        fail(r, where + ": quotient law fails for " + format_multiset(s) + " and " +
                                    format_multiset(s2));
                    if (direct && !member(s, phi))
                        fail(r, where + ": not downward closed at " + format_multiset(joined));
                }
            }

            const Cluster both[] = {phi, other};
            const Cluster joined = cluster_union(both);
            const std::uint64_t p = static_cast<std::uint64_t>(rng.range(1, 2));
            const Cluster padded_parts[] = {phi, trivial_cluster(m, p, 2)};
            const Cluster padded = cluster_union(padded_parts);
            const auto members = all_multisets(m, 2, static_cast<int>(b));

            for (const auto& f : ops) {
                const std::string fdesc = " for " + describe_op(f);
                const bool sat = satisfies_cluster(f, phi, b).satisfied();

                // Breadth restriction against the direct enumeration.
                if (sat != oracle::satisfies_breadth_restricted(f, phi, b))
                    fail(r, where + ": breadth-restricted satisfaction disagrees with the oracle" + fdesc);
                if (satisfies_cluster(f, breadth_restrict(phi, b), b + 1).satisfied() != sat)
                    fail(r, where + ": restricting the breadth changes the verdict" + fdesc);

                // Union lemma.
                if (sat && satisfies_cluster(f, other, b).satisfied()) {
                    ++implications;
                    if (!satisfies_cluster(f, joined, b).satisfied())
                        fail(r, where + ": union not satisfied" + fdesc);
                }

                // Quotients of a satisfied cluster are satisfied at the remaining breadth.
                if (sat) {
                    for (const auto& s : small) {
                        if (s.cardinality() + static_cast<std::uint64_t>(f.arity()) > b || !member(s, phi))
                            continue;
                        ++implications;
                        if (!satisfies_cluster(f, quotient(phi, s), b - s.cardinality()).satisfied())
                            fail(r, where + ": quotient by " + format_multiset(s) + " not satisfied" + fdesc);
                    }
                }

                // Dividend lemma on phi + trivial cluster of breadth p.
                bool quotients_ok = true;
                for (const auto& s : members) {
                    if (s.cardinality() < p || s.cardinality() + static_cast<std::uint64_t>(f.arity()) > b ||
                        !member(s, padded))
                        continue;
                    if (!satisfies_cluster(f, quotient(padded, s), b - s.cardinality()).satisfied()) {
                        quotients_ok = false;
                        break;
                    }
                }
                const bool padded_sat = satisfies_cluster(f, padded, b).satisfied();
                ++implications;
                if (quotients_ok && !padded_sat)
                    fail(r, where + ": dividend lemma fails with p=" + std::to_string(p) + fdesc);
                if (padded_sat && !quotients_ok)
                    fail(r, where + ": a quotient of a satisfied cluster is violated, p=" + std::to_string(p) + fdesc);
            }
        }
        if (r.passed)
            r.detail = "100 clusters x " + std::to_string(ops.size()) + " ops; " + std::to_string(quotient_pairs) +
                       " quotient pairs, " + std::to_string(implications) + " lemma instances";
    });
}

CheckResult check_round_trips() {
    return timed("galois round trips", [](CheckResult& r) {
        GaloisConfig cfg;
        const OperationClass mono = monotone_class_k2();
        const auto constraints = gc_inv(mono, cfg);
        const OperationClass back = f_pol(constraints, 2, 2, cfg);
        if (!(back == mono))
            fail(r, "f_pol(gc_inv(monotone)) has " + sizes_note(back) + ", expected " + sizes_note(mono));
        if (mono.size() != 9)
            fail(r, "the monotone fixture has " + sizes_note(mono) + ", expected 9");

        const OperationClass proj = projections_class(2, 2);
        const auto proj_clusters = cl_inv(proj, cfg);
        const OperationClass proj_back = c_pol(proj_clusters, 2, cfg);
        if (!(proj_back == proj))
            fail(r, "c_pol(cl_inv(projections)) has " + sizes_note(proj_back) + ", expected 3");

        const OperationClass lin = linear_class_fixture(3, 2, 2);
        const auto lin_clusters = cl_inv(lin, cfg);
        const OperationClass lin_back = c_pol(lin_clusters, 3, cfg);
        if (!(lin_back == lin))
            fail(r, "c_pol(cl_inv(linear 3,2,2)) has " + sizes_note(lin_back) + ", expected " + sizes_note(lin));
        if (r.passed)
            r.detail = "monotone 9 ops, projections 3 ops, linear GF(3) " + sizes_note(lin) + " recovered exactly";
    });
}

CheckResult check_separations() {
    return timed("separations", [](CheckResult& r) {
        GaloisConfig cfg;
        const Operation and_op(2, 2, {0, 0, 0, 1});
        const Operation or_op(2, 2, {0, 1, 1, 1});
        const Operation xor_op(2, 2, {0, 1, 1, 0});
        const Operation not_op(2, 1, {1, 0});
        const OperationClass proj = projections_class(2, 2);

        // (a) projections against AND.
        const auto sep = separating_cluster(proj, and_op, cfg);
        if (sep.witness.output != Tuple{0, 0, 0, 1})
            fail(r, "AND separation output is " + tuple_to_string(sep.witness.output));
        if (satisfies_cluster(and_op, sep.cluster, sep.breadth).satisfied())
            fail(r, "AND satisfies its separating cluster");
        for (const auto& p : proj.members())
            if (!satisfies_cluster(p, sep.cluster, std::max<std::uint64_t>(sep.breadth, 2)).satisfied())
                fail(r, "projection " + describe_op(p) + " rejected by the AND separator");
        const auto csep = separating_constraint(proj, and_op);
        if (!(csep.constraint.consequent() == Relation(4, 2, {{0, 0, 1, 1}, {0, 1, 0, 1}})) ||
            csep.image != Tuple{0, 0, 0, 1})
            fail(r, "separating constraint for AND differs from the expected (chi_M, {(0,0,1,1),(0,1,0,1)})");

        // (b) XOR against the order cluster of 0 < 1.
        const PartialOrder chain = PartialOrder::chain(2);
        const Cluster ord = order_cluster(chain);
        const auto v = satisfies_cluster(xor_op, ord, 4);
        if (v.satisfied() || !v.witness) {
            fail(r, "XOR satisfies the order cluster");
        } else {
            const FiniteMultiset expected_first(4, {{0, 1, 0, 1}, {0, 0, 1, 1}});
            if (!(columns_multiset(v.witness->first) == expected_first) || !v.witness->rest.empty() ||
                v.witness->output != Tuple{0, 1, 1, 0})
                fail(r, "XOR witness is " + format_matrix(v.witness->first) + " rest " +
                            format_multiset(v.witness->rest) + " output " + tuple_to_string(v.witness->output));
            FiniteMultiset out = v.witness->rest;
            out.add(v.witness->output);
            if (member(out, ord))
                fail(r, "the XOR witness output is a member of the order cluster");
        }
        const Operation const0(2, 1, {0, 0});
        const Operation const1(2, 1, {1, 1});
        for (const auto& g : {and_op, or_op, not_op, const0, const1})
            if (!satisfies_cluster(g, ord, 4).satisfied())
                fail(r, describe_op(g) + " violates the order cluster at breadth 4");
        const Cluster ord_only[] = {ord};
        const OperationClass ord_pol = c_pol(ord_only, 2, cfg);
        OperationClass direct(2);
        for (const auto& g : operations_up_to(2, 2))
            if (oracle::preserving_or_reversing_each_variable(g, chain))
                direct.insert(g);
        if (!(ord_pol == direct))
            fail(r, "c_pol(order cluster) has " + sizes_note(ord_pol) + " but the direct check finds " +
                        sizes_note(direct));

        // (c) identification applied to x+y+z over GF(3).
        const Operation sum3 = Operation::from_function(3, 3, 3, [](std::span<const Elem> x) {
            return static_cast<Elem>((x[0] + x[1] + x[2]) % 3);
        });
        const Operation identified = delta(sum3);
        const OperationClass lin = linear_class_fixture(3, 2, 3);
        if (lin.contains(identified))
            fail(r, "the identified sum lies in the linear fixture");
        const auto lin_clusters = cl_inv(lin, cfg);
        const bool excluded = std::any_of(lin_clusters.begin(), lin_clusters.end(), [&](const Cluster& c) {
            return !satisfies_cluster(identified, c, 4).satisfied();
        });
        if (!excluded)
            fail(r, "the identified sum satisfies every invariant cluster of the linear fixture");
        for (const auto& c : lin_clusters)
            if (!satisfies_cluster(sum3, c, 4).satisfied())
                fail(r, "x+y+z violates an invariant cluster of its own class");
        if (r.passed)
            r.detail = "AND/projections, XOR/order (" + sizes_note(direct) + " order-compatible), 2x+y/linear GF(3)";
    });
}

CheckResult check_relation_cluster_oracle() {
    return timed("relation cluster oracle", [](CheckResult& r) {
        const auto ops = operations_up_to(2, 2);
        int agreements = 0;
        for (int mask = 0; mask < 16; ++mask) {
            Relation rel(2, 2);
            for (int i = 0; i < 4; ++i)
                if ((mask >> i) & 1)
                    rel.insert(unrank(i, 2, 2));
            const Cluster c = relation_cluster(rel);
            for (const auto& f : ops) {
                const bool lib = satisfies_cluster(f, c, 4).satisfied();
                if (lib != oracle::preserves_relation(f, rel))
                    fail(r, describe_op(f) + " on " + format_relation(rel) + ": cluster says " +
                                (lib ? "satisfied" : "violated"));
                else
                    ++agreements;
            }
        }
        if (r.passed)
            r.detail = std::to_string(agreements) + " relation/operation pairs agree";
    });
}

CheckResult check_composition_closure(std::uint64_t seed) {
    return timed("composition closure", [seed](CheckResult& r) {
        Rng rng(seed + 17);
        const auto ops = operations_up_to(2, 2);
        int checked = 0;
        for (int trial = 0; trial < 30 && r.passed; ++trial) {
            const Cluster c = random_cluster(rng, rng.range(1, 2), 2);
            std::vector<Operation> sat;
            for (const auto& f : ops)
                if (satisfies_cluster(f, c, 4).satisfied())
                    sat.push_back(f);
            for (const auto& f : sat)
                for (const auto& g : sat) {
                    ++checked;
                    if (!satisfies_cluster(star(f, g), c, 4).satisfied())
                        fail(r, describe_op(f) + " * " + describe_op(g) + " violates " + format_cluster("c", c));
                }
        }
        if (r.passed)
            r.detail = std::to_string(checked) + " compositions of satisfying pairs stay satisfying";
    });
}

CheckResult check_antitone_laws() {
    return timed("antitone laws", [](CheckResult& r) {
        GaloisConfig cfg;
        const OperationClass mono = monotone_class_k2();
        const auto all = gc_inv(mono, cfg);
        const std::vector<GeneralizedConstraint> half(all.begin(), all.begin() + static_cast<long>(all.size() / 2));
        if (!f_pol(all, 2, 2, cfg).is_subset_of(f_pol(half, 2, 2, cfg)))
            fail(r, "f_pol is not antitone");

        const OperationClass proj = projections_class(2, 2);
        for (const auto& c : gc_inv(mono, cfg))
            for (const auto& f : proj.members())
                if (!satisfies_constraint(f, c).satisfied)
                    fail(r, "a constraint of gc_inv(monotone) is violated by a projection");
        for (const auto& c : cl_inv(mono, cfg))
            for (const auto& f : proj.members())
                if (!satisfies_cluster(f, c, cfg.breadth_cap).satisfied())
                    fail(r, "a cluster of cl_inv(monotone) is violated by a projection");

        const Cluster ord = order_cluster(PartialOrder::chain(2));
        const Cluster one[] = {ord};
        const Cluster two[] = {ord, relation_cluster(Relation(2, 2, {{0, 0}, {0, 1}, {1, 1}}))};
        if (!c_pol(two, 2, cfg).is_subset_of(c_pol(one, 2, cfg)))
            fail(r, "c_pol is not antitone");
        if (r.passed)
            r.detail = "f_pol, gc_inv, cl_inv and c_pol reverse inclusions on the fixtures";
    });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"malcev", "chi-m", "minors", "lemma-all", "claim1",
                                                   "cluster-lemmas", "roundtrip", "separation", "all"};
    return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed,
                                   const std::function<void(const CheckResult&)>& report) {
    using Check = std::function<CheckResult()>;
    const std::vector<std::pair<std::string, std::vector<Check>>> suites = {
        {"malcev", {[] { return check_malcev_identities(); }}},
        {"chi-m", {[seed] { return check_characteristic_matrices(seed); }}},
        {"minors", {[seed] { return check_minor_preservation(seed); }}},
        {"lemma-all", {[] { return check_trivial_constraint_fixtures(); }}},
        {"claim1", {[seed] { return check_composite_schemes(seed); }}},
        {"cluster-lemmas",
         {[seed] { return check_cluster_lemmas(seed); }, [] { return check_relation_cluster_oracle(); },
          [seed] { return check_composition_closure(seed); }}},
        {"roundtrip", {[] { return check_round_trips(); }, [] { return check_antitone_laws(); }}},
        {"separation", {[] { return check_separations(); }}},
    };
    std::vector<CheckResult> out;
    bool known = false;
    for (const auto& [name, checks] : suites) {
        if (suite != "all" && suite != name)
            continue;
        known = true;
        for (const auto& check : checks) {
            out.push_back(check());
            if (report)
                report(out.back());
        }
    }
    if (!known)
        throw PreconditionError("unknown suite '" + suite + "'");
    return out;
}

}  // namespace gk
