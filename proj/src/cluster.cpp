#include "galoiskit/cluster.hpp"

#include <algorithm>
#include <set>

namespace gk {

Cluster::Cluster(int arity, int k, std::vector<BoxedGenerator> generators) : arity_(arity), k_(k) {
    if (arity < 1)
        throw PreconditionError("clusters have arity >= 1");
    if (k < 1)
        throw PreconditionError("domain size must be positive");
    for (auto& g : generators)
        add(std::move(g));
}

void Cluster::add(BoxedGenerator g) {
    if (g.box.arity() != arity_ || g.box.domain_size() != k_)
        throw PreconditionError("generator box does not match the cluster's arity and domain");
    generators_.push_back(std::move(g));
}

namespace {
    bool fits(const FiniteMultiset& s, const BoxedGenerator& g) {
        if (ExtNat(s.cardinality()) > g.cap)
            return false;
        return std::all_of(s.entries().begin(), s.entries().end(),
                           [&](const auto& e) { return ExtNat(e.second) <= g.box(e.first); });
    }

    void check_arity(const FiniteMultiset& s, const Cluster& c) {
        if (s.arity() != c.arity())
            throw PreconditionError("multiset arity " + std::to_string(s.arity()) + " differs from cluster arity " +
                                    std::to_string(c.arity()));
    }

    ExtNat effective_cap(const BoxedGenerator& g) { return std::min(g.cap, g.box.total()); }

    // Calls visit on every multiset of exactly `size` elements inside the box.
    bool for_each_in_box(const RepetitionFunction& box, std::uint64_t size,
                         const std::function<bool(const FiniteMultiset&)>& visit) {
        const auto support = box.support();
        std::vector<ExtNat> bounds;
        for (const auto& t : support)
            bounds.push_back(box(t));
        bool go_on = true;
        for_each_bounded_multiset(box.arity(), support, bounds, size, [&](const FiniteMultiset& s) {
            go_on = visit(s);
            return go_on;
        });
        return go_on;
    }

    std::uint64_t clamp(ExtNat x, std::uint64_t limit) {
        return x.is_infinite() ? limit : std::min(x.value(), limit);
    }

    // Checks every split of s; returns the first violation.
    std::optional<ClusterWitness> check_splits(const Operation& f, const Cluster& c, const FiniteMultiset& s,
                                               const Budget& budget) {
        std::optional<ClusterWitness> found;
        for_each_split(s, f.arity(), [&](const Split& sp) {
            budget.charge(1, "checking cluster splits");
            Tuple out = apply_op_rows(f, sp.first);
            FiniteMultiset image = sp.rest;
            image.add(out);
            if (member(image, c))
                return true;
            found = ClusterWitness{s, sp.first, sp.rest, std::move(out)};
            return false;
        });
        return found;
    }
}

bool member(const FiniteMultiset& s, const Cluster& c) {
    check_arity(s, c);
    return std::any_of(c.generators().begin(), c.generators().end(), [&](const auto& g) { return fits(s, g); });
}

bool member(const TupleMatrix& m, const Cluster& c) {
    return member(columns_multiset(m), c);
}

void for_each_member(const Cluster& c, std::uint64_t max_size, const std::function<bool(const FiniteMultiset&)>& visit,
                     const Budget& budget) {
    for (std::uint64_t size = 0; size <= max_size; ++size) {
        std::set<FiniteMultiset> level;
        for (const auto& g : c.generators()) {
            if (effective_cap(g) < ExtNat(size))
                continue;
            for_each_in_box(g.box, size, [&](const FiniteMultiset& s) {
                budget.charge(1, "enumerating cluster members");
                level.insert(s);
                return true;
            });
        }
        if (level.empty())
            return;  // downward closed: nothing larger either
        for (const auto& s : level)
            if (!visit(s))
                return;
    }
}

ClusterVerdict satisfies_cluster(const Operation& f, const Cluster& c, std::uint64_t breadth,
                                 const Budget& budget) {
    if (f.domain_size() != c.domain_size() || f.codomain_size() != c.domain_size())
        throw PreconditionError("satisfies_cluster: operation and cluster live on different sets");
    ClusterVerdict verdict;
    const auto n = static_cast<std::uint64_t>(f.arity());
    if (breadth < n) {
        verdict.status = ClusterStatus::BreadthBelowArity;
        return verdict;
    }

    // A violation on S persists on every member containing S, so the
    // widest members of each generator decide the verdict.
    bool violated = false;
    for (const auto& g : c.generators()) {
        std::uint64_t width = clamp(effective_cap(g), breadth);
        if (width < n)
            continue;
        for_each_in_box(g.box, width, [&](const FiniteMultiset& s) {
            violated = check_splits(f, c, s, budget).has_value();
            return !violated;
        });
        if (violated)
            break;
    }
    if (!violated)
        return verdict;

    // Rescan in canonical order so the reported witness is the first one.
    for_each_member(
        c, breadth,
        [&](const FiniteMultiset& s) {
            if (s.cardinality() < n)
                return true;
            verdict.witness = check_splits(f, c, s, budget);
            return !verdict.witness.has_value();
        },
        budget);
    verdict.status = ClusterStatus::Violated;
    return verdict;
}

Cluster quotient(const Cluster& c, const FiniteMultiset& s) {
    check_arity(s, c);
    Cluster out(c.arity(), c.domain_size());
    for (const auto& g : c.generators()) {
        if (!fits(s, g))
            continue;
        RepetitionFunction box = g.box;
        for (const auto& [t, n] : s.entries())
            box.set(t, g.box(t).minus(n));
        out.add({box, g.cap.minus(s.cardinality())});
    }
    return out;
}

Cluster cluster_union(std::span<const Cluster> family) {
    if (family.empty())
        throw PreconditionError("union of an empty family of clusters");
    Cluster out(family.front().arity(), family.front().domain_size());
    for (const auto& c : family) {
        if (c.arity() != out.arity() || c.domain_size() != out.domain_size())
            throw PreconditionError("union of clusters of different shapes");
        for (const auto& g : c.generators())
            out.add(g);
    }
    return out;
}

Cluster intersect(const Cluster& a, const Cluster& b) {
    if (a.arity() != b.arity() || a.domain_size() != b.domain_size())
        throw PreconditionError("intersection of clusters of different shapes");
    Cluster out(a.arity(), a.domain_size());
    for (const auto& g : a.generators())
        for (const auto& h : b.generators())
            out.add({rf_pointwise_min(g.box, h.box), std::min(g.cap, h.cap)});
    return out;
}

Cluster breadth_restrict(const Cluster& c, std::uint64_t p) {
    Cluster out(c.arity(), c.domain_size());
    for (const auto& g : c.generators())
        out.add({g.box, std::min(g.cap, ExtNat(p))});
    return out;
}

std::optional<ExtNat> breadth(const Cluster& c) {
    std::optional<ExtNat> best;
    for (const auto& g : c.generators()) {
        ExtNat b = effective_cap(g);
        if (!best || b > *best)
            best = b;
    }
    return best;
}

Cluster normalize(const Cluster& c) {
    const auto& gens = c.generators();
    Cluster out(c.arity(), c.domain_size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < gens.size() && !dominated; ++j) {
            if (i == j)
                continue;
            bool inside = rf_leq(gens[i].box, gens[j].box) && effective_cap(gens[i]) <= gens[j].cap;
            if (!inside)
                continue;
            bool mutual = rf_leq(gens[j].box, gens[i].box) && effective_cap(gens[j]) <= gens[i].cap;
            dominated = !mutual || j < i;
        }
        if (!dominated)
            out.add(gens[i]);
    }
    return out;
}

Cluster trivial_cluster(int m, std::uint64_t p, int k) {
    return Cluster(m, k, {{RepetitionFunction(m, k, ExtNat::infinity()), ExtNat(p)}});
}

Cluster empty_cluster(int m, int k) {
    return Cluster(m, k);
}

Cluster equality_cluster(int k) {
    RepetitionFunction box(2, k, 0);
    for (Elem x = 0; x < k; ++x)
        box.set({x, x}, ExtNat::infinity());
    return Cluster(2, k, {{box, ExtNat::infinity()}});
}

Cluster relation_cluster(const Relation& r) {
    RepetitionFunction box(r.arity(), r.domain_size(), 0);
    for (const auto& t : r.tuples())
        box.set(t, ExtNat::infinity());
    return Cluster(r.arity(), r.domain_size(), {{box, ExtNat::infinity()}});
}

PartialOrder::PartialOrder(int k, const std::vector<std::pair<Elem, Elem>>& leq_pairs)
    : k_(k), leq_(static_cast<std::size_t>(k * k), false) {
    if (k < 1)
        throw PreconditionError("domain size must be positive");
    for (auto [a, b] : leq_pairs) {
        if (a < 0 || a >= k || b < 0 || b >= k)
            throw PreconditionError("order pair outside the domain");
        leq_[static_cast<std::size_t>(a * k + b)] = true;
    }
    for (Elem a = 0; a < k; ++a) {
        if (!leq(a, a))
            throw PreconditionError("order is not reflexive at " + std::to_string(a));
        for (Elem b = 0; b < k; ++b) {
            if (a != b && leq(a, b) && leq(b, a))
                throw PreconditionError("order is not antisymmetric on " + std::to_string(a) + ", " +
                                        std::to_string(b));
            for (Elem c = 0; c < k; ++c)
                if (leq(a, b) && leq(b, c) && !leq(a, c))
                    throw PreconditionError("order is not transitive");
        }
    }
}

PartialOrder PartialOrder::chain(int k) {
    std::vector<std::pair<Elem, Elem>> pairs;
    for (Elem a = 0; a < k; ++a)
        for (Elem b = a; b < k; ++b)
            pairs.emplace_back(a, b);
    return PartialOrder(k, pairs);
}

Cluster order_cluster(const PartialOrder& order) {
    const int k = order.size();
    auto lt = [&](Elem x, Elem y) { return x != y && order.leq(x, y); };
    auto comparable = [&](Elem x, Elem y) { return order.leq(x, y) || order.leq(y, x); };

    std::vector<Tuple> in_x;
    std::vector<Tuple> free;
    Tuple t(4, 0);
    do {
        Elem a = t[0], b = t[1], c = t[2], d = t[3];
        bool forbidden = (lt(a, b) && lt(d, c)) || (lt(b, a) && lt(c, d)) || !comparable(a, b) || !comparable(c, d);
        if (forbidden)
            continue;
        bool same_direction = (order.leq(a, b) && order.leq(c, d)) || (order.leq(b, a) && order.leq(d, c));
        if (same_direction && (a != b || c != d))
            in_x.push_back(t);
        else
            free.push_back(t);
    } while (next_tuple(t, k));

    RepetitionFunction base(4, k, 0);
    for (const auto& u : free)
        base.set(u, ExtNat::infinity());
    Cluster out(4, k);
    for (const auto& x : in_x) {
        RepetitionFunction box = base;
        box.set(x, 1);
        out.add({box, ExtNat::infinity()});
    }
    out.add({base, ExtNat::infinity()});
    return out;
}

namespace {
    void check_cluster_family(const std::vector<Cluster>& family, const MinorScheme& h) {
        if (static_cast<int>(family.size()) != h.family_size())
            throw PreconditionError("family size differs from the number of scheme maps");
        for (std::size_t j = 0; j < family.size(); ++j) {
            if (family[j].arity() != h.source_arity(static_cast<int>(j)))
                throw PreconditionError("cluster " + std::to_string(j) + " does not match its scheme map's arity");
            if (family[j].domain_size() != family.front().domain_size())
                throw PreconditionError("clusters over different sets");
        }
    }
}

bool cluster_minor_member(const FiniteMultiset& s, const std::vector<Cluster>& family, const MinorScheme& h,
                          const Budget& budget) {
    check_cluster_family(family, h);
    if (s.arity() != h.target())
        throw PreconditionError("multiset arity differs from the scheme target");
    return exists_skolem_columns(
        h, family.front().domain_size(), s.elements(),
        [&](int j, const FiniteMultiset& image) { return member(image, family[static_cast<std::size_t>(j)]); },
        budget);
}

Cluster materialize_minor(const std::vector<Cluster>& family, const MinorScheme& h, std::uint64_t breadth_cap,
                          const Budget& budget) {
    check_cluster_family(family, h);
    const int m = h.target();
    const int k = family.front().domain_size();
    Cluster out(m, k);
    const auto tuples = all_tuples(m, k);

    std::set<FiniteMultiset> level;
    if (!cluster_minor_member(FiniteMultiset(m), family, h, budget))
        return out;
    level.insert(FiniteMultiset(m));

    for (std::uint64_t size = 0;; ++size) {
        std::set<FiniteMultiset> next;
        if (size < breadth_cap) {
            // Each multiset is generated once, from itself minus its largest element.
            for (const auto& s : level) {
                const Tuple* last = s.empty() ? nullptr : &s.entries().rbegin()->first;
                for (const auto& a : tuples) {
                    if (last && a < *last)
                        continue;
                    FiniteMultiset bigger = s;
                    bigger.add(a);
                    budget.charge(1, "materializing a cluster minor");
                    if (cluster_minor_member(bigger, family, h, budget))
                        next.insert(std::move(bigger));
                }
            }
        }
        for (const auto& s : level) {
            bool extends = std::any_of(tuples.begin(), tuples.end(), [&](const Tuple& a) {
                FiniteMultiset bigger = s;
                bigger.add(a);
                return next.contains(bigger);
            });
            if (!extends)
                out.add({as_repetition_function(s, k), ExtNat(s.cardinality())});
        }
        if (next.empty())
            break;
        level = std::move(next);
    }
    return out;
}

}  // namespace gk
