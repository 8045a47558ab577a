#include "galoiskit/galois.hpp"

#include <algorithm>
#include <set>

namespace gk {

void GaloisConfig::validate() const {
    if (arity_cap < 1 || constraint_arity_cap < 1 || column_cap < 1 || breadth_cap < 1)
        throw PreconditionError("all Galois caps must be >= 1");
}

Relation class_image(const OperationClass& c, const TupleMatrix& m) {
    Relation out(m.rows(), c.codomain_size());
    if (m.cols() == 0)
        return out;
    for (const auto& f : c.part(m.cols()))
        out.insert(apply_op_rows(f, m));
    return out;
}

namespace {
    // Calls visit on every increasing index sequence of length r from {0..n-1}.
    void for_each_combination(int n, int r, const std::function<void(const std::vector<int>&)>& visit) {
        std::vector<int> idx(static_cast<std::size_t>(r));
        auto rec = [&](auto&& self, int pos, int from) -> void {
            if (pos == r) {
                visit(idx);
                return;
            }
            for (int i = from; i <= n - (r - pos); ++i) {
                idx[static_cast<std::size_t>(pos)] = i;
                self(self, pos + 1, i + 1);
            }
        };
        rec(rec, 0, 0);
    }
}

std::vector<GeneralizedConstraint> gc_inv(const OperationClass& c, const GaloisConfig& cfg) {
    cfg.validate();
    const OperationClass closed = close_perm_dummy(c, std::max(cfg.column_cap, c.max_arity()));
    const int k = c.domain_size();
    std::vector<GeneralizedConstraint> out;
    for (int n = 1; n <= cfg.column_cap; ++n) {
        const auto rows = all_tuples(n, k);
        const int total = static_cast<int>(rows.size());
        for (int m = 1; m <= std::min(cfg.constraint_arity_cap, total); ++m) {
            for_each_combination(total, m, [&](const std::vector<int>& pick) {
                cfg.budget.charge(1, "building invariant constraints");
                std::vector<Tuple> chosen;
                for (int i : pick)
                    chosen.push_back(rows[static_cast<std::size_t>(i)]);
                TupleMatrix mat = TupleMatrix::from_rows(chosen, n);
                out.emplace_back(characteristic_function(mat, k), class_image(closed, mat));
            });
        }
    }
    return out;
}

OperationClass f_pol(std::span<const GeneralizedConstraint> t, int k_in, int k_out, const GaloisConfig& cfg) {
    cfg.validate();
    for (const auto& c : t)
        if (c.domain_size() != k_in || c.codomain_size() != k_out)
            throw PreconditionError("f_pol: constraint runs between different sets");
    OperationClass out(k_in, k_out);
    for (int n = 1; n <= cfg.arity_cap; ++n)
        for (const auto& f : all_operations(k_in, k_out, n, cfg.budget))
            if (std::all_of(t.begin(), t.end(),
                            [&](const auto& c) { return satisfies_constraint(f, c, cfg.budget).satisfied; }))
                out.insert(f);
    return out;
}

Cluster cluster_from_closed_class(const OperationClass& closed, int n, const Budget& budget) {
    if (closed.domain_size() != closed.codomain_size())
        throw PreconditionError("clusters need operations on a single set");
    const int k = closed.domain_size();
    const TupleMatrix all_rows = all_rows_matrix(n, k);
    const int m = all_rows.rows();
    const auto& columns = all_rows.columns();

    std::set<FiniteMultiset> found;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        FiniteMultiset x(m);
        FiniteMultiset rest(m);
        for (int i = 0; i < n; ++i)
            ((mask >> i) & 1u ? x : rest).add(columns[static_cast<std::size_t>(i)]);

        for (const auto& blocks : ms_partitions(rest)) {
            std::vector<std::vector<Tuple>> images;
            for (const auto& block : blocks) {
                TupleMatrix sub(m, block.elements());
                const auto img = class_image(closed, sub).tuples();
                images.emplace_back(img.begin(), img.end());
            }
            // Every choice of one image column per block.
            std::vector<std::size_t> pick(blocks.size(), 0);
            bool more = std::all_of(images.begin(), images.end(), [](const auto& v) { return !v.empty(); });
            while (more) {
                budget.charge(1, "building the invariant cluster");
                FiniteMultiset s = x;
                for (std::size_t b = 0; b < blocks.size(); ++b)
                    s.add(images[b][pick[b]]);
                found.insert(std::move(s));
                more = false;
                for (std::size_t b = blocks.size(); b-- > 0;) {
                    if (++pick[b] < images[b].size()) {
                        more = true;
                        break;
                    }
                    pick[b] = 0;
                }
            }
        }
    }

    Cluster out(m, k);
    for (const auto& s : found)
        out.add({as_repetition_function(s, k), ExtNat(s.cardinality())});
    return normalize(out);
}

std::vector<Cluster> cl_inv(const OperationClass& f, const GaloisConfig& cfg) {
    cfg.validate();
    const OperationClass closed = close_composition(f, std::max(cfg.arity_cap, f.max_arity()), cfg.budget);
    std::vector<Cluster> out;
    for (int n = 1; n <= cfg.arity_cap; ++n)
        out.push_back(cluster_from_closed_class(closed, n, cfg.budget));
    return out;
}

OperationClass c_pol(std::span<const Cluster> t, int k, const GaloisConfig& cfg) {
    cfg.validate();
    if (cfg.breadth_cap < static_cast<std::uint64_t>(cfg.arity_cap))
        throw PreconditionError("c_pol: breadth cap is below the arity cap, so wide operations cannot be split");
    for (const auto& c : t)
        if (c.domain_size() != k)
            throw PreconditionError("c_pol: cluster over a different set");
    OperationClass out(k, k);
    for (int n = 1; n <= cfg.arity_cap; ++n)
        for (const auto& f : all_operations(k, k, n, cfg.budget))
            if (std::all_of(t.begin(), t.end(), [&](const Cluster& c) {
                    return satisfies_cluster(f, c, cfg.breadth_cap, cfg.budget).satisfied();
                }))
                out.insert(f);
    return out;
}

ConstraintSeparation separating_constraint(const OperationClass& f, const Operation& g) {
    if (f.empty())
        throw PreconditionError("separating_constraint: the class is empty, so any unsatisfiable constraint separates");
    if (f.domain_size() != g.domain_size() || f.codomain_size() != g.codomain_size())
        throw PreconditionError("separating_constraint: operation and class live on different sets");
    const int n = g.arity();
    const OperationClass closed = close_perm_dummy(f, std::max(n, f.max_arity()));
    if (closed.contains(g))
        throw NoSeparatorError("the operation belongs to the class closed under permutation and dummy variables");

    const TupleMatrix m = all_rows_matrix(n, g.domain_size());
    GeneralizedConstraint c(characteristic_function(m, g.domain_size()), class_image(closed, m));

    auto verdict = satisfies_constraint(g, c);
    if (verdict.satisfied)
        throw Error("internal: separating constraint is satisfied by the operation");
    for (const auto& member : f.members())
        if (!satisfies_constraint(member, c).satisfied)
            throw Error("internal: separating constraint is violated by a class member");
    return {c, *verdict.witness, *verdict.image};
}

ClusterSeparation separating_cluster(const OperationClass& f, const Operation& g, const GaloisConfig& cfg) {
    cfg.validate();
    if (f.domain_size() != f.codomain_size() || g.domain_size() != f.domain_size() ||
        g.codomain_size() != f.domain_size())
        throw PreconditionError("separating_cluster: operation and class live on different sets");
    const int n = g.arity();
    const OperationClass closed =
        close_composition(f, std::max({cfg.arity_cap, n, f.max_arity()}), cfg.budget);
    if (closed.contains(g))
        throw NoSeparatorError("the operation belongs to the class closed under composition with projections");

    Cluster cluster = cluster_from_closed_class(closed, n, cfg.budget);
    const std::uint64_t b = std::max<std::uint64_t>(cfg.breadth_cap, static_cast<std::uint64_t>(n));
    auto verdict = satisfies_cluster(g, cluster, b, cfg.budget);
    if (verdict.satisfied())
        throw Error("internal: separating cluster is satisfied by the operation");
    for (const auto& member : f.members()) {
        auto width = std::max<std::uint64_t>(b, static_cast<std::uint64_t>(member.arity()));
        if (!satisfies_cluster(member, cluster, width, cfg.budget).satisfied())
            throw Error("internal: separating cluster is violated by a class member");
    }
    return {cluster, *verdict.witness, b};
}

}  // namespace gk
