#include "galoiskit/multiset.hpp"

#include <algorithm>
#include <set>

namespace gk {

FiniteMultiset::FiniteMultiset(int arity) : arity_(arity) {
    if (arity < 1)
        throw PreconditionError("multisets of m-tuples need m >= 1");
}

FiniteMultiset::FiniteMultiset(int arity, const std::vector<Tuple>& elements) : FiniteMultiset(arity) {
    for (const auto& t : elements)
        add(t);
}

std::uint64_t FiniteMultiset::count(const Tuple& t) const {
    auto it = counts_.find(t);
    return it == counts_.end() ? 0 : it->second;
}

std::vector<Tuple> FiniteMultiset::elements() const {
    std::vector<Tuple> out;
    out.reserve(static_cast<std::size_t>(cardinality_));
    for (const auto& [t, n] : counts_)
        out.insert(out.end(), n, t);
    return out;
}

void FiniteMultiset::add(const Tuple& t, std::uint64_t n) {
    if (static_cast<int>(t.size()) != arity_)
        throw PreconditionError("tuple " + tuple_to_string(t) + " does not have arity " + std::to_string(arity_));
    if (std::any_of(t.begin(), t.end(), [](Elem x) { return x < 0; }))
        throw PreconditionError("tuple " + tuple_to_string(t) + " has a negative entry");
    if (n == 0)
        return;
    counts_[t] += n;
    cardinality_ += n;
}

void FiniteMultiset::remove(const Tuple& t, std::uint64_t n) {
    auto it = counts_.find(t);
    if (it == counts_.end())
        return;
    auto take = std::min(n, it->second);
    it->second -= take;
    cardinality_ -= take;
    if (it->second == 0)
        counts_.erase(it);
}

std::strong_ordering operator<=>(const FiniteMultiset& a, const FiniteMultiset& b) {
    if (auto c = a.arity_ <=> b.arity_; c != 0)
        return c;
    return std::lexicographical_compare_three_way(a.counts_.begin(), a.counts_.end(), b.counts_.begin(),
                                                  b.counts_.end());
}

namespace {
    void check_same_arity(const FiniteMultiset& a, const FiniteMultiset& b) {
        if (a.arity() != b.arity())
            throw PreconditionError("multisets of different arities");
    }
}

FiniteMultiset ms_join(const FiniteMultiset& a, const FiniteMultiset& b) {
    check_same_arity(a, b);
    FiniteMultiset out = a;
    for (const auto& [t, n] : b.entries())
        out.add(t, n);
    return out;
}

FiniteMultiset ms_diff(const FiniteMultiset& a, const FiniteMultiset& b) {
    check_same_arity(a, b);
    FiniteMultiset out = a;
    for (const auto& [t, n] : b.entries())
        out.remove(t, n);
    return out;
}

bool ms_sub(const FiniteMultiset& sub, const FiniteMultiset& sup) {
    check_same_arity(sub, sup);
    return std::all_of(sub.entries().begin(), sub.entries().end(),
                       [&](const auto& e) { return e.second <= sup.count(e.first); });
}

namespace {
    // The block holding the smallest remaining element ranges over that element
    // plus every submultiset of the rest. Identical elements make some families
    // appear more than once; they are deduplicated as sorted block lists.
    void partitions_rec(const FiniteMultiset& rest, std::vector<FiniteMultiset>& blocks,
                        std::set<std::vector<FiniteMultiset>>& out) {
        if (rest.empty()) {
            auto sorted = blocks;
            std::sort(sorted.begin(), sorted.end());
            out.insert(std::move(sorted));
            return;
        }
        const Tuple first = rest.entries().begin()->first;
        FiniteMultiset others = rest;
        others.remove(first);

        std::vector<Tuple> support;
        std::vector<ExtNat> bounds;
        for (const auto& [t, n] : others.entries()) {
            support.push_back(t);
            bounds.emplace_back(n);
        }
        for (std::uint64_t size = 0; size <= others.cardinality(); ++size)
            for_each_bounded_multiset(rest.arity(), support, bounds, size, [&](const FiniteMultiset& extra) {
                FiniteMultiset block = extra;
                block.add(first);
                blocks.push_back(block);
                partitions_rec(ms_diff(rest, block), blocks, out);
                blocks.pop_back();
                return true;
            });
    }
}

std::vector<std::vector<FiniteMultiset>> ms_partitions(const FiniteMultiset& s) {
    std::set<std::vector<FiniteMultiset>> found;
    std::vector<FiniteMultiset> blocks;
    partitions_rec(s, blocks, found);
    return {found.begin(), found.end()};
}

TupleMatrix::TupleMatrix(int rows) : rows_(rows) {
    if (rows < 1)
        throw PreconditionError("matrices need at least one row");
}

TupleMatrix::TupleMatrix(int rows, std::vector<Tuple> columns) : TupleMatrix(rows) {
    for (auto& c : columns)
        push_column(std::move(c));
}

TupleMatrix TupleMatrix::from_rows(const std::vector<Tuple>& rows, int cols) {
    TupleMatrix m(static_cast<int>(rows.size()));
    for (int j = 0; j < cols; ++j) {
        Tuple c;
        c.reserve(rows.size());
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != cols)
                throw PreconditionError("row " + tuple_to_string(r) + " does not have " + std::to_string(cols) +
                                        " entries");
            c.push_back(r[static_cast<std::size_t>(j)]);
        }
        m.push_column(std::move(c));
    }
    return m;
}

Tuple TupleMatrix::row(int i) const {
    Tuple r;
    r.reserve(columns_.size());
    for (const auto& c : columns_)
        r.push_back(c[static_cast<std::size_t>(i)]);
    return r;
}

void TupleMatrix::push_column(Tuple column) {
    if (static_cast<int>(column.size()) != rows_)
        throw PreconditionError("column " + tuple_to_string(column) + " does not have " + std::to_string(rows_) +
                                " entries");
    columns_.push_back(std::move(column));
}

TupleMatrix hcat(const TupleMatrix& a, const TupleMatrix& b) {
    if (a.rows() != b.rows())
        throw PreconditionError("hcat: row counts differ");
    TupleMatrix out = a;
    for (const auto& c : b.columns())
        out.push_column(c);
    return out;
}

TupleMatrix all_rows_matrix(int n, int k) {
    return TupleMatrix::from_rows(all_tuples(n, k), n);
}

FiniteMultiset columns_multiset(const TupleMatrix& m) {
    return FiniteMultiset(m.rows(), m.columns());
}

RepetitionFunction as_repetition_function(const FiniteMultiset& s, int k) {
    RepetitionFunction phi(s.arity(), k, 0);
    for (const auto& [t, n] : s.entries())
        phi.set(t, n);
    return phi;
}

RepetitionFunction characteristic_function(const TupleMatrix& m, int k) {
    return as_repetition_function(columns_multiset(m), k);
}

Tuple apply_op_rows(const Operation& f, const TupleMatrix& m) {
    if (m.cols() != f.arity())
        throw PreconditionError("apply_op_rows: matrix has " + std::to_string(m.cols()) + " columns but f has arity " +
                                std::to_string(f.arity()));
    Tuple out(static_cast<std::size_t>(m.rows()));
    Tuple row(static_cast<std::size_t>(m.cols()));
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            Elem x = m.column(j)[static_cast<std::size_t>(i)];
            if (x >= f.domain_size())
                throw PreconditionError("apply_op_rows: matrix entry outside the domain of f");
            row[static_cast<std::size_t>(j)] = x;
        }
        out[static_cast<std::size_t>(i)] = f(row);
    }
    return out;
}

void for_each_matrix_leq(const RepetitionFunction& phi, int n, const std::function<bool(const TupleMatrix&)>& visit,
                         const Budget& budget) {
    if (n < 1)
        throw PreconditionError("matrices here have at least one column");
    const auto support = phi.support();
    std::vector<ExtNat> remaining;
    for (const auto& t : support)
        remaining.push_back(phi(t));

    std::vector<Tuple> columns;
    bool stop = false;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == n) {
            budget.charge(1, "enumerating matrices below a repetition function");
            stop = !visit(TupleMatrix(phi.arity(), columns));
            return;
        }
        for (std::size_t i = 0; i < support.size() && !stop; ++i) {
            if (remaining[i].is_zero())
                continue;
            remaining[i] = remaining[i].minus(1);
            columns.push_back(support[i]);
            self(self, pos + 1);
            columns.pop_back();
            remaining[i] = remaining[i] + ExtNat(1);
        }
    };
    rec(rec, 0);
}

std::vector<TupleMatrix> enumerate_matrices_leq(const RepetitionFunction& phi, int n, const Budget& budget) {
    std::vector<TupleMatrix> out;
    for_each_matrix_leq(
        phi, n,
        [&](const TupleMatrix& m) {
            out.push_back(m);
            return true;
        },
        budget);
    return out;
}

void for_each_split(const FiniteMultiset& s, int n, const std::function<bool(const Split&)>& visit) {
    if (n < 1)
        throw PreconditionError("splits take at least one column");
    if (s.cardinality() < static_cast<std::uint64_t>(n))
        return;
    std::vector<std::pair<Tuple, std::uint64_t>> items(s.entries().begin(), s.entries().end());
    std::vector<Tuple> chosen;
    bool stop = false;
    auto rec = [&](auto&& self) -> void {
        if (static_cast<int>(chosen.size()) == n) {
            FiniteMultiset rest(s.arity());
            for (const auto& [t, c] : items)
                rest.add(t, c);
            stop = !visit(Split{TupleMatrix(s.arity(), chosen), std::move(rest)});
            return;
        }
        for (auto& [t, c] : items) {
            if (stop)
                return;
            if (c == 0)
                continue;
            --c;
            chosen.push_back(t);
            self(self);
            chosen.pop_back();
            ++c;
        }
    };
    rec(rec);
}

std::vector<Split> split_enumerate(const FiniteMultiset& s, int n) {
    std::vector<Split> out;
    for_each_split(s, n, [&](const Split& sp) {
        out.push_back(sp);
        return true;
    });
    return out;
}

void for_each_bounded_multiset(int arity, const std::vector<Tuple>& support, const std::vector<ExtNat>& bounds,
                               std::uint64_t size, const std::function<bool(const FiniteMultiset&)>& visit) {
    if (support.size() != bounds.size())
        throw PreconditionError("support and bounds differ in length");
    std::vector<std::uint64_t> counts(support.size(), 0);
    // Capacity left in support[i..].
    std::vector<ExtNat> suffix(support.size() + 1, ExtNat(0));
    for (std::size_t i = support.size(); i-- > 0;)
        suffix[i] = suffix[i + 1] + bounds[i];

    bool stop = false;
    auto rec = [&](auto&& self, std::size_t i, std::uint64_t left) -> void {
        if (left == 0) {
            FiniteMultiset m(arity);
            for (std::size_t j = 0; j < i; ++j)
                m.add(support[j], counts[j]);
            stop = !visit(m);
            return;
        }
        if (i == support.size() || suffix[i] < ExtNat(left))
            return;
        std::uint64_t hi = bounds[i].is_infinite() ? left : std::min(left, bounds[i].value());
        for (std::uint64_t c = hi + 1; c-- > 0 && !stop;) {
            counts[i] = c;
            self(self, i + 1, left - c);
        }
        counts[i] = 0;
    };
    rec(rec, 0, size);
}

}  // namespace gk
