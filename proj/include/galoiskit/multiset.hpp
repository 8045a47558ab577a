#pragma once

#include "galoiskit/core.hpp"
#include "galoiskit/operation.hpp"
#include "galoiskit/repetition.hpp"

#include <compare>
#include <functional>
#include <map>
#include <vector>

namespace gk {

/// A finite multiset of m-tuples. Keys are kept sorted and every stored
/// multiplicity is positive, so equality is structural.
class FiniteMultiset {
  public:
    explicit FiniteMultiset(int arity);
    FiniteMultiset(int arity, const std::vector<Tuple>& elements);

    int arity() const { return arity_; }
    bool empty() const { return counts_.empty(); }
    std::uint64_t cardinality() const { return cardinality_; }
    std::uint64_t count(const Tuple& t) const;
    const std::map<Tuple, std::uint64_t>& entries() const { return counts_; }

    /// Elements listed with repetition, in ascending order.
    std::vector<Tuple> elements() const;

    void add(const Tuple& t, std::uint64_t n = 1);
    /// Removes up to n copies.
    void remove(const Tuple& t, std::uint64_t n = 1);

    friend bool operator==(const FiniteMultiset&, const FiniteMultiset&) = default;
    friend std::strong_ordering operator<=>(const FiniteMultiset& a, const FiniteMultiset& b);

  private:
    int arity_;
    std::uint64_t cardinality_ = 0;
    std::map<Tuple, std::uint64_t> counts_;
};

FiniteMultiset ms_join(const FiniteMultiset& a, const FiniteMultiset& b);
/// Truncated difference: max(a(x) - b(x), 0).
FiniteMultiset ms_diff(const FiniteMultiset& a, const FiniteMultiset& b);
/// True iff sub is a submultiset of sup.
bool ms_sub(const FiniteMultiset& sub, const FiniteMultiset& sup);

/// Every partition of s into non-empty blocks. Each partition is listed once,
/// with its blocks in ascending order; the empty multiset has the single
/// empty partition.
std::vector<std::vector<FiniteMultiset>> ms_partitions(const FiniteMultiset& s);

/// An m x n matrix viewed as a sequence of n columns, each an m-tuple.
class TupleMatrix {
  public:
    explicit TupleMatrix(int rows);
    TupleMatrix(int rows, std::vector<Tuple> columns);
    /// Builds the matrix whose rows are the given n-tuples.
    static TupleMatrix from_rows(const std::vector<Tuple>& rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return static_cast<int>(columns_.size()); }
    const std::vector<Tuple>& columns() const { return columns_; }
    const Tuple& column(int i) const { return columns_[static_cast<std::size_t>(i)]; }
    Tuple row(int i) const;

    void push_column(Tuple column);

    friend bool operator==(const TupleMatrix&, const TupleMatrix&) = default;
    friend auto operator<=>(const TupleMatrix&, const TupleMatrix&) = default;

  private:
    int rows_;
    std::vector<Tuple> columns_;
};

/// [a | b]
TupleMatrix hcat(const TupleMatrix& a, const TupleMatrix& b);

/// The matrix whose rows are all k^n n-tuples in rank order.
TupleMatrix all_rows_matrix(int n, int k);

/// M*, the multiset of columns.
FiniteMultiset columns_multiset(const TupleMatrix& m);

/// chi_M as a repetition function over a k-element domain.
RepetitionFunction characteristic_function(const TupleMatrix& m, int k);
RepetitionFunction as_repetition_function(const FiniteMultiset& s, int k);

/// f M: f applied to every row of M.
Tuple apply_op_rows(const Operation& f, const TupleMatrix& m);

/// Calls visit on every n-column matrix M with M < phi, in lexicographic
/// order of column ranks. Stops early when visit returns false.
void for_each_matrix_leq(const RepetitionFunction& phi, int n, const std::function<bool(const TupleMatrix&)>& visit,
                         const Budget& budget = Budget());
std::vector<TupleMatrix> enumerate_matrices_leq(const RepetitionFunction& phi, int n, const Budget& budget = Budget());

/// A split [M1 | M2] of a multiset of columns: M1 keeps its column order,
/// the remainder is a multiset.
struct Split {
    TupleMatrix first;
    FiniteMultiset rest;
};

/// Every ordered choice of n columns from s (distinct column sequences, in
/// lexicographic order) paired with what is left. Empty when |s| < n.
void for_each_split(const FiniteMultiset& s, int n, const std::function<bool(const Split&)>& visit);
std::vector<Split> split_enumerate(const FiniteMultiset& s, int n);

/// Every multiset of the given size over `support` with the multiplicity of
/// support[i] at most bounds[i], in lexicographic order of sorted element
/// lists. Stops early when visit returns false.
void for_each_bounded_multiset(int arity, const std::vector<Tuple>& support, const std::vector<ExtNat>& bounds,
                               std::uint64_t size, const std::function<bool(const FiniteMultiset&)>& visit);

}  // namespace gk
