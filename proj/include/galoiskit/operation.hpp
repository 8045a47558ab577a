#pragma once

#include "galoiskit/core.hpp"

#include <compare>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <vector>

namespace gk {

class FiniteDomain {
  public:
    explicit FiniteDomain(int size);
    int size() const { return size_; }
    friend bool operator==(const FiniteDomain&, const FiniteDomain&) = default;

  private:
    int size_;
};

/// A total function A^n -> B on finite sets, stored as a value table indexed
/// by the lexicographic rank of the input tuple (x_1 most significant).
class Operation {
  public:
    Operation(int domain_size, int codomain_size, int arity, std::vector<Elem> table);

    /// Domain = codomain = k.
    Operation(int k, int arity, std::vector<Elem> table);

    static Operation from_function(int domain_size, int codomain_size, int arity,
                                   const std::function<Elem(std::span<const Elem>)>& fn);

    int domain_size() const { return domain_size_; }
    int codomain_size() const { return codomain_size_; }
    int arity() const { return arity_; }
    const std::vector<Elem>& table() const { return table_; }

    /// Unchecked lookup by input rank.
    Elem at_rank(std::uint64_t rank) const { return table_[rank]; }
    /// Lookup on an input tuple of length arity() with in-range entries (unchecked).
    Elem operator()(std::span<const Elem> input) const {
        return table_[tuple_rank(input, domain_size_)];
    }

    friend bool operator==(const Operation&, const Operation&) = default;
    friend std::strong_ordering operator<=>(const Operation&, const Operation&) = default;

  private:
    int domain_size_;
    int codomain_size_;
    int arity_;
    std::vector<Elem> table_;
};

/// Checked evaluation.
Elem eval(const Operation& op, std::span<const Elem> input);

// Mal'cev operations. zeta, tau, delta return unary operations unchanged.
Operation zeta(const Operation& f);
Operation tau(const Operation& f);
Operation delta(const Operation& f);
Operation nabla(const Operation& f);
/// (f * g)(x_1..x_{m+n-1}) = f(g(x_1..x_m), x_{m+1}..x_{m+n-1}).
Operation star(const Operation& f, const Operation& g);

/// The i-th n-ary projection on a k-element set, 1 <= i <= n.
Operation projection(int n, int i, int k);

/// g(x_0..x_{N-1}) = f(x_{sigma[0]}, ..., x_{sigma[n-1]}) with sigma injective
/// into {0..N-1} (zero-based positions).
Operation minor_by_injection(const Operation& f, std::span<const int> sigma, int target_arity);

/// A class of functions A -> B, deduplicated per arity. Iteration is in
/// canonical order: arity ascending, then table lexicographically.
class OperationClass {
  public:
    OperationClass(int domain_size, int codomain_size);
    explicit OperationClass(int k) : OperationClass(k, k) {}

    int domain_size() const { return domain_size_; }
    int codomain_size() const { return codomain_size_; }

    /// Returns false when already present.
    bool insert(const Operation& op);
    bool contains(const Operation& op) const;

    std::size_t size() const;
    bool empty() const { return size() == 0; }
    int max_arity() const;  // 0 for the empty class

    std::vector<Operation> members() const;
    std::vector<Operation> members(int arity) const;
    const std::set<Operation>& part(int arity) const;

    /// Members of arity <= cap.
    OperationClass truncated(int cap) const;
    bool is_subset_of(const OperationClass& other) const;

    friend bool operator==(const OperationClass&, const OperationClass&);

  private:
    int domain_size_;
    int codomain_size_;
    std::map<int, std::set<Operation>> parts_;
};

/// Every operation A^n -> B, in table order.
std::vector<Operation> all_operations(int domain_size, int codomain_size, int arity,
                                      const Budget& budget = Budget());

/// Which of the five Mal'cev operations a closure uses.
struct ClosureOps {
    bool zeta = false;
    bool tau = false;
    bool delta = false;
    bool nabla = false;
    bool star = false;
};

/// Least superclass closed under the selected operations, keeping only
/// intermediate results of arity <= arity_cap. Worklist to fixpoint.
OperationClass close_under(const OperationClass& cls, ClosureOps ops, int arity_cap,
                           const Budget& budget = Budget());

/// Closure under permutation of variables and addition of dummy variables,
/// computed as all injection minors with target arity <= arity_cap.
OperationClass close_perm_dummy(const OperationClass& cls, int arity_cap);

/// Clone-like closure: all projections of arity <= cap, closed under zeta,
/// tau, nabla and star with every intermediate arity <= cap. Members only
/// derivable through wider intermediates are missed.
OperationClass close_composition(const OperationClass& cls, int arity_cap,
                                 const Budget& budget = Budget());

/// All projections of arity 1..cap.
OperationClass projections_class(int k, int arity_cap);

/// Linear operations sum c_i x_i over GF(k) (k prime) with the number of
/// nonzero coefficients congruent to 1 mod p, for arities 1..cap.
OperationClass linear_class_fixture(int k, int p, int arity_cap);

}  // namespace gk
