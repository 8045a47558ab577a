#pragma once

#include "galoiskit/core.hpp"
#include "galoiskit/multiset.hpp"
#include "galoiskit/operation.hpp"
#include "galoiskit/repetition.hpp"

#include <optional>
#include <set>
#include <span>
#include <vector>

namespace gk {

/// A finite m-ary relation on a k-element set.
class Relation {
  public:
    Relation(int arity, int k);
    Relation(int arity, int k, const std::vector<Tuple>& tuples);
    static Relation full(int arity, int k);

    int arity() const { return arity_; }
    int domain_size() const { return k_; }
    const std::set<Tuple>& tuples() const { return tuples_; }
    std::size_t size() const { return tuples_.size(); }
    bool empty() const { return tuples_.empty(); }
    bool contains(const Tuple& t) const { return tuples_.contains(t); }

    void insert(const Tuple& t);

    bool is_subset_of(const Relation& other) const;
    friend bool operator==(const Relation&, const Relation&) = default;
    friend auto operator<=>(const Relation&, const Relation&) = default;

  private:
    int arity_;
    int k_;
    std::set<Tuple> tuples_;
};

Relation relation_intersection(const Relation& a, const Relation& b);

/// A generalized constraint (antecedent, consequent): the antecedent is a
/// repetition function on A, the consequent a relation on B.
class GeneralizedConstraint {
  public:
    GeneralizedConstraint(RepetitionFunction antecedent, Relation consequent);

    const RepetitionFunction& antecedent() const { return antecedent_; }
    const Relation& consequent() const { return consequent_; }
    int arity() const { return antecedent_.arity(); }
    int domain_size() const { return antecedent_.domain_size(); }
    int codomain_size() const { return consequent_.domain_size(); }

    /// Same constraint with a normalized antecedent representation.
    GeneralizedConstraint normalized() const;

    friend bool operator==(const GeneralizedConstraint&, const GeneralizedConstraint&) = default;

  private:
    RepetitionFunction antecedent_;
    Relation consequent_;
};

/// M < phi: every column a occurs at most phi(a) times.
bool precedes(const TupleMatrix& m, const RepetitionFunction& phi);

struct ConstraintVerdict {
    bool satisfied = true;
    /// First counterexample M (enumeration order) and its image f M.
    std::optional<TupleMatrix> witness;
    std::optional<Tuple> image;
};

/// Exhaustive check over every arity(f)-column matrix M < antecedent.
ConstraintVerdict satisfies_constraint(const Operation& f, const GeneralizedConstraint& c,
                                       const Budget& budget = Budget());

// Relaxations. Each validates the relationship it produces.
GeneralizedConstraint restrict_antecedent(const GeneralizedConstraint& c, const RepetitionFunction& smaller);
GeneralizedConstraint extend_consequent(const GeneralizedConstraint& c, const Relation& larger);
GeneralizedConstraint intersect_consequents(std::span<const GeneralizedConstraint> family);

/// Antecedent zeroed outside `support`.
GeneralizedConstraint finite_restriction(const GeneralizedConstraint& c, const std::set<Tuple>& support);

GeneralizedConstraint equality_constraint(int m, int k_in, int k_out);
GeneralizedConstraint empty_constraint(int m, int k_in, int k_out);
GeneralizedConstraint trivial_constraint(int m, int k_in, int k_out);

/// The <=-maximal members of a finite family, in input order of first
/// occurrence (duplicates collapse).
std::vector<RepetitionFunction> maximal_elements(std::span<const RepetitionFunction> family);

}  // namespace gk
