#include "galoiskit/constraint.hpp"

#include <algorithm>

namespace gk {

Relation::Relation(int arity, int k) : arity_(arity), k_(k) {
    if (arity < 1)
        throw PreconditionError("relations have arity >= 1");
    if (k < 1)
        throw PreconditionError("domain size must be positive");
}

Relation::Relation(int arity, int k, const std::vector<Tuple>& tuples) : Relation(arity, k) {
    for (const auto& t : tuples)
        insert(t);
}

Relation Relation::full(int arity, int k) {
    return Relation(arity, k, all_tuples(arity, k));
}

void Relation::insert(const Tuple& t) {
    if (static_cast<int>(t.size()) != arity_)
        throw PreconditionError("tuple " + tuple_to_string(t) + " does not have arity " + std::to_string(arity_));
    for (Elem x : t)
        if (x < 0 || x >= k_)
            throw PreconditionError("tuple " + tuple_to_string(t) + " has an entry outside the domain");
    tuples_.insert(t);
}

bool Relation::is_subset_of(const Relation& other) const {
    return std::includes(other.tuples_.begin(), other.tuples_.end(), tuples_.begin(), tuples_.end());
}

Relation relation_intersection(const Relation& a, const Relation& b) {
    if (a.arity() != b.arity() || a.domain_size() != b.domain_size())
        throw PreconditionError("intersecting relations of different shapes");
    Relation out(a.arity(), a.domain_size());
    for (const auto& t : a.tuples())
        if (b.contains(t))
            out.insert(t);
    return out;
}

GeneralizedConstraint::GeneralizedConstraint(RepetitionFunction antecedent, Relation consequent)
    : antecedent_(std::move(antecedent)), consequent_(std::move(consequent)) {
    if (antecedent_.arity() != consequent_.arity())
        throw PreconditionError("antecedent and consequent arities differ");
}

GeneralizedConstraint GeneralizedConstraint::normalized() const {
    return GeneralizedConstraint(antecedent_.normalized(), consequent_);
}

bool precedes(const TupleMatrix& m, const RepetitionFunction& phi) {
    if (m.rows() != phi.arity())
        throw PreconditionError("precedes: matrix row count differs from the repetition function's arity");
    const FiniteMultiset cols = columns_multiset(m);
    for (const auto& [t, n] : cols.entries())
        if (ExtNat(n) > phi(t))
            return false;
    return true;
}

ConstraintVerdict satisfies_constraint(const Operation& f, const GeneralizedConstraint& c, const Budget& budget) {
    if (f.domain_size() != c.domain_size())
        throw PreconditionError("satisfies_constraint: function domain differs from the antecedent's domain");
    if (f.codomain_size() != c.codomain_size())
        throw PreconditionError("satisfies_constraint: function codomain differs from the consequent's alphabet");

    ConstraintVerdict verdict;
    for_each_matrix_leq(
        c.antecedent(), f.arity(),
        [&](const TupleMatrix& m) {
            Tuple image = apply_op_rows(f, m);
            if (c.consequent().contains(image))
                return true;
            verdict.satisfied = false;
            verdict.witness = m;
            verdict.image = std::move(image);
            return false;
        },
        budget);
    return verdict;
}

GeneralizedConstraint restrict_antecedent(const GeneralizedConstraint& c, const RepetitionFunction& smaller) {
    if (!rf_leq(smaller, c.antecedent()))
        throw PreconditionError("restrict_antecedent: new antecedent is not below the old one");
    return GeneralizedConstraint(smaller, c.consequent());
}

GeneralizedConstraint extend_consequent(const GeneralizedConstraint& c, const Relation& larger) {
    if (larger.arity() != c.arity() || larger.domain_size() != c.codomain_size() ||
        !c.consequent().is_subset_of(larger))
        throw PreconditionError("extend_consequent: new consequent does not contain the old one");
    return GeneralizedConstraint(c.antecedent(), larger);
}

GeneralizedConstraint intersect_consequents(std::span<const GeneralizedConstraint> family) {
    if (family.empty())
        throw PreconditionError("intersect_consequents: empty family");
    Relation meet = family.front().consequent();
    for (const auto& c : family.subspan(1)) {
        if (!(c.antecedent() == family.front().antecedent()))
            throw PreconditionError("intersect_consequents: antecedents differ");
        meet = relation_intersection(meet, c.consequent());
    }
    return GeneralizedConstraint(family.front().antecedent(), meet);
}

GeneralizedConstraint finite_restriction(const GeneralizedConstraint& c, const std::set<Tuple>& support) {
    const auto& phi = c.antecedent();
    RepetitionFunction restricted(phi.arity(), phi.domain_size(), 0);
    for (const auto& t : support)
        restricted.set(t, phi(t));
    return GeneralizedConstraint(restricted, c.consequent());
}

GeneralizedConstraint equality_constraint(int m, int k_in, int k_out) {
    RepetitionFunction phi(m, k_in, 0);
    for (Elem x = 0; x < k_in; ++x)
        phi.set(Tuple(static_cast<std::size_t>(m), x), ExtNat::infinity());
    Relation diag(m, k_out);
    for (Elem x = 0; x < k_out; ++x)
        diag.insert(Tuple(static_cast<std::size_t>(m), x));
    return GeneralizedConstraint(phi, diag);
}

GeneralizedConstraint empty_constraint(int m, int k_in, int k_out) {
    return GeneralizedConstraint(RepetitionFunction(m, k_in, 0), Relation(m, k_out));
}

GeneralizedConstraint trivial_constraint(int m, int k_in, int k_out) {
    return GeneralizedConstraint(RepetitionFunction(m, k_in, ExtNat::infinity()), Relation::full(m, k_out));
}

std::vector<RepetitionFunction> maximal_elements(std::span<const RepetitionFunction> family) {
    std::vector<RepetitionFunction> out;
    for (std::size_t i = 0; i < family.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < family.size() && !dominated; ++j) {
            if (i == j || !rf_leq(family[i], family[j]))
                continue;
            // Equal members: keep the first occurrence only.
            dominated = !rf_leq(family[j], family[i]) || j < i;
        }
        if (!dominated)
            out.push_back(family[i]);
    }
    return out;
}

}  // namespace gk
