#pragma once

#include "galoiskit/cluster.hpp"
#include "galoiskit/constraint.hpp"
#include "galoiskit/core.hpp"
#include "galoiskit/multiset.hpp"
#include "galoiskit/operation.hpp"

#include <span>
#include <vector>

namespace gk {

/// Caps that make the two Galois connections finite.
struct GaloisConfig {
    /// Largest operation arity enumerated by f_pol / c_pol and used by cl_inv.
    int arity_cap = 2;
    /// Largest constraint arity (matrix row count) emitted by gc_inv.
    int constraint_arity_cap = 4;
    /// Largest matrix column count used by gc_inv.
    int column_cap = 2;
    /// Breadth at which cluster satisfaction is decided.
    std::uint64_t breadth_cap = 4;
    Budget budget;

    void validate() const;
};

/// There is no separating object: the operation belongs to the closed class.
class NoSeparatorError : public Error {
  public:
    using Error::Error;
};

/// C M = { f M : f in C of arity cols(M) }.
Relation class_image(const OperationClass& c, const TupleMatrix& m);

/// (chi_M, C M) for every matrix M with at most constraint_arity_cap
/// distinct rows (taken in rank order) and at most column_cap columns. The
/// class is first closed under permutation of variables and dummy variables.
std::vector<GeneralizedConstraint> gc_inv(const OperationClass& c, const GaloisConfig& cfg);

/// Every operation A^n -> B with n <= arity_cap satisfying all of t.
OperationClass f_pol(std::span<const GeneralizedConstraint> t, int k_in, int k_out, const GaloisConfig& cfg);

/// The cluster built from the all-rows matrix with n columns: submultisets of
/// X + D* over X, partitions of the remaining columns and images D. The
/// class must already contain the projections and be closed.
Cluster cluster_from_closed_class(const OperationClass& closed, int n, const Budget& budget = Budget());

/// One cluster per n <= arity_cap; the class is first closed under
/// composition (with projections) at the arity cap.
std::vector<Cluster> cl_inv(const OperationClass& f, const GaloisConfig& cfg);

/// Every operation of arity <= arity_cap satisfying all of t at breadth_cap.
OperationClass c_pol(std::span<const Cluster> t, int k, const GaloisConfig& cfg);

struct ConstraintSeparation {
    GeneralizedConstraint constraint;
    TupleMatrix witness;
    Tuple image;
};

/// A constraint satisfied by every member of f but not by g, with the matrix
/// on which g fails. Both sides are verified before returning.
ConstraintSeparation separating_constraint(const OperationClass& f, const Operation& g);

struct ClusterSeparation {
    Cluster cluster;
    ClusterWitness witness;
    std::uint64_t breadth = 0;
};

/// A cluster satisfied by every member of f but not by g, with g's violating
/// split. Both sides are verified at the reported breadth.
ClusterSeparation separating_cluster(const OperationClass& f, const Operation& g, const GaloisConfig& cfg);

}  // namespace gk
