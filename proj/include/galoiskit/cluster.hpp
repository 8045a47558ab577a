#pragma once

#include "galoiskit/constraint.hpp"
#include "galoiskit/core.hpp"
#include "galoiskit/minors.hpp"
#include "galoiskit/multiset.hpp"
#include "galoiskit/operation.hpp"
#include "galoiskit/repetition.hpp"

#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace gk {

/// Denotes { S : nu_S <= box pointwise and |S| <= cap }.
struct BoxedGenerator {
    RepetitionFunction box;
    ExtNat cap = ExtNat::infinity();

    friend bool operator==(const BoxedGenerator&, const BoxedGenerator&) = default;
};

/// A downward-closed family of finite multisets of m-tuples over a k-element
/// set, presented as the union of its generators. No generators means the
/// empty cluster, which is different from {epsilon}.
class Cluster {
  public:
    Cluster(int arity, int k, std::vector<BoxedGenerator> generators = {});

    int arity() const { return arity_; }
    int domain_size() const { return k_; }
    const std::vector<BoxedGenerator>& generators() const { return generators_; }

    void add(BoxedGenerator g);

  private:
    int arity_;
    int k_;
    std::vector<BoxedGenerator> generators_;
};

bool member(const FiniteMultiset& s, const Cluster& c);
bool member(const TupleMatrix& m, const Cluster& c);

/// Every member of size <= max_size, each once, ordered by size and then
/// by FiniteMultiset order. Stops early when visit returns false.
void for_each_member(const Cluster& c, std::uint64_t max_size, const std::function<bool(const FiniteMultiset&)>& visit,
                     const Budget& budget = Budget());

enum class ClusterStatus { Satisfied, Violated, BreadthBelowArity };

struct ClusterWitness {
    /// The member that was split, its ordered first part and the remainder.
    FiniteMultiset source;
    TupleMatrix first;
    FiniteMultiset rest;
    /// f applied to the rows of `first`; rest plus this column is not a member.
    Tuple output;
};

struct ClusterVerdict {
    ClusterStatus status = ClusterStatus::Satisfied;
    std::optional<ClusterWitness> witness;
    bool satisfied() const { return status == ClusterStatus::Satisfied; }
};

/// Exact satisfaction of the breadth restriction to `breadth`: every split of
/// every member of size <= breadth is checked. The witness is the first
/// violation in for_each_member order, then split order.
ClusterVerdict satisfies_cluster(const Operation& f, const Cluster& c, std::uint64_t breadth,
                                 const Budget& budget = Budget());

/// Phi / S = { S' : S + S' in Phi }.
Cluster quotient(const Cluster& c, const FiniteMultiset& s);
Cluster cluster_union(std::span<const Cluster> family);
Cluster intersect(const Cluster& a, const Cluster& b);
/// Phi intersected with all multisets of size <= p.
Cluster breadth_restrict(const Cluster& c, std::uint64_t p);
/// Largest member size; nullopt for the empty cluster, which has none.
std::optional<ExtNat> breadth(const Cluster& c);

/// Drops generators whose family is contained in another generator's.
Cluster normalize(const Cluster& c);

/// All multisets of size <= p.
Cluster trivial_cluster(int m, std::uint64_t p, int k);
Cluster empty_cluster(int m, int k);
/// Multisets of binary tuples with equal components only.
Cluster equality_cluster(int k);
/// Multisets whose elements all lie in R.
Cluster relation_cluster(const Relation& r);

/// A partial order on {0..k-1}, given by its full <= relation.
class PartialOrder {
  public:
    /// Validates reflexivity, antisymmetry and transitivity.
    PartialOrder(int k, const std::vector<std::pair<Elem, Elem>>& leq_pairs);
    /// 0 < 1 < ... < k-1.
    static PartialOrder chain(int k);

    int size() const { return k_; }
    bool leq(Elem a, Elem b) const { return leq_[static_cast<std::size_t>(a * k_ + b)]; }

  private:
    int k_;
    std::vector<bool> leq_;
};

/// The quaternary cluster characterizing the operations that are
/// order-preserving or order-reversing in each variable.
Cluster order_cluster(const PartialOrder& order);

/// Whether the column multiset lies in the conjunctive minor of the family
/// via the scheme (per-column Skolem maps searched exhaustively).
bool cluster_minor_member(const FiniteMultiset& s, const std::vector<Cluster>& family, const MinorScheme& h,
                          const Budget& budget = Budget());

/// The conjunctive minor restricted to breadth `breadth_cap`, stored as its
/// maximal members (box = nu_S, cap = |S|).
Cluster materialize_minor(const std::vector<Cluster>& family, const MinorScheme& h, std::uint64_t breadth_cap,
                          const Budget& budget = Budget());

}  // namespace gk
