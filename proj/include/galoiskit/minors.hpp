#pragma once

#include "galoiskit/constraint.hpp"
#include "galoiskit/core.hpp"
#include "galoiskit/multiset.hpp"
#include "galoiskit/repetition.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gk {

/// One value of a scheme map: a target coordinate or an indeterminate.
struct SchemeEntry {
    enum class Kind { Coordinate, Variable };
    Kind kind = Kind::Coordinate;
    int index = 0;

    static SchemeEntry coord(int i) { return {Kind::Coordinate, i}; }
    static SchemeEntry var(int v) { return {Kind::Variable, v}; }
    bool is_var() const { return kind == Kind::Variable; }
    friend bool operator==(const SchemeEntry&, const SchemeEntry&) = default;
};

using SchemeMap = std::vector<SchemeEntry>;

/// A minor formation scheme: maps h_j from {0..n_j-1} into the target
/// coordinates {0..m-1} plus a finite set of named indeterminates.
class MinorScheme {
  public:
    MinorScheme(int target, std::vector<std::string> vars, std::vector<SchemeMap> maps);
    static MinorScheme identity(int m);

    int target() const { return target_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<SchemeMap>& maps() const { return maps_; }
    int family_size() const { return static_cast<int>(maps_.size()); }
    int source_arity(int j) const { return static_cast<int>(maps_[static_cast<std::size_t>(j)].size()); }

    friend bool operator==(const MinorScheme&, const MinorScheme&) = default;

  private:
    int target_;
    std::vector<std::string> vars_;
    std::vector<SchemeMap> maps_;
};

/// Values for the indeterminates, aligned with MinorScheme::vars().
using SkolemMap = std::vector<Elem>;

/// (a + sigma) h.
Tuple apply_scheme_map(const Tuple& a, const SkolemMap& sigma, const SchemeMap& h);

struct CompositeScheme {
    MinorScheme scheme;
    /// renamed[j][v]: the name that variable v of the j-th inner scheme got.
    std::vector<std::vector<std::string>> renamed;
    /// origin[t] = (j, i): flat map t came from map i of inner scheme j.
    std::vector<std::pair<int, int>> origin;
};

/// The composite scheme H(H_j : j in J); inner variables that collide with
/// names already in use get a "_<j>" suffix (then a counter).
CompositeScheme compose_schemes(const MinorScheme& outer, const std::vector<MinorScheme>& inner);

/// { a in A^m : some Skolem map sends every (a + sigma) h_j into R_j }.
Relation tight_relation_minor(const MinorScheme& h, const std::vector<Relation>& family,
                              const Budget& budget = Budget());

/// Searches per-column Skolem maps sigma_1..sigma_n (one per entry of
/// `columns`) such that, for every j, the multiset of columns
/// (a^i + sigma_i) h_j is accepted. `accept` must be downward closed in its
/// multiset argument; it is consulted on partial assignments to prune.
bool exists_skolem_columns(const MinorScheme& h, int k, const std::vector<Tuple>& columns,
                           const std::function<bool(int, const FiniteMultiset&)>& accept,
                           const Budget& budget = Budget());

struct MinorVerdict {
    bool holds = true;
    /// True when only matrices with at most col_cap columns were examined
    /// and the answer might change for wider matrices.
    bool bounded = false;
    int col_cap = 0;
    /// Column multiset of a matrix on which the condition fails.
    std::optional<FiniteMultiset> counterexample;
    std::string note;
};

/// max source arity + 2
int default_column_cap(const MinorScheme& h);

MinorVerdict is_restrictive_rf_minor(const RepetitionFunction& phi, const std::vector<RepetitionFunction>& family,
                                     const MinorScheme& h, int col_cap, const Budget& budget = Budget());
MinorVerdict is_extensive_rf_minor(const RepetitionFunction& phi, const std::vector<RepetitionFunction>& family,
                                   const MinorScheme& h, int col_cap, const Budget& budget = Budget());

/// Compares, for every a and j, the total of phi over the tuples h_j cannot
/// tell apart from a with the total of phi_j over the tuples h_j can reach
/// from a. A failure refutes restrictiveness outright (and extensiveness
/// when the family has a single member); an empty string means no refutation.
std::string remark_sum_refutation(const RepetitionFunction& phi, const std::vector<RepetitionFunction>& family,
                                  const MinorScheme& h, bool restrictive);

/// Restrictive on antecedents (bounded) and consequent containing the tight
/// relation minor of the family's consequents (exact).
MinorVerdict is_conjunctive_minor_constraint(const GeneralizedConstraint& c,
                                             const std::vector<GeneralizedConstraint>& family,
                                             const MinorScheme& h, int col_cap, const Budget& budget = Budget());

/// For a scheme without indeterminates: antecedent
/// a -> min_j floor(phi_j(a h_j) / |fiber of a h_j|), consequent the tight
/// relation minor. Always a conjunctive minor of the family.
GeneralizedConstraint pullback_minor(const MinorScheme& h, const std::vector<GeneralizedConstraint>& family);

enum class FixtureKind { TrivialFromEquality, EqualityChain, EmptySpread, DummyAdd, Identify };

const char* fixture_name(FixtureKind kind);
std::vector<FixtureKind> all_fixture_kinds();

/// The schemes that derive the distinguished constraints:
///  - TrivialFromEquality: h: 2 -> m, h(0) = h(1) = 0 (binary equality to m-ary trivial)
///  - EqualityChain:       h_i: 2 -> m, h_i(0) = i, h_i(1) = i + 1, i < m - 1 (m >= 2)
///  - EmptySpread:         h: 1 -> m, h(0) = 0 (unary empty to m-ary empty)
///  - DummyAdd:            h: 1 -> m, h(0) = 0 (unary trivial to m-ary trivial)
///  - Identify:            h: m -> 1, constant 0 (m-ary equality to unary trivial)
MinorScheme scheme_fixture(FixtureKind kind, int m);
std::vector<GeneralizedConstraint> fixture_family(FixtureKind kind, int m, int k_in, int k_out);
GeneralizedConstraint fixture_expected(FixtureKind kind, int m, int k_in, int k_out);

}  // namespace gk
