#pragma once

#include "galoiskit/cluster.hpp"
#include "galoiskit/constraint.hpp"
#include "galoiskit/minors.hpp"
#include "galoiskit/operation.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gk {

/// Brute-force reference implementations. They share no enumeration code
/// with the library routines they are compared against.
namespace oracle {

    /// f applied coordinatewise to every |R|^n choice of rows stays in R.
    bool preserves_relation(const Operation& f, const Relation& r);

    /// In each variable separately, f is monotone or antitone for the order.
    bool preserving_or_reversing_each_variable(const Operation& f, const PartialOrder& order);

    /// Membership straight from the generator definition.
    bool in_cluster(const std::vector<Elem>& counts_by_rank, std::uint64_t size, const Cluster& c);

    /// f satisfies the breadth restriction of c to `breadth`, by listing every
    /// multiset of size <= breadth over A^m and every ordered choice of
    /// arity(f) of its positions.
    bool satisfies_breadth_restricted(const Operation& f, const Cluster& c, std::uint64_t breadth);

    /// f satisfies c, by listing every arity(f)-column matrix over A^m.
    bool satisfies_constraint(const Operation& f, const GeneralizedConstraint& c);

    /// The tight relation minor by exhausting a and the Skolem map.
    Relation tight_minor(const MinorScheme& h, const std::vector<Relation>& family);

}  // namespace oracle

struct CheckResult {
    std::string name;
    bool passed = false;
    /// Instance counts on success; the counterexample on failure.
    std::string detail;
    double seconds = 0.0;
};

inline constexpr std::uint64_t default_seed = 20240611;

// One check per acceptance criterion.
CheckResult check_malcev_identities();
CheckResult check_characteristic_matrices(std::uint64_t seed = default_seed);
CheckResult check_minor_preservation(std::uint64_t seed = default_seed);
CheckResult check_trivial_constraint_fixtures();
CheckResult check_composite_schemes(std::uint64_t seed = default_seed);
CheckResult check_cluster_lemmas(std::uint64_t seed = default_seed);
CheckResult check_round_trips();
CheckResult check_separations();
CheckResult check_relation_cluster_oracle();

// Further properties run by the suites.
CheckResult check_composition_closure(std::uint64_t seed = default_seed);
CheckResult check_antitone_laws();

/// Suite names accepted by run_suite, in report order; "all" runs every suite.
const std::vector<std::string>& suite_names();

/// Runs a suite, calling `report` after each check. Throws PreconditionError
/// for an unknown suite name.
std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed = default_seed,
                                   const std::function<void(const CheckResult&)>& report = {});

}  // namespace gk
