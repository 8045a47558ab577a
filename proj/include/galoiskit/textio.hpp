#pragma once

#include "galoiskit/cluster.hpp"
#include "galoiskit/constraint.hpp"
#include "galoiskit/minors.hpp"
#include "galoiskit/multiset.hpp"
#include "galoiskit/operation.hpp"
#include "galoiskit/repetition.hpp"

#include <map>
#include <string>
#include <string_view>

namespace gk {

inline constexpr const char* format_header = "galois-kit v1";

/// Named entities loaded from one or more text files. Names are unique per
/// kind; every entity is validated when it is parsed.
struct Workspace {
    std::map<std::string, Operation> operations;
    std::map<std::string, OperationClass> classes;
    std::map<std::string, RepetitionFunction> repetition_functions;
    std::map<std::string, GeneralizedConstraint> constraints;
    std::map<std::string, Cluster> clusters;
    std::map<std::string, FiniteMultiset> multisets;
    std::map<std::string, TupleMatrix> matrices;
    std::map<std::string, MinorScheme> schemes;

    const Operation& operation(const std::string& name) const;
    const OperationClass& operation_class(const std::string& name) const;
    const GeneralizedConstraint& constraint(const std::string& name) const;
    const Cluster& cluster(const std::string& name) const;
    const MinorScheme& scheme(const std::string& name) const;
};

/// Parses statements into ws. When implicit_class is non-empty, the `op`
/// statements of this text also form a class of that name.
void parse_into(Workspace& ws, std::string_view text, const std::string& source = "<input>",
                const std::string& implicit_class = "");
Workspace parse_workspace(std::string_view text, const std::string& source = "<input>");
/// Reads a file; its op lines form a class named after the file stem.
void load_file(Workspace& ws, const std::string& path);

// Single-object parsers for the unnamed text forms.
Operation parse_operation(std::string_view text);
RepetitionFunction parse_repetition_function(std::string_view text);
FiniteMultiset parse_multiset(std::string_view text);
TupleMatrix parse_matrix(std::string_view text);
MinorScheme parse_scheme(std::string_view text);

std::string format_operation(const std::string& name, const Operation& op);
/// One op line per member, named <name>_<arity>_<index>.
std::string format_class(const std::string& name, const OperationClass& cls);
std::string format_repetition_function(const RepetitionFunction& rf);
std::string format_relation(const Relation& r);
std::string format_constraint(const std::string& name, const GeneralizedConstraint& c);
std::string format_cluster(const std::string& name, const Cluster& c);
std::string format_multiset(const FiniteMultiset& s);
std::string format_matrix(const TupleMatrix& m);
std::string format_scheme(const MinorScheme& h);

}  // namespace gk
