#pragma once

#include "galoiskit/core.hpp"

#include <map>
#include <span>
#include <vector>

namespace gk {

/// An m-ary repetition function A^m -> N u {inf}, stored as a default value
/// plus the tuples whose value differs from it.
class RepetitionFunction {
  public:
    RepetitionFunction(int arity, int k, ExtNat default_value = ExtNat(0));

    int arity() const { return arity_; }
    int domain_size() const { return k_; }
    ExtNat default_value() const { return default_; }
    const std::map<Tuple, ExtNat>& exceptions() const { return exceptions_; }

    ExtNat operator()(const Tuple& t) const;
    void set(const Tuple& t, ExtNat value);

    /// Tuples with a nonzero value, in rank order.
    std::vector<Tuple> support() const;
    /// Sum of all values.
    ExtNat total() const;

    /// Same function with the default chosen to minimize the exception list
    /// (ties prefer 0, then inf, then the smallest finite value).
    RepetitionFunction normalized() const;

    /// Extensional equality.
    friend bool operator==(const RepetitionFunction& a, const RepetitionFunction& b);

  private:
    void check_tuple(const Tuple& t) const;

    int arity_;
    int k_;
    ExtNat default_;
    std::map<Tuple, ExtNat> exceptions_;
};

bool rf_leq(const RepetitionFunction& a, const RepetitionFunction& b);

/// Pointwise maximum of a non-empty family; the limit of a finite ascending chain.
RepetitionFunction rf_pointwise_sup(std::span<const RepetitionFunction> family);

RepetitionFunction rf_pointwise_min(const RepetitionFunction& a, const RepetitionFunction& b);

/// Constant repetition function.
RepetitionFunction rf_constant(int arity, int k, ExtNat value);

}  // namespace gk
