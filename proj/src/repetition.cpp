#include "galoiskit/repetition.hpp"

#include <algorithm>

namespace gk {

namespace {
    void check_compatible(const RepetitionFunction& a, const RepetitionFunction& b) {
        if (a.arity() != b.arity() || a.domain_size() != b.domain_size())
            throw PreconditionError("repetition functions differ in arity or domain");
    }

    // Applies op pointwise; the result's default is op of the two defaults.
    template <typename Op>
    RepetitionFunction combine(const RepetitionFunction& a, const RepetitionFunction& b, Op op) {
        check_compatible(a, b);
        RepetitionFunction out(a.arity(), a.domain_size(), op(a.default_value(), b.default_value()));
        for (const auto& [t, v] : a.exceptions())
            out.set(t, op(v, b(t)));
        for (const auto& [t, v] : b.exceptions())
            out.set(t, op(a(t), v));
        return out;
    }
}

RepetitionFunction::RepetitionFunction(int arity, int k, ExtNat default_value)
    : arity_(arity), k_(k), default_(default_value) {
    if (arity < 1)
        throw PreconditionError("repetition functions have arity >= 1");
    if (k < 1)
        throw PreconditionError("domain size must be positive");
}

void RepetitionFunction::check_tuple(const Tuple& t) const {
    if (static_cast<int>(t.size()) != arity_)
        throw PreconditionError("tuple " + tuple_to_string(t) + " has the wrong arity for this repetition function");
    for (Elem x : t)
        if (x < 0 || x >= k_)
            throw PreconditionError("tuple " + tuple_to_string(t) + " has an entry outside the domain");
}

ExtNat RepetitionFunction::operator()(const Tuple& t) const {
    auto it = exceptions_.find(t);
    return it == exceptions_.end() ? default_ : it->second;
}

void RepetitionFunction::set(const Tuple& t, ExtNat value) {
    check_tuple(t);
    if (value == default_)
        exceptions_.erase(t);
    else
        exceptions_[t] = value;
}

std::vector<Tuple> RepetitionFunction::support() const {
    std::vector<Tuple> out;
    if (default_.is_zero()) {
        for (const auto& [t, v] : exceptions_)
            if (!v.is_zero())
                out.push_back(t);
        return out;
    }
    Tuple t(static_cast<std::size_t>(arity_), 0);
    do
        if (!(*this)(t).is_zero())
            out.push_back(t);
    while (next_tuple(t, k_));
    return out;
}

ExtNat RepetitionFunction::total() const {
    auto n = checked_pow(static_cast<std::uint64_t>(k_), static_cast<unsigned>(arity_));
    ExtNat sum = 0;
    if (!default_.is_zero() && n > exceptions_.size())
        sum = default_.is_infinite() ? ExtNat::infinity() : ExtNat(default_.value() * (n - exceptions_.size()));
    for (const auto& [t, v] : exceptions_)
        sum = sum + v;
    return sum;
}

RepetitionFunction RepetitionFunction::normalized() const {
    auto n = checked_pow(static_cast<std::uint64_t>(k_), static_cast<unsigned>(arity_));
    std::map<ExtNat, std::uint64_t> freq;
    for (const auto& [t, v] : exceptions_)
        ++freq[v];
    freq[default_] += n - exceptions_.size();

    auto rank = [](const ExtNat& v) { return v.is_zero() ? 0 : v.is_infinite() ? 1 : 2; };
    ExtNat best = default_;
    for (const auto& [v, c] : freq) {
        auto bc = freq[best];
        if (c > bc || (c == bc && (rank(v) < rank(best) || (rank(v) == rank(best) && v < best))))
            best = v;
    }
    if (best == default_)
        return *this;
    RepetitionFunction out(arity_, k_, best);
    Tuple t(static_cast<std::size_t>(arity_), 0);
    do
        out.set(t, (*this)(t));
    while (next_tuple(t, k_));
    return out;
}

bool operator==(const RepetitionFunction& a, const RepetitionFunction& b) {
    if (a.arity_ != b.arity_ || a.k_ != b.k_)
        return false;
    if (a.default_ == b.default_)
        return a.exceptions_ == b.exceptions_;
    Tuple t(static_cast<std::size_t>(a.arity_), 0);
    do
        if (a(t) != b(t))
            return false;
    while (next_tuple(t, a.k_));
    return true;
}

bool rf_leq(const RepetitionFunction& a, const RepetitionFunction& b) {
    check_compatible(a, b);
    if (a.default_value() > b.default_value()) {
        // Some tuple outside both exception lists would witness a > b unless
        // the exceptions cover everything; fall back to a full scan.
        Tuple t(static_cast<std::size_t>(a.arity()), 0);
        do
            if (a(t) > b(t))
                return false;
        while (next_tuple(t, a.domain_size()));
        return true;
    }
    for (const auto& [t, v] : a.exceptions())
        if (v > b(t))
            return false;
    for (const auto& [t, v] : b.exceptions())
        if (a(t) > v)
            return false;
    return true;
}

RepetitionFunction rf_pointwise_sup(std::span<const RepetitionFunction> family) {
    if (family.empty())
        throw PreconditionError("pointwise supremum of an empty family");
    RepetitionFunction out = family.front();
    for (const auto& f : family.subspan(1))
        out = combine(out, f, [](ExtNat x, ExtNat y) { return std::max(x, y); });
    return out;
}

RepetitionFunction rf_pointwise_min(const RepetitionFunction& a, const RepetitionFunction& b) {
    return combine(a, b, [](ExtNat x, ExtNat y) { return std::min(x, y); });
}

RepetitionFunction rf_constant(int arity, int k, ExtNat value) {
    return RepetitionFunction(arity, k, value);
}

}  // namespace gk
