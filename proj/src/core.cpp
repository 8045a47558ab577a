#include "galoiskit/core.hpp"

#include <limits>
#include <sstream>

namespace gk {

BudgetExceeded::BudgetExceeded(std::uint64_t limit, const std::string& what)
    : Error("work budget of " + std::to_string(limit) + " steps exceeded: " + what), limit_(limit) {}

std::uint64_t ExtNat::value() const {
    if (inf_)
        throw PreconditionError("ExtNat::value() called on infinity");
    return value_;
}

ExtNat operator+(const ExtNat& a, const ExtNat& b) {
    if (a.inf_ || b.inf_)
        return ExtNat::infinity();
    return ExtNat(a.value_ + b.value_);
}

ExtNat ExtNat::minus(std::uint64_t n) const {
    if (inf_)
        return *this;
    return ExtNat(value_ > n ? value_ - n : 0);
}

std::string ExtNat::to_string() const {
    return inf_ ? "inf" : std::to_string(value_);
}

ExtNat ExtNat::parse(const std::string& text) {
    if (text == "inf")
        return infinity();
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("expected a natural number or 'inf', got '" + text + "'");
    return ExtNat(std::stoull(text));
}

std::ostream& operator<<(std::ostream& os, const ExtNat& e) {
    return os << e.to_string();
}

Budget::Budget(std::uint64_t limit) : state_(std::make_shared<State>(State{limit})) {}

void Budget::charge(std::uint64_t steps, const char* what) const {
    if (steps > state_->limit - std::min(state_->used, state_->limit))
        throw BudgetExceeded(state_->limit, what);
    state_->used += steps;
}

void Budget::require(std::uint64_t steps, const char* what) const {
    if (steps > state_->limit - std::min(state_->used, state_->limit))
        throw BudgetExceeded(state_->limit, what);
}

std::uint64_t checked_pow(std::uint64_t k, unsigned n) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < n; ++i) {
        if (k != 0 && r > std::numeric_limits<std::uint64_t>::max() / k)
            return std::numeric_limits<std::uint64_t>::max();
        r *= k;
    }
    return r;
}

std::uint64_t tuple_rank(std::span<const Elem> t, int k) {
    std::uint64_t r = 0;
    for (Elem x : t)
        r = r * static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(x);
    return r;
}

Tuple tuple_unrank(std::uint64_t rank, int length, int k) {
    Tuple t(static_cast<std::size_t>(length));
    for (int i = length - 1; i >= 0; --i) {
        t[static_cast<std::size_t>(i)] = static_cast<Elem>(rank % static_cast<std::uint64_t>(k));
        rank /= static_cast<std::uint64_t>(k);
    }
    return t;
}

bool next_tuple(Tuple& t, int k) {
    for (auto i = t.size(); i-- > 0;) {
        if (++t[i] < k)
            return true;
        t[i] = 0;
    }
    return false;
}

std::vector<Tuple> all_tuples(int n, int k) {
    std::vector<Tuple> out;
    Tuple t(static_cast<std::size_t>(n), 0);
    do
        out.push_back(t);
    while (next_tuple(t, k));
    return out;
}

std::string tuple_to_string(std::span<const Elem> t) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < t.size(); ++i)
        os << (i ? "," : "") << t[i];
    os << ')';
    return os.str();
}

}  // namespace gk
