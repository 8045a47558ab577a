#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gk {

/// Domain elements are the integers 0..k-1.
using Elem = int;
using Tuple = std::vector<Elem>;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// An enumeration would exceed the configured work budget. Never a verdict.
class BudgetExceeded : public Error {
  public:
    BudgetExceeded(std::uint64_t limit, const std::string& what);
    std::uint64_t limit() const { return limit_; }

  private:
    std::uint64_t limit_;
};

class ParseError : public Error {
  public:
    using Error::Error;
};

/// Natural numbers extended with a symbolic infinity. All arithmetic on
/// repetition counts, multiplicities and breadth caps goes through here.
class ExtNat {
  public:
    constexpr ExtNat() = default;
    constexpr ExtNat(std::uint64_t n) : value_(n) {}  // NOLINT: implicit from counts

    static constexpr ExtNat infinity() {
        ExtNat e;
        e.inf_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return inf_; }
    constexpr bool is_zero() const { return !inf_ && value_ == 0; }
    /// Finite value; throws on infinity.
    std::uint64_t value() const;

    friend constexpr bool operator==(const ExtNat& a, const ExtNat& b) {
        return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const ExtNat& a, const ExtNat& b) {
        if (a.inf_ || b.inf_)
            return static_cast<int>(a.inf_) <=> static_cast<int>(b.inf_);
        return a.value_ <=> b.value_;
    }

    /// inf + n = inf.
    friend ExtNat operator+(const ExtNat& a, const ExtNat& b);
    /// Truncated subtraction of a finite amount; inf - n = inf.
    ExtNat minus(std::uint64_t n) const;

    std::string to_string() const;
    static ExtNat parse(const std::string& text);

  private:
    std::uint64_t value_ = 0;
    bool inf_ = false;
};

std::ostream& operator<<(std::ostream& os, const ExtNat& e);

/// Shared step counter guarding exhaustive enumerations. Copies share the
/// same counter, so a budget handed to nested calls is charged once.
class Budget {
  public:
    static constexpr std::uint64_t default_limit = 200'000'000;

    explicit Budget(std::uint64_t limit = default_limit);

    void charge(std::uint64_t steps, const char* what) const;
    /// Refuses up front when a known enumeration size exceeds what is left.
    void require(std::uint64_t steps, const char* what) const;

    std::uint64_t limit() const { return state_->limit; }
    std::uint64_t used() const { return state_->used; }

  private:
    struct State {
        std::uint64_t limit;
        std::uint64_t used = 0;
    };
    std::shared_ptr<State> state_;
};

/// k^n, saturating at UINT64_MAX.
std::uint64_t checked_pow(std::uint64_t k, unsigned n);

/// Lexicographic rank with the first coordinate most significant.
std::uint64_t tuple_rank(std::span<const Elem> t, int k);
Tuple tuple_unrank(std::uint64_t rank, int length, int k);

/// All k^n tuples of length n in rank order.
std::vector<Tuple> all_tuples(int n, int k);

/// Advances t to the next tuple in rank order; false after the last one.
bool next_tuple(Tuple& t, int k);

std::string tuple_to_string(std::span<const Elem> t);

}  // namespace gk
