#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace bca {

using StateId = int;
using SymbolId = int;
using Counter = std::uint64_t;

/// Base class for all hard failures raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Checked 64-bit counter arithmetic overflowed.
class OverflowError : public Error {
public:
    explicit OverflowError(const std::string& what) : Error(what) {}
};

/// A search exhausted its node budget; distinct from a bounded-empty verdict.
class BudgetExceededError : public Error {
public:
    explicit BudgetExceededError(const std::string& what) : Error(what) {}
};

/// An operation was called outside its contract.
class PreconditionError : public Error {
public:
    explicit PreconditionError(const std::string& what) : Error(what) {}
};

/// Text-format syntax error with a 1-based line number.
class FormatError : public Error {
public:
    FormatError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

inline Counter checked_add(Counter a, Counter b) {
    if (a > std::numeric_limits<Counter>::max() - b)
        throw OverflowError("counter addition overflow");
    return a + b;
}

inline Counter checked_mul(Counter a, Counter b) {
    if (b != 0 && a > std::numeric_limits<Counter>::max() / b)
        throw OverflowError("counter multiplication overflow");
    return a * b;
}

/// Applies a {-1,0,+1} delta; returns false when the result would be negative.
inline bool apply_delta(Counter value, int delta, Counter& out) {
    if (delta < 0) {
        if (value == 0) return false;
        out = value - 1;
    } else if (delta > 0) {
        out = checked_add(value, 1);
    } else {
        out = value;
    }
    return true;
}

/// Three-valued certificate for bounded decision procedures.
enum class Cert { Yes, No, Unknown };

}  // namespace bca
