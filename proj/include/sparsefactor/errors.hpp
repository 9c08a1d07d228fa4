#pragma once

#include <stdexcept>
#include <string>

namespace sf {

enum class ErrorKind {
    DivisionByZero,
    NotPrime,
    SizeOverflow,
    FieldMismatch,
    DivisionByZeroPoly,
    ArityMismatch,
    ZeroPolynomial,
    SyntaxError,
    UnknownVariable,
    CoeffOutOfRange,
    ZeroFreeTerm,
    InternalError,
    FieldTooSmall,
    DegreeBoundExceeded,
    ReconstructFailed,
    Overflow,
    BothConstant,
    ConstantInVar,
    CharTooSmall,
    LiftBudgetExceeded,
    CandidateExplosion,
    CharModeViolation,
    HypothesisViolation,
    SBudgetExceeded,
    LimitExceeded,
    UsageError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg, int column = -1)
        : std::runtime_error(msg), kind_(kind), column_(column) {}
    ErrorKind kind() const { return kind_; }
    // 1-based input column for parse errors, -1 otherwise.
    int column() const { return column_; }

private:
    ErrorKind kind_;
    int column_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

}  // namespace sf
