#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sublin {

enum class ErrorCode {
    NegativeWeight,
    NotNormalized,
    LengthMismatch,
    SpaceMismatch,
    InvalidSpace,
    NonFinite,
    EmptyCredalSet,
    BadExponent,
    BadEpsilon,
    PrNotNonnegative,
    ArityMismatch,
    BudgetExceeded,
    PreconditionViolated,
    HypothesisViolated,
    SpaceTooLarge,
    SyntaxError,
    UnknownIdentifier,
    ArityError,
    EvalError,
    FormatError,
    IoError,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace sublin
