#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noether {

enum class ErrorKind {
    SyntaxError,
    UnknownIdentifier,
    NonRationalExponent,
    NonlinearTransArgument,
    NonMonomialFractionalPower,
    UnboundJetVar,
    DomainError,
    OrderCapExceeded,
    ConfigError,
    InvalidArgument,
    VerificationFailure,
    DegenerateLeadingCoefficient,
    NotReducible,
    NonInvertibleTimeFactor,
    SubstitutionDomainError,
    InputError,
};

std::string_view to_string(ErrorKind kind);

// Single exception type for the library; callers dispatch on kind().
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// The message without the kind prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorKind kind_;
    std::string detail_;
};

}  // namespace noether
