#pragma once

#include <stdexcept>
#include <string>

namespace orlicz {

enum class ErrorKind {
    InvalidParameter,
    DomainViolation,
    NumericalFailure,
    NoSolution,
    DegenerateInput,
    Io,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// that front ends can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what, double residual = 0.0)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what),
          kind_(kind), residual_(residual) {}

    ErrorKind kind() const noexcept { return kind_; }
    /// Residual attached to numerical failures, zero otherwise.
    double residual() const noexcept { return residual_; }

private:
    ErrorKind kind_;
    double residual_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what, double residual = 0.0)
{
    throw Error(kind, what, residual);
}

inline void require(bool cond, ErrorKind kind, const std::string& what)
{
    if (!cond) fail(kind, what);
}

}  // namespace orlicz
