#pragma once

#include <stdexcept>
#include <string>

namespace dce {

enum class ErrorKind {
    InvalidParameter,
    InvalidState,
    InvalidOperator,
    ConvergenceFailure,
    TruncationFailure,
    StructureViolation,
    Io,
};

const char* to_string(ErrorKind kind);

// Single exception type for the library; the kind drives CLI exit codes.
class SimError : public std::runtime_error {
public:
    SimError(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::InvalidOperator: return "invalid-operator";
    case ErrorKind::ConvergenceFailure: return "convergence-failure";
    case ErrorKind::TruncationFailure: return "truncation-failure";
    case ErrorKind::StructureViolation: return "structure-violation";
    case ErrorKind::Io: return "io-error";
    }
    return "unknown";
}

} // namespace dce
