#pragma once

#include <stdexcept>
#include <string>

namespace coop {

enum class ErrorKind {
    InvalidArgument,
    Capacity,
    Divergence,
    Stiffness,
    NonUniqueSteadyState,
    Domain,
    Numerical,
    Io,
};

// Exit-code family used by the CLI: validation problems map to 2,
// numerical failures to 3, file problems to 4.
inline int exit_code_for(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::Capacity: return 2;
    case ErrorKind::Io: return 4;
    default: return 3;
    }
}

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Capacity: return "capacity";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Stiffness: return "stiffness";
    case ErrorKind::NonUniqueSteadyState: return "non-unique-steady-state";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Io: return "io";
    }
    return "unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

inline void require(bool cond, const std::string& msg) {
    if (!cond) fail(ErrorKind::InvalidArgument, msg);
}

} // namespace coop
