#pragma once

#include <stdexcept>
#include <string>

namespace ncpb {

// Base for everything thrown by this library. Catch sites map subtypes to
// process exit codes: UsageError/ConfigError -> 2, the rest -> 1.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct UsageError : Error {
    explicit UsageError(const std::string& msg) : Error(msg) {}
};

// Carries the 1-based line of the offending config entry, 0 if not tied to
// a specific line (e.g. an unopenable file). The line is baked into what().
struct ConfigError : Error {
    int line;
    ConfigError(const std::string& msg, int line_ = 0)
        : Error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
          line(line_) {}
};

struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

// Raised by the linear solver when a pivot collapses; magnitude kept so the
// caller can report how singular the system actually was.
struct SingularMatrixError : NumericError {
    double pivot;
    SingularMatrixError(const std::string& msg, double pivot_)
        : NumericError(msg), pivot(pivot_) {}
};

struct TruncationError : Error {
    explicit TruncationError(const std::string& msg) : Error(msg) {}
};

} // namespace ncpb
