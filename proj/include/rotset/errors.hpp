#ifndef ROTSET_ERRORS_HPP
#define ROTSET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rotset {

// Size limits (q^r caps) exceeded.
struct CapacityError : std::runtime_error {
    explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Caller broke an interface contract (dimension/range mismatch etc).
struct ContractError : std::runtime_error {
    explicit ContractError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input outside the mathematical domain of an operation.
struct DomainError : std::runtime_error {
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

// Iterative solver failed to reach tolerance.
struct IterationError : std::runtime_error {
    IterationError(const std::string& msg, double residual)
        : std::runtime_error(msg), last_residual(residual) {}
    double last_residual;
};

// Malformed input file.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rotset

#endif
