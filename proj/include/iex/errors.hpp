#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace iex {

// Exit-code families used by the CLI: 2 parse, 3 precondition, 4 budget,
// 5 verification failure.
struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FieldMismatchError : PreconditionError {
    explicit FieldMismatchError(const std::string& msg) : PreconditionError(msg) {}
};

// Raised when the induction type is undefined (lambda_m equals the length of
// the interval sent to the last position). Never silently broken.
struct TieError : PreconditionError {
    std::size_t step;
    explicit TieError(std::size_t step_, const std::string& msg)
        : PreconditionError(msg), step(step_) {}
};

struct BudgetError : std::runtime_error {
    explicit BudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct VerificationError : std::runtime_error {
    explicit VerificationError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace iex
