#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sumnorm {

/// Argument outside the mathematical domain of an operation (n too small,
/// probability outside (0,1), invalid distribution parameters, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A statistic is 0/0 because the relevant range (b - a, q3 - q1) is zero.
class DegenerateError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A quantile summary that matches none of the supported reporting scenarios.
class UnsupportedSummaryError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Caller broke an operation's precondition (arity, missing moments, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Malformed dataset file. `line()` is 1-based; 0 when no line applies.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
          line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace sumnorm
