#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gevtrend {

/// Bad argument or malformed value passed to a library function.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An observation lies outside the support of the distribution it is mapped through.
class SupportViolation : public InvalidInput {
public:
    SupportViolation(std::size_t index, const std::string& what)
        : InvalidInput(what), index_(index) {}

    [[nodiscard]] std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

/// Sample carries no spread (all values equal, or residuals identically zero).
class DegenerateSample : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Design matrix is singular (e.g. all times equal, duplicated times for Theil-Sen).
class DegenerateDesign : public InvalidInput {
public:
    using InvalidInput::InvalidInput;
};

/// Monte Carlo calibration lost too many replicates to fit failures.
class CalibrationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The return-level equation has no root inside the bracket.
class InfeasibleReturnLevel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// CSV input could not be parsed; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Parsed data violates a dataset invariant (duplicate times, ids).
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace gevtrend
