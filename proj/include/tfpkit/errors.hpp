#pragma once

#include <stdexcept>
#include <string>

namespace tfpkit {

/// Structurally invalid input: bad shapes, malformed files, missing values
/// where none are allowed, out-of-range parameters. Maps to CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A value outside the mathematical domain of an operation (nonpositive
/// level fed to a log or a growth ratio). A data problem, so it shares the
/// validation exit class.
class DomainError : public ValidationError {
public:
    explicit DomainError(const std::string& what) : ValidationError(what) {}
};

/// Numeric failure: singular design, non-convergence, statistic undefined
/// on the given data. Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tfpkit
