#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace psgauss {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Two vectors with different ambient signatures were combined.
struct SignatureMismatch : Error {
    using Error::Error;
};

/// A set of vectors spans a degenerate subspace (no usable pivot).
struct DegenerateSpan : Error {
    using Error::Error;
};

/// The induced metric is (numerically) degenerate at the base point.
struct DegenerateMetric : Error {
    using Error::Error;
};

/// Evaluation outside the declared chart domain, or on an excluded line.
struct DomainError : Error {
    using Error::Error;
};

/// Jet composition outside the domain of the elementary function
/// (log/sqrt of a non-positive constant term, division by zero, ...).
struct FunctionDomainError : Error {
    using Error::Error;
};

/// Surface / curve definition text failed to parse.
struct ParseError : Error {
    int line;
    int column;
    std::string expected;

    ParseError(int line_, int column_, const std::string& expected_,
               const std::string& message)
        : Error(message), line(line_), column(column_), expected(expected_) {}
};

/// Constructor input failed its validation (curve constraints, initial
/// data constraints, Liouville residual of a supplied conformal factor).
struct ValidationError : Error {
    using Error::Error;
};

/// An iterative solver failed to converge; carries the residual history.
struct NonConvergence : Error {
    std::vector<double> residual_history;

    NonConvergence(const std::string& message, std::vector<double> history)
        : Error(message), residual_history(std::move(history)) {}
};

}  // namespace psgauss
