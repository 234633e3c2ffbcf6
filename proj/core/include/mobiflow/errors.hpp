#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mobiflow {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based row/column of the offending
/// cell when the input is tabular (0 = not applicable).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
        : Error(what), row_(row), column_(column) {}

    std::size_t row() const noexcept { return row_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

/// Structurally well-formed input that violates a domain invariant
/// (value out of range, conflicting centroids, degenerate scaling, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A computation cannot produce a defined result for the given inputs
/// (length mismatch, insufficient overlap, ...).
class ComputationError : public Error {
public:
    using Error::Error;
};

/// Pearson correlation of a zero-variance sequence.
class UndefinedCorrelationError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// Key not present: unknown week, unknown region, missing centroid.
class LookupError : public Error {
public:
    using Error::Error;
};

} // namespace mobiflow
