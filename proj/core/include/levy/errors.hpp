#pragma once

#include <stdexcept>
#include <string>

namespace levy {

// Invalid arguments use std::invalid_argument directly. The types below
// signal conditions that depend on the data rather than on the caller.

/// Raised when the observed data cannot support the requested statistic
/// (non-positive Gamma increments, malformed CSV rows, ...).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidData : public DataError {
public:
    using DataError::DataError;
};

class DegenerateData : public DataError {
public:
    using DataError::DataError;
};

class InsufficientData : public DataError {
public:
    using DataError::DataError;
};

class DegenerateGrid : public DataError {
public:
    using DataError::DataError;
};

/// No model of the collection satisfies D_m <= T.
class EmptyAdmissible : public DataError {
public:
    using DataError::DataError;
};

/// Adaptive quadrature failed to reach its tolerance.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, double lo, double hi, double error_estimate)
        : std::runtime_error(what), lo_(lo), hi_(hi), error_estimate_(error_estimate) {}

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double error_estimate() const { return error_estimate_; }

private:
    double lo_;
    double hi_;
    double error_estimate_;
};

}  // namespace levy
