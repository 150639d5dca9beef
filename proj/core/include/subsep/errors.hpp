#pragma once

#include <stdexcept>
#include <string>

namespace subsep {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or constructor arguments (bad spec fields, bad parameters).
class InvalidSpecError : public Error {
public:
    using Error::Error;
};

/// Mismatched vector/matrix sizes, or inputs shorter than an operation requires.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Evaluation point outside the admissible interval, or a formula leaving its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Basis or coefficient index out of range.
class IndexError : public Error {
public:
    using Error::Error;
};

/// Knot budget smaller than the number of detected critical points.
class CapacityError : public Error {
public:
    CapacityError(const std::string& msg, long critical_points)
        : Error(msg), critical_points(critical_points) {}
    long critical_points;
};

/// Linear solve failed or the system is singular at the given regularization.
class ConditioningError : public Error {
public:
    ConditioningError(const std::string& msg, double lambda)
        : Error(msg), lambda(lambda) {}
    double lambda;
};

/// Orthonormalization found no columns above tolerance.
class RankError : public Error {
public:
    using Error::Error;
};

/// Non-finite values where finite ones are required.
class NumericError : public Error {
public:
    using Error::Error;
};

/// All q-grid separations failed.
class SweepError : public Error {
public:
    using Error::Error;
};

/// Malformed or non-uniform CSV signal data.
class CsvError : public Error {
public:
    using Error::Error;
};

}  // namespace subsep
