#pragma once

#include <stdexcept>
#include <string>

namespace starcons {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Structural parameters out of range (m, n, k, bit depth, sizes).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Operation not defined for the given topology family or graph.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// A weight assignment does not cover every edge.
class IncompleteAssignmentError : public Error {
public:
    using Error::Error;
};

/// Input matrix violates a structural precondition (symmetry, stochasticity).
class MatrixError : public Error {
public:
    using Error::Error;
};

/// Root bracketing or iteration failed where it should not.
class NumericalError : public Error {
public:
    using Error::Error;
};

} // namespace starcons
