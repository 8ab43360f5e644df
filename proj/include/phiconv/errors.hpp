#pragma once

#include <stdexcept>
#include <string>

namespace phiconv {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The supplied distance data is not a metric (asymmetry, negative entry,
/// nonzero diagonal, or a triangle-inequality failure beyond tolerance).
class MetricViolation : public Error {
public:
    using Error::Error;
};

/// An operation needing coordinates was invoked on a ground set without them.
class MissingCoords : public Error {
public:
    using Error::Error;
};

/// A point id outside the ground set was supplied.
class UnknownPoint : public Error {
public:
    using Error::Error;
};

/// Vector or matrix dimensions do not match.
class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A nonempty set was required.
class EmptySet : public Error {
public:
    using Error::Error;
};

/// A subset relation required by the operation does not hold.
class NotSubset : public Error {
public:
    using Error::Error;
};

/// A linear program with inconsistent dimensions or non-finite data.
class IllFormed : public Error {
public:
    using Error::Error;
};

/// An extended function with no finite value.
class ImproperFunction : public Error {
public:
    using Error::Error;
};

/// Separation was requested for a point inside the hull.
class NotSeparable : public Error {
public:
    using Error::Error;
};

/// A theorem-level hypothesis fails; the result is undefined, not wrong.
class HypothesisViolated : public Error {
public:
    using Error::Error;
};

/// Problem file could not be parsed as JSON.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Problem file parsed but violates the schema.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Unknown gallery instance name.
class UnknownGallery : public Error {
public:
    using Error::Error;
};

}  // namespace phiconv
