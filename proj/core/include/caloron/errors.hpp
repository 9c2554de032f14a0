#pragma once

#include <stdexcept>
#include <string>

namespace caloron {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Incompatible sample counts, mesh shapes, matrix ranks or form degrees.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// A GL-valued sample is numerically singular (condition number above threshold).
struct SingularSample : Error {
    using Error::Error;
};

/// A quadrature that must produce an integer landed too far from one;
/// signals under-resolved input data.
struct IntegralityViolation : Error {
    double raw;
    double distance;
    IntegralityViolation(const std::string& what, double raw_, double dist_)
        : Error(what), raw(raw_), distance(dist_) {}
};

/// A gauge transform whose loop values do not start at the identity.
struct NonBasedGauge : Error {
    using Error::Error;
};

/// The holonomy solver's Richardson error estimate exceeded its bound.
struct StepCountTooLow : Error {
    double estimate;
    StepCountTooLow(const std::string& what, double estimate_)
        : Error(what), estimate(estimate_) {}
};

/// A mesh factor index that does not name a factor of the expected kind.
struct InvalidAxis : Error {
    using Error::Error;
};

/// Input data violating a documented invariant (e.g. non-skew Higgs values).
struct ValidationError : Error {
    using Error::Error;
};

/// Malformed serialized data.
struct SchemaError : Error {
    using Error::Error;
};

} // namespace caloron
