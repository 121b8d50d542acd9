#pragma once

#include <stdexcept>
#include <string>

namespace graphcurv {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed graph document (unknown keys, missing fields, duplicate edges, bad values).
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Edge weights differ between the two orientations of an undirected edge.
class AsymmetryError : public Error {
public:
    using Error::Error;
};

/// The ingested graph is not connected.
class DisconnectedError : public Error {
public:
    using Error::Error;
};

/// A vertex measure is zero or negative.
class NonpositiveMeasureError : public Error {
public:
    using Error::Error;
};

/// A generator would exceed the configured vertex-count cap.
class SizeCapExceeded : public Error {
public:
    using Error::Error;
};

/// A vertex id or index does not belong to the graph.
class UnknownVertex : public Error {
public:
    using Error::Error;
};

/// An operation received an empty vertex subset where a nonempty one is required.
class EmptySubset : public Error {
public:
    using Error::Error;
};

/// Exhaustive subset enumeration was requested above the configured cap.
class EnumerationCapExceeded : public Error {
public:
    using Error::Error;
};

/// The eliminated block of the local curvature form is indefinite.
class IndefiniteEliminationError : public Error {
public:
    using Error::Error;
};

/// An iterative solver failed to reach its tolerance within its budget.
class NonconvergenceError : public Error {
public:
    using Error::Error;
};

/// A constructed metric violates the intrinsic condition; guards a
/// construction bug and must not fire.
class IntrinsicViolation : public Error {
public:
    using Error::Error;
};

/// A scalar argument lies outside the mathematical domain of the operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A check requiring strictly positive curvature was invoked without it.
class NonpositiveCurvature : public Error {
public:
    using Error::Error;
};

/// A function is supported outside the set it was declared to live on.
class SupportViolation : public Error {
public:
    using Error::Error;
};

/// The zero function was passed where a nonzero one is required.
class ZeroFunction : public Error {
public:
    using Error::Error;
};

/// A suite configuration document is invalid; the message names the offending key.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace graphcurv
