#pragma once

#include <stdexcept>
#include <string>

namespace emostat {

// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Structural problems in an input file (bad header, wrong column count).
class FormatError : public Error {
public:
    using Error::Error;
};

// A cell parsed but holds an unusable value (non-finite, out of range).
class ValueError : public Error {
public:
    using Error::Error;
};

// Two records share a key that must be unique.
class DuplicateKeyError : public Error {
public:
    using Error::Error;
};

// A required (algorithm, run, indicator) combination is absent.
class CompletenessError : public Error {
public:
    using Error::Error;
};

// Vectors of incompatible dimension were combined.
class DimensionError : public Error {
public:
    using Error::Error;
};

// An argument violates a precondition (empty sample, p < 1, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

// The requested computation exceeds a configured limit.
class CapabilityError : public Error {
public:
    using Error::Error;
};

// The data admits no meaningful answer (pooled-constant sample, single group).
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

// A lookup by key (reference data, LD values) found nothing.
class LookupError : public Error {
public:
    using Error::Error;
};

// Two structures that must agree (rank tables over one scenario) do not.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace emostat
