#pragma once

#include <stdexcept>
#include <string>

namespace mre {

/// Base class of every error raised by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class LengthMismatchError : public Error {
public:
    using Error::Error;
};

class NegativeWeightError : public Error {
public:
    using Error::Error;
};

class ZeroTotalError : public Error {
public:
    using Error::Error;
};

class SpaceMismatchError : public Error {
public:
    using Error::Error;
};

/// Conditioning on an event the current distribution assigns zero mass.
class ZeroProbabilityEventError : public Error {
public:
    using Error::Error;
};

class NonpositivePlausibilityError : public Error {
public:
    using Error::Error;
};

/// The hard-zero constraints leave no prior mass to redistribute.
class AllMassExcludedError : public Error {
public:
    using Error::Error;
};

/// The constraint set admits no distribution; what() carries the certificate.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// The dual objective is unbounded below (jointly unachievable moment targets).
class UnboundedDualError : public Error {
public:
    using Error::Error;
};

class ThetaOutOfDomainError : public Error {
public:
    using Error::Error;
};

class UnachievableSumError : public Error {
public:
    using Error::Error;
};

/// Malformed or schema-violating input document.
class SchemaError : public Error {
public:
    using Error::Error;
};

} // namespace mre
