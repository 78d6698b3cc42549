#pragma once

#include <stdexcept>
#include <string>

namespace vexhardy {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A point or parameter lies outside the domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exponent pieces do not tile their domain.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// An exponent value leaves [1, p_max].
class RangeError : public Error {
public:
    using Error::Error;
};

/// Circle exponent with p(0) != p(2*pi).
class PeriodicityError : public Error {
public:
    using Error::Error;
};

/// Conjugate requested for an exponent with p_minus == 1.
class ConjugateUnboundedError : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Malformed numeric input (non-finite samples, bad grids, bad CSV).
class InputError : public Error {
public:
    using Error::Error;
};

/// Operation called on a function of the wrong kind.
class ContractError : public Error {
public:
    using Error::Error;
};

}  // namespace vexhardy
