#pragma once

#include <stdexcept>
#include <string>

namespace graded {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input does not have the expected shape: wrong vector length, unparsable
/// scalar, index out of range, and so on.
class MalformedInput : public Error {
public:
    using Error::Error;
};

/// Operation called outside its documented domain.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// Generator parameters are inconsistent.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A structural theorem failed to hold on a ring that passed validation.
/// Never expected; signals a bug in the library or in the validator.
class TheoremViolation : public Error {
public:
    using Error::Error;
};

} // namespace graded
