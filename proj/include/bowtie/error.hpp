#pragma once

#include <stdexcept>
#include <string>

namespace bowtie {

/// Base class for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or axiom-violating input (tables, maps, ideals, JSON).
class InputError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its precondition.
class PreconditionError : public InputError {
public:
    using InputError::InputError;
};

/// Enumeration would exceed the configured element cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

/// A checked mathematical statement failed on a concrete instance.
class TheoremViolation : public Error {
public:
    using Error::Error;
};

}  // namespace bowtie
