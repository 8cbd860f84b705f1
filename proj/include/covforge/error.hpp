#pragma once

#include <stdexcept>
#include <string>

namespace covforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Variable or family lookup failed, or two operands live in different contexts.
class ContextError : public Error {
public:
    using Error::Error;
};

/// An operation was called outside its domain (bad order, negative exponent, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed polynomial, expression or bracket text.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Requested computation exceeds the configured size limit.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

} // namespace covforge
