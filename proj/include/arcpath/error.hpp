#pragma once

#include <stdexcept>
#include <string>

namespace arcpath {

/// Base class for every error thrown by the library. Property violations are
/// never reported through exceptions; they end up in reports.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string & what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class NotCovering : public Error {
public:
    NotCovering() : Error("arc family does not cover the circle") {}
};

/// Raised when an algorithm reaches a state its correctness argument rules
/// out. Seeing one means a bug, not a property of the input.
class InternalError : public Error {
public:
    using Error::Error;
};

class GenerationExhausted : public Error {
public:
    using Error::Error;
};

/// Instance exceeds the exponential solvers' vertex bound.
class TooLarge : public Error {
public:
    using Error::Error;
};

} // namespace arcpath
