/**
 * @file error.hpp
 * @brief Exception hierarchy shared by every wlct module.
 */
#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wlct {

/// Base class; `what()` is the diagnostic shown by the command-line tool.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) +
                ", got " + std::to_string(got)) {}
};

/// IC/IM/IT requested for the zero germ.
class ZeroGerm : public Error {
public:
    ZeroGerm() : Error("zero germ has no initial term") {}
};

/// A documented precondition of an operation was violated.
class PreconditionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error("parse error at position " + std::to_string(pos) + ": " + msg), detail_(msg), pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }
    /// Message without the position prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    std::string detail_;
    std::size_t pos_;
};

/// Numeric diagnostics disagree with each other (e.g. non-monotone verdicts).
class DiagnosticFailure : public Error {
public:
    using Error::Error;
};

} // namespace wlct
