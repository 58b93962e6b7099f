#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rstab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Zero/pole sets that are not closed under conjugation, or other malformed rational data.
class RepresentationError : public Error {
public:
    using Error::Error;
};

class RealizationError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Requested configuration is outside what the library handles (D != 0 loops, rank > 1 perturbations).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

class PoleOnGridError : public Error {
public:
    PoleOnGridError(double omega, const std::string& what) : Error(what), omega_(omega) {}
    [[nodiscard]] double omega() const noexcept { return omega_; }

private:
    double omega_;
};

class SingularMassError : public Error {
public:
    using Error::Error;
};

class NotHurwitzError : public Error {
public:
    using Error::Error;
};

/// Parse failure in a model or results file. Carries the 1-based line (0 when the
/// problem is a missing field) and the offending field name.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string field, const std::string& what)
        : Error(what), line_(line), field_(std::move(field)) {}

    [[nodiscard]] std::size_t line() const noexcept { return line_; }
    [[nodiscard]] const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

}  // namespace rstab
