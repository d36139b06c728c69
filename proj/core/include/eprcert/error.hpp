#pragma once

#include <stdexcept>
#include <string>

namespace eprcert {

// Base for all library errors. Each concrete class carries a distinct
// process exit code so the CLI can report failures without string matching.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const noexcept { return 1; }
};

// Malformed input file (bad header, non-integer cell, negative count, ...).
class ParseError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 10; }
};

// Matrix dimensions disagree with the declared axis metadata.
class ShapeError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 11; }
};

class EmptyHistogram : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 12; }
};

// Probabilities do not sum to 1 within tolerance.
class NormalizationError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 13; }
};

// Discrete entropy passed where a differential one is required, or vice versa.
class KindMismatch : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 14; }
};

// Parameter outside its legal range.
class DomainError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 15; }
};

// The two directional assessments do not describe mirrored measurements.
class DirectionMismatch : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 16; }
};

class EmptyInput : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 17; }
};

// Grid or series cut off too much mass to certify anything trustworthy.
class TruncationError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 18; }
};

// Non-finite values where finite arithmetic was expected.
class NumericalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 19; }
};

// Filesystem failure (missing file, unwritable output, ...).
class IoError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 20; }
};

} // namespace eprcert
