#pragma once

#include <stdexcept>
#include <string>

namespace hnn {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shapes of two operands do not agree.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A Haar transform was requested on an odd (or empty) extent.
class OddDimensionError : public DimensionError {
public:
    using DimensionError::DimensionError;
};

/// A scalar argument is outside its admissible range.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Input data cannot be used: NaN/Inf entries, empty masks, degenerate bands.
class DataError : public Error {
public:
    using Error::Error;
};

/// A tensor file is malformed or truncated.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace hnn
