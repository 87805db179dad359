#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cdcalc {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed expression, operator literal or input file.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t offset)
        : Error(message + " at offset " + std::to_string(offset)), offset_(offset), detail_(message) {}

    std::size_t offset() const noexcept { return offset_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t offset_;
    std::string detail_;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// A jet point lacks a coordinate or does not reach the required order.
class PointError : public Error {
public:
    using Error::Error;
};

/// Input violates a documented precondition (degree ranges, modes, metrics, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

}  // namespace cdcalc
