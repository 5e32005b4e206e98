#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pdmsusy {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad config fields, invalid arguments, asymmetric domains.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Expression syntax error. `offset` is the byte offset into the source.
class ParseError : public ConfigError {
public:
    ParseError(const std::string& message, std::size_t offset)
        : ConfigError(message + " at offset " + std::to_string(offset)), offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// Poles, singular points, non-finite values, eigensolver non-convergence.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace pdmsusy
