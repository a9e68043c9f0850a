#pragma once

#include <stdexcept>
#include <string>

namespace pamg {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration or plan (CLI exit code 1).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Precondition or value-domain violation detected at runtime.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Operation not available in the current storage mode.
class UnsupportedError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; carries a 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace pamg
