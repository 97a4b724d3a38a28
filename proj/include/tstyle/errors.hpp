#pragma once

#include <stdexcept>
#include <string>

namespace tstyle {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SeriesTooShort : public Error {
public:
    using Error::Error;
};

class NonPositiveValue : public Error {
public:
    using Error::Error;
};

/// Zero-variance input where a ratio or square root needs a positive denominator.
class DegenerateSeries : public Error {
public:
    using Error::Error;
};

class LagTooLarge : public Error {
public:
    using Error::Error;
};

class WindowTooLarge : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class BadSplit : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    using Error::Error;
};

class KTooLarge : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class FileNotFound : public Error {
public:
    using Error::Error;
};

/// Malformed input data; carries the 1-based row where parsing failed.
class ParseError : public Error {
public:
    ParseError(const std::string& path, std::size_t row, const std::string& what)
        : Error(path + ":" + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

/// Invalid configuration value (violated invariant on a config struct).
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace tstyle
