#pragma once

#include <stdexcept>
#include <string>

namespace roofline {

enum class ErrorKind {
    DivisionByZero,
    MissingCeiling,
    MalformedInput,
    UnrecognizedFormat,
    MissingTimeBasis,
    Config,
    Bench,
    Report,
};

/// Base class for every typed error the toolkit raises. The CLI maps any
/// Error to exit code 1 with the message on stderr.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct DivisionByZeroError : Error {
    explicit DivisionByZeroError(const std::string& msg) : Error(ErrorKind::DivisionByZero, msg) {}
};

struct MissingCeilingError : Error {
    explicit MissingCeilingError(const std::string& msg) : Error(ErrorKind::MissingCeiling, msg) {}
};

struct MalformedInputError : Error {
    explicit MalformedInputError(const std::string& msg) : Error(ErrorKind::MalformedInput, msg) {}
};

struct UnrecognizedFormatError : Error {
    explicit UnrecognizedFormatError(const std::string& msg)
        : Error(ErrorKind::UnrecognizedFormat, msg) {}
};

struct MissingTimeBasisError : Error {
    explicit MissingTimeBasisError(const std::string& msg)
        : Error(ErrorKind::MissingTimeBasis, msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(ErrorKind::Config, msg) {}
};

struct BenchError : Error {
    explicit BenchError(const std::string& msg) : Error(ErrorKind::Bench, msg) {}
};

struct ReportError : Error {
    explicit ReportError(const std::string& msg) : Error(ErrorKind::Report, msg) {}
};

}  // namespace roofline
