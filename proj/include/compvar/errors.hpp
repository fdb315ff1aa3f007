#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace compvar {

/// Failure classes. The CLI maps each one onto a distinct exit code.
enum class ErrorKind {
    validation,   // input violates a mathematical invariant or shape contract
    unsupported,  // computation is outside the supported domain
    budget,       // enumeration would exceed the configured budget
    io            // file or parse failure
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorKind::validation, what) {}
};

class UnsupportedCharacteristic : public Error {
public:
    explicit UnsupportedCharacteristic(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

class MissingIdempotents : public Error {
public:
    explicit MissingIdempotents(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

class NotAlmostProjective : public Error {
public:
    explicit NotAlmostProjective(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

class NotProjectiveComplex : public Error {
public:
    explicit NotProjectiveComplex(const std::string& what) : Error(ErrorKind::unsupported, what) {}
};

class BudgetExceeded : public Error {
public:
    BudgetExceeded(const std::string& what, std::uint64_t required)
        : Error(ErrorKind::budget, what), required_(required) {}
    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace compvar
