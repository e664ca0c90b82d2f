#pragma once

#include <stdexcept>
#include <string>

namespace boxqd {

// Base of every error thrown by the library. kind() is a stable machine tag
// used by the CLI when it reports a failure.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

// Invalid configuration or precondition. field() names the offending input.
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& what)
        : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
    const char* kind() const noexcept override { return "config"; }
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

// Config file syntax error; line() is 1-based.
class ParseError : public Error {
public:
    ParseError(std::string path, int line, const std::string& what)
        : Error(path + ":" + std::to_string(line) + ": " + what), line_(line) {}
    const char* kind() const noexcept override { return "parse"; }
    int line() const noexcept { return line_; }

private:
    int line_;
};

class TailLeakError : public Error {
public:
    TailLeakError(double tail_mass, const std::string& what) : Error(what), tail_mass_(tail_mass) {}
    const char* kind() const noexcept override { return "tail_leak"; }
    double tail_mass() const noexcept { return tail_mass_; }

private:
    double tail_mass_;
};

class GridMismatchError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "grid_mismatch"; }
};

class NonHermitianError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "non_hermitian"; }
};

class NoConvergenceError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "no_convergence"; }
};

class PartitionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "partition"; }
};

class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io"; }
};

}  // namespace boxqd
