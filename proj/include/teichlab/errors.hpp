#pragma once

#include <stdexcept>
#include <string>

namespace teichlab {

// Base of all library errors. code() is a stable machine-readable tag.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& msg) : Error("invalid-argument", msg) {}
};

class NonHyperbolicElement : public Error {
public:
    enum class Kind { parabolic, elliptic };
    NonHyperbolicElement(Kind k, double absTrace);
    Kind kind() const { return kind_; }
    double absTrace() const { return absTrace_; }

private:
    Kind kind_;
    double absTrace_;
};

class NumericFailure : public Error {
public:
    explicit NumericFailure(const std::string& msg) : Error("numeric-failure", msg) {}
};

class ConfigurationError : public Error {
public:
    explicit ConfigurationError(const std::string& msg) : Error("configuration-error", msg) {}
};

class InvalidLoop : public Error {
public:
    explicit InvalidLoop(const std::string& msg) : Error("invalid-loop", msg) {}
};

class AssumptionViolated : public Error {
public:
    explicit AssumptionViolated(const std::string& msg) : Error("assumption-violated", msg) {}
};

class EmptyDensity : public Error {
public:
    explicit EmptyDensity(const std::string& msg) : Error("empty-density", msg) {}
};

class FitFailure : public Error {
public:
    explicit FitFailure(const std::string& msg) : Error("fit-failure", msg) {}
};

class DegreeTooHigh : public Error {
public:
    explicit DegreeTooHigh(const std::string& msg) : Error("degree-too-high", msg) {}
};

class CalibrationFailure : public Error {
public:
    explicit CalibrationFailure(const std::string& msg) : Error("calibration-failure", msg) {}
};

class MarginTooSmall : public Error {
public:
    explicit MarginTooSmall(const std::string& msg) : Error("margin-too-small", msg) {}
};

// True for errors caused by a failed numeric assumption (CLI exit code 3).
bool isNumericAssumptionError(const Error& e);

}  // namespace teichlab
