#pragma once
#include <stdexcept>
#include <string>

namespace syslab {

// Bad user input: malformed arguments, invalid geometry descriptions,
// out-of-contract parameters. CLI exit code 2.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// A certified numerical check failed beyond its tolerance. CLI exit code 3.
class ToleranceViolation : public std::runtime_error {
public:
    explicit ToleranceViolation(const std::string& what) : std::runtime_error(what) {}
};

// A computation would exceed the configured resource budget. CLI exit code 4.
class BudgetExceeded : public std::runtime_error {
public:
    explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

} // namespace syslab
