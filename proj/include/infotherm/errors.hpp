#pragma once

#include <stdexcept>
#include <string>

namespace infotherm {

// Precondition violation: a parameter outside its admissible range or a
// malformed probability table.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

// Numerical failure that cannot be recovered at this call site, e.g. the
// adaptive integrator exhausting its depth budget or an internal
// cross-check disagreeing beyond tolerance.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// Request outside what the implementation supports (alphabet or problem
// size limits).
class UnsupportedError : public std::runtime_error {
public:
    explicit UnsupportedError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace infotherm
