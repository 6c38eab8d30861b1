#pragma once

#include <stdexcept>
#include <string>

namespace delayheom {

/// Input outside the domain of an analytic formula (e.g. eps_R == eps_B).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid configuration, equation set, or numerics setup. Maps to CLI exit code 1.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Non-finite values or other failures during integration. Maps to CLI exit code 2.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, long step)
        : std::runtime_error(what + " (step " + std::to_string(step) + ")"), step_(step) {}

    long step() const { return step_; }

private:
    long step_;
};

}  // namespace delayheom
