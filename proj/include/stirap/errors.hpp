#pragma once

#include <stdexcept>
#include <string>

namespace stirap {

/// Base class for every error raised by the simulator.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inadmissible basis label; `field()` names the offending component.
class BasisError : public Error {
public:
    BasisError(std::string field, const std::string& what)
        : Error(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// Violated parameter invariant. The message reads "<field> <constraint>".
class ParamError : public Error {
public:
    ParamError(std::string field, std::string constraint)
        : Error(field + " " + constraint), field_(std::move(field)), constraint_(std::move(constraint)) {}
    const std::string& field() const noexcept { return field_; }
    const std::string& constraint() const noexcept { return constraint_; }

private:
    std::string field_;
    std::string constraint_;
};

/// Invalid integrator or run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Quantity undefined for the given input (degenerate dark state, mu(N) <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Step-size underflow or non-finite state during time integration.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double last_good_time)
        : Error(what), last_good_time_(last_good_time) {}
    double last_good_time() const noexcept { return last_good_time_; }

private:
    double last_good_time_;
};

/// A propagated state left the physical set (negative eigenvalues, lost trace).
class NumericalHealthError : public Error {
public:
    NumericalHealthError(const std::string& what, double time)
        : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

}  // namespace stirap
