#pragma once

#include <stdexcept>
#include <string>

namespace dqsim {

// Config-file / CLI override problems. Carries enough context to point the
// user at the offending key or line.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// An integrator or quadrature routine could not reach the requested
// tolerance within its evaluation budget. The best available estimate is
// kept so callers can decide whether it is still usable.
class AccuracyError : public std::runtime_error {
public:
    AccuracyError(const std::string& what, double estimate, double achieved)
        : std::runtime_error(what), estimate_(estimate), achieved_(achieved) {}
    double estimate() const noexcept { return estimate_; }
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double estimate_;
    double achieved_;
};

// Discretized-reservoir run detected that its window / mode count / step was
// insufficient (norm drift beyond the documented bound).
class ResolutionError : public std::runtime_error {
public:
    ResolutionError(const std::string& what, double drift)
        : std::runtime_error(what), drift_(drift) {}
    double norm_drift() const noexcept { return drift_; }

private:
    double drift_;
};

// A state vector that was required to be normalized was not.
class NormalizationError : public std::runtime_error {
public:
    NormalizationError(const std::string& what, double deviation)
        : std::runtime_error(what), deviation_(deviation) {}
    double deviation() const noexcept { return deviation_; }

private:
    double deviation_;
};

} // namespace dqsim
