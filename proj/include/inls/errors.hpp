#pragma once

#include <stdexcept>
#include <string>

namespace inls {

// Invalid grid/model/run configuration (bad resolution, regime violation, ...).
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

// Bad operation argument (non-positive scale factor, p <= 1, ...).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Periodic images have reached the boundary shell; the run is no longer
// a faithful whole-space approximation.
class HorizonError : public std::runtime_error {
public:
    explicit HorizonError(const std::string& what) : std::runtime_error(what) {}
};

// Field values stopped being finite (incipient blowup under the splitting).
class OverflowError : public std::runtime_error {
public:
    explicit OverflowError(const std::string& what) : std::runtime_error(what) {}
};

// Explicit reference integrator left its stability region.
class OracleStabilityError : public std::runtime_error {
public:
    explicit OracleStabilityError(const std::string& what) : std::runtime_error(what) {}
};

// Shooting / bisection failure in the ground-state solver.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace inls
