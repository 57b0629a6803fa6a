#pragma once

#include <stdexcept>
#include <string>

namespace cmc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive quadrature exhausted refinement; carries the achieved estimate.
struct QuadratureFailure : Error {
    QuadratureFailure(const std::string& what, double achieved)
        : Error(what), achieved_error(achieved) {}
    double achieved_error;
};

// ODE step size underflowed, typically near a singularity of the right-hand side.
struct OdeSingularity : Error {
    OdeSingularity(const std::string& what, double where) : Error(what), location(where) {}
    double location;
};

struct ImmersionFailure : Error {
    using Error::Error;
};

struct PreconditionViolation : Error {
    using Error::Error;
};

}  // namespace cmc
