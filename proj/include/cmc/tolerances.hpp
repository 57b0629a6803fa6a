#pragma once

#include "cmc/errors.hpp"

namespace cmc {

// Numerical knobs shared across the library. Defaults leave about two orders
// of headroom under the 1e-8 thresholds used by the verification suites.
struct Tolerances {
    double quad_abs = 1e-10;   // absolute quadrature target
    double quad_rel = 1e-10;   // relative quadrature target
    double ode_abs = 1e-12;    // per-step absolute ODE error
    double ode_rel = 1e-12;    // per-step relative ODE error
    double ode_max_step = 0.0; // 0 = unlimited
    double fd_step = 1e-5;     // finite-difference step, as a fraction of domain extent

    void validate() const {
        if (quad_abs <= 0 || quad_rel <= 0 || ode_abs <= 0 || ode_rel <= 0 || fd_step <= 0 ||
            ode_max_step < 0) {
            throw PreconditionViolation("Tolerances must be strictly positive");
        }
    }
};

}  // namespace cmc
