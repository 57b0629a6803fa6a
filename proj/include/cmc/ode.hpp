#pragma once

#include <functional>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/tolerances.hpp"

namespace cmc {

using OdeState = std::vector<double>;
using OdeRhs = std::function<OdeState(double, const OdeState&)>;

// Accepted solution samples with cubic Hermite dense output between nodes.
struct OdeTrajectory {
    std::vector<double> s;                  // sample abscissae, strictly increasing (or decreasing)
    std::vector<OdeState> y;                // states at s
    std::vector<OdeState> dy;               // right-hand sides at s

    double s_begin() const { return s.front(); }
    double s_end() const { return s.back(); }

    OdeState at(double si) const;           // cubic Hermite interpolation
    OdeState derivative_at(double si) const;

    size_t segment_index(double si) const;
};

// Embedded Dormand-Prince 4(5) pair with PI step-size control.
// Local error per step is kept under ode_abs + ode_rel * |y|.
OdeTrajectory ode_solve(const OdeRhs& rhs, const OdeState& y0, double s0, double s1,
                        const Tolerances& tol = {});

}  // namespace cmc
