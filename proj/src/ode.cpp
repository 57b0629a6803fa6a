#include "cmc/ode.hpp"

#include <algorithm>
#include <cmath>

namespace cmc {

namespace {

// Dormand-Prince coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

OdeState axpy(const OdeState& y, double h, std::initializer_list<std::pair<double, const OdeState*>> terms) {
    OdeState out = y;
    for (const auto& [coef, k] : terms) {
        for (size_t i = 0; i < out.size(); ++i) out[i] += h * coef * (*k)[i];
    }
    return out;
}

}  // namespace

size_t OdeTrajectory::segment_index(double si) const {
    const bool forward = s.back() >= s.front();
    auto cmp = [forward](double a, double b) { return forward ? a < b : a > b; };
    size_t lo = 0, hi = s.size() - 1;
    while (hi - lo > 1) {
        const size_t mid = (lo + hi) / 2;
        if (cmp(si, s[mid])) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return lo;
}

OdeState OdeTrajectory::at(double si) const {
    const size_t i = segment_index(si);
    const double h = s[i + 1] - s[i];
    const double t = (si - s[i]) / h;
    const double h00 = (1 + 2 * t) * (1 - t) * (1 - t);
    const double h10 = t * (1 - t) * (1 - t);
    const double h01 = t * t * (3 - 2 * t);
    const double h11 = t * t * (t - 1);
    OdeState out(y[i].size());
    for (size_t j = 0; j < out.size(); ++j) {
        out[j] = h00 * y[i][j] + h10 * h * dy[i][j] + h01 * y[i + 1][j] + h11 * h * dy[i + 1][j];
    }
    return out;
}

OdeState OdeTrajectory::derivative_at(double si) const {
    const size_t i = segment_index(si);
    const double h = s[i + 1] - s[i];
    const double t = (si - s[i]) / h;
    const double d00 = 6 * t * (t - 1) / h;
    const double d10 = (1 - t) * (1 - 3 * t);
    const double d01 = -6 * t * (t - 1) / h;
    const double d11 = t * (3 * t - 2);
    OdeState out(y[i].size());
    for (size_t j = 0; j < out.size(); ++j) {
        out[j] = d00 * y[i][j] + d10 * dy[i][j] + d01 * y[i + 1][j] + d11 * dy[i + 1][j];
    }
    return out;
}

OdeTrajectory ode_solve(const OdeRhs& rhs, const OdeState& y0, double s0, double s1,
                        const Tolerances& tol) {
    tol.validate();
    OdeTrajectory traj;
    const double dir = (s1 >= s0) ? 1.0 : -1.0;
    const double span = std::abs(s1 - s0);

    double s = s0;
    OdeState y = y0;
    OdeState k1 = rhs(s, y);

    double h = std::min(span / 16.0, tol.ode_max_step > 0 ? tol.ode_max_step : span / 16.0);
    h = std::max(h, 1e-12);
    double prev_err_norm = 1.0;
    const double h_min = std::max(1e-14, span * 1e-14);

    traj.s.push_back(s);
    traj.y.push_back(y);
    traj.dy.push_back(k1);

    while (dir * (s1 - s) > 0) {
        h = std::min(h, std::abs(s1 - s));
        if (tol.ode_max_step > 0) h = std::min(h, tol.ode_max_step);
        const double hs = dir * h;

        const OdeState y2 = axpy(y, hs, {{a21, &k1}});
        const OdeState k2 = rhs(s + c2 * hs, y2);
        const OdeState y3 = axpy(y, hs, {{a31, &k1}, {a32, &k2}});
        const OdeState k3 = rhs(s + c3 * hs, y3);
        const OdeState y4 = axpy(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
        const OdeState k4 = rhs(s + c4 * hs, y4);
        const OdeState y5 = axpy(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
        const OdeState k5 = rhs(s + c5 * hs, y5);
        const OdeState y6 = axpy(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
        const OdeState k6 = rhs(s + hs, y6);
        const OdeState ynew = axpy(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
        const OdeState k7 = rhs(s + hs, ynew);

        double err_norm = 0.0;
        for (size_t i = 0; i < y.size(); ++i) {
            const double err = hs * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                     e6 * k6[i] + e7 * k7[i]);
            const double scale = tol.ode_abs + tol.ode_rel * std::max(std::abs(y[i]), std::abs(ynew[i]));
            err_norm = std::max(err_norm, std::abs(err) / scale);
        }

        if (err_norm <= 1.0) {
            s += hs;
            y = ynew;
            k1 = k7;  // FSAL
            traj.s.push_back(s);
            traj.y.push_back(y);
            traj.dy.push_back(k1);
            // PI controller (order 5).
            const double fac = 0.9 * std::pow(std::max(err_norm, 1e-10), -0.7 / 5.0) *
                               std::pow(prev_err_norm, 0.4 / 5.0);
            h *= std::clamp(fac, 0.2, 5.0);
            prev_err_norm = std::max(err_norm, 1e-10);
        } else {
            h *= std::clamp(0.9 * std::pow(err_norm, -1.0 / 5.0), 0.1, 0.9);
        }
        if (h < h_min) {
            throw OdeSingularity("ODE step size underflow", s);
        }
    }
    return traj;
}

}  // namespace cmc
