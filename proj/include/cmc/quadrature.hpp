#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <type_traits>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/tolerances.hpp"
#include "cmc/vec3.hpp"

namespace cmc {

// 12-point Gauss-Legendre rule on [-1, 1]; exact for polynomials of degree <= 23.
inline constexpr int kGaussOrder = 12;
extern const double kGaussNodes[kGaussOrder];
extern const double kGaussWeights[kGaussOrder];

struct QuadResult {
    double error_estimate = 0.0;
    int panels = 0;
};

namespace detail {

template <class Value>
double value_magnitude(const Value& v) {
    if constexpr (std::is_same_v<Value, double>) {
        return std::abs(v);
    } else if constexpr (std::is_same_v<Value, complex>) {
        return std::abs(v);
    } else {
        return v.norm();
    }
}

}  // namespace detail

// Composite Gauss-Legendre over [a, b] with panel doubling until two successive
// composite estimates agree to tolerance. Value is double, complex, Vec3 or CVec3.
template <class Value, class F>
Value integrate_adaptive(F&& f, double a, double b, const Tolerances& tol,
                         QuadResult* info = nullptr, int max_panels = 1 << 14) {
    auto composite = [&](int panels) {
        Value acc{};
        const double h = (b - a) / panels;
        for (int p = 0; p < panels; ++p) {
            const double mid = a + (p + 0.5) * h;
            for (int i = 0; i < kGaussOrder; ++i) {
                acc += f(mid + 0.5 * h * kGaussNodes[i]) * (0.5 * h * kGaussWeights[i]);
            }
        }
        return acc;
    };

    Value prev = composite(1);
    for (int panels = 2; panels <= max_panels; panels *= 2) {
        Value cur = composite(panels);
        const double diff = detail::value_magnitude<Value>(cur - prev);
        const double target = std::max(tol.quad_abs, tol.quad_rel * detail::value_magnitude<Value>(cur));
        if (diff <= target) {
            if (info) {
                info->error_estimate = diff;
                info->panels = panels;
            }
            return cur;
        }
        prev = cur;
    }
    throw QuadratureFailure("quadrature did not converge after max panel refinement",
                            detail::value_magnitude<Value>(prev));
}

// Piecewise-smooth path in the complex plane. Each piece carries its own
// parametrization over [0, 1] together with the exact velocity.
struct ComplexPath {
    struct Piece {
        std::function<complex(double)> pos;
        std::function<complex(double)> vel;
    };

    std::vector<Piece> pieces;
    bool closed = false;

    static ComplexPath circle(complex center, double radius, int turns = 1,
                              double start_angle = 0.0);
    static ComplexPath segment(complex from, complex to);
    static ComplexPath polyline(const std::vector<complex>& points, bool close = false);
    // Concatenation; pieces must chain continuously (checked to 1e-9).
    static ComplexPath join(const ComplexPath& first, const ComplexPath& second);

    complex start() const { return pieces.front().pos(0.0); }
    complex end() const { return pieces.back().pos(1.0); }
    complex at(double t) const;  // t in [0,1] across the whole path

    // Minimum distance from the path to a point, by dense sampling.
    double clearance_to(complex p, int samples_per_piece = 256) const;

    // Winding number about p, computed from the argument increment.
    int winding_number(complex p) const;
};

// Closed-path integral of a complex integrand f(z) dz.
complex integrate_path(const std::function<complex(complex)>& f, const ComplexPath& path,
                       const Tolerances& tol = {}, QuadResult* info = nullptr);

// Componentwise integral of an R^3-valued density over [0, L].
Vec3 integrate_real_1form(const std::function<Vec3(double)>& f, double length,
                          const Tolerances& tol = {}, QuadResult* info = nullptr);

}  // namespace cmc
