#pragma once

#include <functional>

#include "cmc/vec3.hpp"

namespace cmc {

// Partial derivatives of a map (u,v) -> R^3 up to order 2, by central differences
// with step h. Truncation error is O(h^2).
struct FdJet {
    Vec3 x, xu, xv, xuu, xuv, xvv;
};

inline FdJet fd_jet(const std::function<Vec3(double, double)>& f, double u, double v, double h) {
    FdJet j;
    const Vec3 fpu = f(u + h, v), fmu = f(u - h, v);
    const Vec3 fpv = f(u, v + h), fmv = f(u, v - h);
    const Vec3 fpp = f(u + h, v + h), fpm = f(u + h, v - h);
    const Vec3 fmp = f(u - h, v + h), fmm = f(u - h, v - h);
    j.x = f(u, v);
    j.xu = (fpu - fmu) / (2 * h);
    j.xv = (fpv - fmv) / (2 * h);
    j.xuu = (fpu - 2 * j.x + fmu) / (h * h);
    j.xvv = (fpv - 2 * j.x + fmv) / (h * h);
    j.xuv = (fpp - fpm - fmp + fmm) / (4 * h * h);
    return j;
}

// Central first derivative of a scalar field, fourth-order stencil.
template <class F>
double fd_derivative4(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

// Central second derivative, fourth-order stencil.
template <class F>
double fd_second4(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12 * h * h);
}

}  // namespace cmc
