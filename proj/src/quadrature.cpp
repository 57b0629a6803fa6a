#include "cmc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cmc {

// Abscissae and weights of the 12-point Gauss-Legendre rule.
const double kGaussNodes[kGaussOrder] = {
    -0.9815606342467192, -0.9041172563704749, -0.7699026741943047, -0.5873179542866175,
    -0.3678314989981802, -0.1252334085114689, 0.1252334085114689,  0.3678314989981802,
    0.5873179542866175,  0.7699026741943047,  0.9041172563704749,  0.9815606342467192};

const double kGaussWeights[kGaussOrder] = {
    0.0471753363865118, 0.1069393259953184, 0.1600783285433462, 0.2031674267230659,
    0.2334925365383548, 0.2491470458134028, 0.2491470458134028, 0.2334925365383548,
    0.2031674267230659, 0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

ComplexPath ComplexPath::circle(complex center, double radius, int turns, double start_angle) {
    ComplexPath path;
    const double two_pi = 2.0 * M_PI;
    path.pieces.push_back({[=](double t) {
                               return center + radius * std::exp(complex(0.0, start_angle + two_pi * turns * t));
                           },
                           [=](double t) {
                               return complex(0.0, two_pi * turns) * radius *
                                      std::exp(complex(0.0, start_angle + two_pi * turns * t));
                           }});
    path.closed = true;
    return path;
}

ComplexPath ComplexPath::segment(complex from, complex to) {
    ComplexPath path;
    path.pieces.push_back({[=](double t) { return from + (to - from) * t; },
                           [=](double) { return to - from; }});
    path.closed = std::abs(to - from) < 1e-12;
    return path;
}

ComplexPath ComplexPath::polyline(const std::vector<complex>& points, bool close) {
    ComplexPath path;
    for (size_t i = 0; i + 1 < points.size(); ++i) {
        const complex a = points[i], b = points[i + 1];
        path.pieces.push_back(
            {[=](double t) { return a + (b - a) * t; }, [=](double) { return b - a; }});
    }
    if (close && !points.empty()) {
        const complex a = points.back(), b = points.front();
        path.pieces.push_back(
            {[=](double t) { return a + (b - a) * t; }, [=](double) { return b - a; }});
        path.closed = true;
    } else if (!points.empty()) {
        path.closed = std::abs(points.back() - points.front()) < 1e-12;
    }
    return path;
}

ComplexPath ComplexPath::join(const ComplexPath& first, const ComplexPath& second) {
    if (std::abs(first.end() - second.start()) > 1e-9) {
        throw PreconditionViolation("joined path pieces are not contiguous");
    }
    ComplexPath path;
    path.pieces = first.pieces;
    path.pieces.insert(path.pieces.end(), second.pieces.begin(), second.pieces.end());
    path.closed = std::abs(path.end() - path.start()) < 1e-12;
    return path;
}

complex ComplexPath::at(double t) const {
    const double scaled = t * pieces.size();
    int idx = std::min<int>(static_cast<int>(scaled), static_cast<int>(pieces.size()) - 1);
    return pieces[idx].pos(scaled - idx);
}

double ComplexPath::clearance_to(complex p, int samples_per_piece) const {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& piece : pieces) {
        for (int i = 0; i <= samples_per_piece; ++i) {
            best = std::min(best, std::abs(piece.pos(double(i) / samples_per_piece) - p));
        }
    }
    return best;
}

int ComplexPath::winding_number(complex p) const {
    double total = 0.0;
    for (const auto& piece : pieces) {
        const int n = 512;
        complex prev = piece.pos(0.0) - p;
        for (int i = 1; i <= n; ++i) {
            complex cur = piece.pos(double(i) / n) - p;
            total += std::arg(cur / prev);
            prev = cur;
        }
    }
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

complex integrate_path(const std::function<complex(complex)>& f, const ComplexPath& path,
                       const Tolerances& tol, QuadResult* info) {
    complex total{};
    double err = 0.0;
    int panels = 0;
    for (const auto& piece : path.pieces) {
        QuadResult piece_info;
        total += integrate_adaptive<complex>(
            [&](double t) { return f(piece.pos(t)) * piece.vel(t); }, 0.0, 1.0, tol, &piece_info);
        err += piece_info.error_estimate;
        panels += piece_info.panels;
    }
    if (info) {
        info->error_estimate = err;
        info->panels = panels;
    }
    return total;
}

Vec3 integrate_real_1form(const std::function<Vec3(double)>& f, double length,
                          const Tolerances& tol, QuadResult* info) {
    return integrate_adaptive<Vec3>([&](double s) { return f(s); }, 0.0, length, tol, info);
}

}  // namespace cmc
