#include <cmath>
#include <complex>

#include "cmc/fd.hpp"
#include "cmc/ode.hpp"
#include "cmc/quadrature.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cmc;
using cmc::test::uniform;

TEST_CASE("path integrals over the unit circle: residue values") {
    const ComplexPath circle = ComplexPath::circle({0, 0}, 1.0);
    const complex two_pi_i(0.0, 2.0 * M_PI);

    const complex inv_z = integrate_path([](complex z) { return 1.0 / z; }, circle);
    CHECK(std::abs(inv_z - two_pi_i) < 1e-10);

    const complex lin = integrate_path([](complex z) { return z; }, circle);
    CHECK(std::abs(lin) < 1e-10);

    const complex inv_z2 = integrate_path([](complex z) { return 1.0 / (z * z); }, circle);
    CHECK(std::abs(inv_z2) < 1e-10);
}

TEST_CASE("closed-loop integral of an entire function is below quad_abs") {
    for (int i = 0; i < 5; ++i) {
        const complex c(uniform(-2, 2), uniform(-2, 2));
        const double r = uniform(0.2, 2.0);
        const ComplexPath loop = ComplexPath::circle(c, r);
        const complex val = integrate_path([](complex z) { return std::exp(z); }, loop);
        CHECK(std::abs(val) < 1e-10);
    }
}

TEST_CASE("quadrature is exact for polynomials up to the rule order") {
    // 12-point Gauss-Legendre per panel: exact through degree 23.
    std::vector<double> coeffs(24);
    for (auto& c : coeffs) c = uniform(-1, 1);
    auto poly = [&](double x) {
        double acc = 0;
        for (int k = (int)coeffs.size() - 1; k >= 0; --k) acc = acc * x + coeffs[k];
        return acc;
    };
    auto poly_antideriv = [&](double x) {
        double acc = 0;
        for (int k = (int)coeffs.size() - 1; k >= 0; --k) acc = acc * x + coeffs[k] / (k + 1);
        return acc * x;
    };
    const double a = -0.7, b = 1.3;
    const double exact = poly_antideriv(b) - poly_antideriv(a);
    const double got = integrate_adaptive<double>(poly, a, b, Tolerances{});
    CHECK(std::abs(got - exact) < 1e-12 * std::max(1.0, std::abs(exact)));
}

TEST_CASE("real 1-form integrals") {
    const Vec3 full_period = integrate_real_1form(
        [](double s) { return Vec3{std::sin(s), -std::cos(s), 0.0}; }, 2 * M_PI);
    CHECK(full_period.norm() < 1e-10);

    const Vec3 constant = integrate_real_1form([](double) { return Vec3{0, 0, 1}; }, 2 * M_PI);
    CHECK(std::abs(constant.z - 2 * M_PI) < 1e-10);
    CHECK(std::abs(constant.x) < 1e-14);

    const Vec3 ramp = integrate_real_1form([](double s) { return Vec3{0, 0, s}; }, 1.0);
    CHECK(std::abs(ramp.z - 0.5) < 1e-12);
}

TEST_CASE("path utilities: winding numbers and clearance") {
    const ComplexPath c1 = ComplexPath::circle({1, 0}, 0.5);
    CHECK(c1.winding_number({1.0, 0.0}) == 1);
    CHECK(c1.winding_number({-1.0, 0.0}) == 0);
    const ComplexPath rev = ComplexPath::circle({1, 0}, 0.5, -1);
    CHECK(rev.winding_number({1.0, 0.0}) == -1);
    CHECK(c1.clearance_to({1.0, 0.0}) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("ode_solve: exponential growth") {
    auto rhs = [](double, const OdeState& y) { return OdeState{y[0]}; };
    const OdeTrajectory traj = ode_solve(rhs, {1.0}, 0.0, 1.0);
    CHECK(std::abs(traj.y.back()[0] - std::exp(1.0)) < 1e-9);
    // dense output halfway
    CHECK(std::abs(traj.at(0.5)[0] - std::exp(0.5)) < 1e-7);
}

TEST_CASE("ode_solve: constant solution stays constant") {
    auto rhs = [](double, const OdeState&) { return OdeState{0.0, 0.0}; };
    const OdeTrajectory traj = ode_solve(rhs, {3.5, -2.0}, 0.0, 10.0);
    CHECK(traj.y.back()[0] == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(traj.y.back()[1] == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("ode_solve: cylinder profile fixed point") {
    // Unit-speed profile system r' = cos(psi), z' = sin(psi), psi' = 2H - sin(psi)/r
    // has the cylinder fixed point psi = pi/2, r = r0, H = 1/(2 r0).
    const double r0 = 0.8, H = 1.0 / (2.0 * r0);
    auto rhs = [&](double, const OdeState& y) {
        return OdeState{std::cos(y[2]), std::sin(y[2]), 2 * H - std::sin(y[2]) / y[0]};
    };
    const OdeTrajectory traj = ode_solve(rhs, {r0, 0.0, M_PI / 2}, 0.0, 5.0);
    CHECK(std::abs(traj.y.back()[0] - r0) < 1e-10);
    CHECK(std::abs(traj.y.back()[2] - M_PI / 2) < 1e-10);
}

TEST_CASE("fd_jet: linear and quadratic maps") {
    auto linear = [](double u, double v) { return Vec3{2 * u - v, u + 3 * v, -u}; };
    const FdJet jl = fd_jet(linear, 0.3, -0.2, 1e-3);
    CHECK((jl.xu - Vec3{2, 1, -1}).norm() < 1e-9);
    CHECK((jl.xv - Vec3{-1, 3, 0}).norm() < 1e-9);
    CHECK(jl.xuu.norm() < 1e-9);  // cancellation noise ~ eps/h^2
    CHECK(jl.xvv.norm() < 1e-9);

    auto quad = [](double u, double v) { return Vec3{u * u, 0, v}; };
    const FdJet jq = fd_jet(quad, 0.1, 0.4, 1e-4);
    CHECK((jq.xuu - Vec3{2, 0, 0}).norm() < 1e-6);
}

TEST_CASE("fd_jet: catenoid tangent against the analytic value") {
    auto catenoid = [](double u, double v) {
        return Vec3{std::cosh(v) * std::cos(u), std::cosh(v) * std::sin(u), v};
    };
    const FdJet j = fd_jet(catenoid, 0.0, 0.0, 1e-5);
    CHECK((j.xu - Vec3{0, 1, 0}).norm() < 1e-8);
}

TEST_CASE("cross product is orthogonal to its factors") {
    for (int i = 0; i < 50; ++i) {
        const Vec3 a{uniform(-5, 5), uniform(-5, 5), uniform(-5, 5)};
        const Vec3 b{uniform(-5, 5), uniform(-5, 5), uniform(-5, 5)};
        const Vec3 c = cross(a, b);
        const double scale = a.norm() * b.norm();
        CHECK(std::abs(dot(c, a)) <= 1e-12 * scale);
        CHECK(std::abs(dot(c, b)) <= 1e-12 * scale);
    }
}

TEST_CASE("quadrature failure reports the achieved error") {
    // Integrand with a pole on the contour cannot converge.
    const ComplexPath circle = ComplexPath::circle({0, 0}, 1.0);
    Tolerances tight;
    tight.quad_abs = 1e-15;
    tight.quad_rel = 1e-15;
    CHECK_THROWS_AS(integrate_path([](complex z) { return 1.0 / (z - 1.0); }, circle, tight),
                    QuadratureFailure);
}
