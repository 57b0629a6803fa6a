#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cmc/surface.hpp"
#include "cmc/tolerances.hpp"

namespace cmc {

// Closed oriented loop in the parameter domain, s in [0, L].
struct Cycle {
    std::string label;
    std::function<Vec2(double)> gamma;
    std::function<Vec2(double)> velocity;
    double length = 0;
    bool unit_speed = false;

    // Circle in the (u, v) chart.
    static Cycle chart_circle(Vec2 center, double radius, int turns, std::string label);
    // gamma(s) = (u0 + dir * s, v_level), s in [0, |u1 - u0|]; a v = const loop.
    static Cycle iso_v_line(double v_level, double u0, double u1, std::string label);
    Cycle reversed() const;

    void validate(const ParametricSurface* surface = nullptr) const;
};

// Vector-valued 1-form: (point frame, tangent coordinates) -> R^3, linear in
// the tangent argument.
struct VectorOneForm {
    enum class Kind { force, torque, custom };
    Kind kind = Kind::custom;
    std::function<Vec3(const FrameData&, const Vec2&)> value;
    Vec3 origin{};        // ambient base point (meaningful for torque)
    double H = 0;         // the constant mean curvature used by the evaluator
};

// omega(X) = (H x + xi) x x_*(X). Requires constant H: the declared value is
// trusted after verification, otherwise the sampled mean is used; deviation
// beyond h_tol refuses with the measured maximum.
VectorOneForm force_form(const SurfacePtr& surface, double h_tol = 1e-6);

// sigma(X) = (2/3) H x x (x x x_*(X)) + x x x_*(JX), x measured from `origin`.
// Every evaluation also computes the equivalent form
// (1/3) x x [2 (H x + xi) x x_*(X) + x_*(JX)] and cross-checks to 1e-10.
VectorOneForm torque_form(const SurfacePtr& surface, Vec3 origin = {}, double h_tol = 1e-6);

struct PeriodValue {
    Vec3 value;
    double error_estimate = 0;
};

// int_0^L form(gamma(s), gamma'(s)) ds.
PeriodValue period_of_form(const VectorOneForm& form, const ParametricSurface& surface,
                           const Cycle& cycle, const Tolerances& tol = {});

// Loop integral of the form around the axis-aligned square of side h centered
// at p, with a fixed-order midpoint rule (nodes_per_side nodes). For closed
// forms the exact value is 0 and the result decays at the quadrature order
// O(h^3); for non-closed forms it approaches d(form)(p) h^2.
Vec3 closedness_defect(const VectorOneForm& form, const ParametricSurface& surface, Vec2 p,
                       double h, int nodes_per_side = 8);

// Least-squares slope of log|defect| against log h.
double fitted_decay_order(const std::vector<double>& hs, const std::vector<double>& defects);

// Unit-speed reparametrization of a cycle by numerically inverting arclength.
Cycle arclength_reparametrize(const ParametricSurface& surface, const Cycle& cycle,
                              int samples = 512);

struct CrossSectionResult {
    double value = 0;             // <W, V> by the cross-section formula
    double length = 0;            // arclength of the cycle
    double error_estimate = 0;
};

// <W([gamma]), V> = int (a^2 + H <x, xi>)/a ds with a = <x_*(J gamma'), V>,
// for a cycle whose image lies in the plane orthogonal to V; the ambient
// origin is translated into that plane. Requires transversality min |a| > 1e-6.
CrossSectionResult cross_section_force(const SurfacePtr& surface, Vec3 plane_normal,
                                       const Cycle& cycle, const Tolerances& tol = {});

struct Circle2 {
    double cx = 0, cy = 0, r = 0;
};
// Exact smallest enclosing circle by two/three-point support (Welzl).
Circle2 smallest_enclosing_circle(std::vector<std::pair<double, double>> points);

struct AlexandrovResult {
    double value = 0;             // L + H int <x, xi> ds
    double enclosing_radius = 0;  // of the planar curve samples
    double disk_bound = 0;        // 1/|H|
    bool finite_family = false;   // enclosing_radius < disk_bound
};

// The mirror-plane criterion: requires a = <x_*(J gamma'), V> = 1 along the
// (planar, unit-speed) cycle and H != 0.
AlexandrovResult alexandrov_criterion(const SurfacePtr& surface, Vec3 plane_normal,
                                      const Cycle& cycle, const Tolerances& tol = {});

// Residuals of the deformation identities on a one-parameter isometric family
// x_t, by central differences in t:
//   d/dt x_*(X)  vs  -(H x + xi) x x_*(X)
//   d/dt xi      vs  -(H x + xi) x xi
//   X(x'' + H x' x x + x) - 3 H sigma(X)   (reduces to X(x'' + x) when H = 0)
struct FamilyIdentityResiduals {
    double differential_identity = 0;
    double normal_identity = 0;
    double second_order_identity = 0;
};

FamilyIdentityResiduals exactness_residuals(const std::function<SurfacePtr(double)>& family,
                                            double t, double dt, const std::vector<Vec2>& samples,
                                            Vec3 torque_origin = {});

}  // namespace cmc
