#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cmc/errors.hpp"
#include "cmc/fd.hpp"
#include "cmc/tolerances.hpp"
#include "cmc/vec3.hpp"

namespace cmc {

// Position and partial derivatives up to order 2 at a parameter point.
struct Jet2 {
    Vec3 x, xu, xv, xuu, xuv, xvv;
};

// Rectangle in (u, v), possibly punctured.
struct SurfaceDomain {
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
    std::vector<Vec2> punctures;
    double clearance = 1e-6;

    bool contains(double u, double v) const {
        if (u < u0 - 1e-12 || u > u1 + 1e-12 || v < v0 - 1e-12 || v > v1 + 1e-12) return false;
        for (const auto& p : punctures) {
            if ((Vec2{u, v} - p).norm() < clearance) return false;
        }
        return true;
    }
    double extent() const { return std::max(u1 - u0, v1 - v0); }
    Vec2 center() const { return {0.5 * (u0 + u1), 0.5 * (v0 + v1)}; }
};

// An immersion (u,v) -> R^3 with second-order jets. Implementations must be
// pure evaluators: immutable after construction, safe to call concurrently.
class ParametricSurface {
public:
    virtual ~ParametricSurface() = default;
    virtual Jet2 jet(double u, double v) const = 0;
    virtual const SurfaceDomain& domain() const = 0;
    virtual std::optional<double> declared_mean_curvature() const { return std::nullopt; }

    Vec3 position(double u, double v) const { return jet(u, v).x; }
};

using SurfacePtr = std::shared_ptr<const ParametricSurface>;

// Surface defined by closed-form jets.
class AnalyticSurface final : public ParametricSurface {
public:
    AnalyticSurface(std::function<Jet2(double, double)> jets, SurfaceDomain dom,
                    std::optional<double> declared_h = std::nullopt)
        : jets_(std::move(jets)), domain_(dom), declared_h_(declared_h) {}

    Jet2 jet(double u, double v) const override { return jets_(u, v); }
    const SurfaceDomain& domain() const override { return domain_; }
    std::optional<double> declared_mean_curvature() const override { return declared_h_; }

private:
    std::function<Jet2(double, double)> jets_;
    SurfaceDomain domain_;
    std::optional<double> declared_h_;
};

// Surface defined by a position map only; jets come from central differences.
class NumericalSurface final : public ParametricSurface {
public:
    NumericalSurface(std::function<Vec3(double, double)> pos, SurfaceDomain dom,
                     std::optional<double> declared_h = std::nullopt, double fd_step = 1e-5)
        : pos_(std::move(pos)), domain_(dom), declared_h_(declared_h),
          h_(fd_step * dom.extent()) {}

    Jet2 jet(double u, double v) const override {
        const FdJet j = fd_jet(pos_, u, v, h_);
        return {j.x, j.xu, j.xv, j.xuu, j.xuv, j.xvv};
    }
    const SurfaceDomain& domain() const override { return domain_; }
    std::optional<double> declared_mean_curvature() const override { return declared_h_; }

private:
    std::function<Vec3(double, double)> pos_;
    SurfaceDomain domain_;
    std::optional<double> declared_h_;
    double h_;
};

// Pointwise geometric state. The shape operator A acts on tangent coordinates
// in the (du, dv) basis and satisfies Xxi = -x_*(AX); H = tr A / 2, K = det A.
struct FrameData {
    Vec2 p;
    Vec3 x, xu, xv;
    Vec3 normal;           // (xu x xv)/|xu x xv|
    Vec3 normal_u, normal_v;
    double E = 0, F = 0, G = 0;
    double area_element = 0;  // |xu x xv| = sqrt(EG - F^2)
    Mat2 shape;
    double H = 0, K = 0;
    bool isothermal = false;
    double conformal_factor = 0;  // e^{2 rho} = E when isothermal

    Vec3 push_forward(const Vec2& X) const { return xu * X.u + xv * X.v; }
    double metric_dot(const Vec2& X, const Vec2& Y) const {
        return E * X.u * Y.u + F * (X.u * Y.v + X.v * Y.u) + G * X.v * Y.v;
    }
};

// Tangent vector in the coordinate basis at a point.
struct TangentVector {
    Vec2 p;
    Vec2 components;
};

FrameData frame_at(const ParametricSurface& surface, double u, double v);
FrameData frame_of_jet(const Jet2& jet, Vec2 p);

// 90-degree rotation of tangent coordinates: x_*(JX) = xi x x_*(X).
Vec2 apply_J(const FrameData& frame, const Vec2& X);

// Hopf quadratic-differential coefficient in an isothermal chart:
// omega = <A dw, dw> = (e^{2 rho}/2)(alpha - i beta) where the shape operator
// is [[H+alpha, beta],[beta, H-alpha]]. Requires E = G, F = 0 to 1e-8.
complex hopf_coefficient(const ParametricSurface& surface, double u, double v);

// Codazzi diagnostics in an isothermal chart, by finite differences of the
// Hopf coefficient and of H. codazzi_defect = d_wbar(omega) - (e^{2rho}/2) d_w H
// vanishes on every immersed surface; holomorphicity_defect = d_wbar(omega)
// vanishes exactly when H is constant.
struct CodazziResidual {
    complex holomorphicity_defect;
    complex codazzi_defect;
};
CodazziResidual codazzi_residual(const ParametricSurface& surface, double u, double v,
                                 double step = 0.0);

// Gauss curvature from the metric alone (Brioschi formula), Richardson-
// extrapolated central differences. Independent of the shape-operator path.
double brioschi_curvature(const ParametricSurface& surface, double u, double v,
                          double step = 0.0);

// Max |computed H - reference| over an n x n sample grid; reference is the
// declared mean curvature if present, else the mean of the samples.
double mean_curvature_deviation(const ParametricSurface& surface, int n = 7);

}  // namespace cmc
