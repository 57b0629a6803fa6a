#include "cmc/surface.hpp"

#include <algorithm>
#include <cmath>

namespace cmc {

FrameData frame_of_jet(const Jet2& jet, Vec2 p) {
    FrameData f;
    f.p = p;
    f.x = jet.x;
    f.xu = jet.xu;
    f.xv = jet.xv;

    const Vec3 n = cross(jet.xu, jet.xv);
    const double nn = n.norm();
    if (nn < 1e-12 * jet.xu.norm() * jet.xv.norm()) {
        throw ImmersionFailure("degenerate metric: |xu x xv| ~ 0 at parameter point");
    }
    f.normal = n / nn;
    f.area_element = nn;
    f.E = dot(jet.xu, jet.xu);
    f.F = dot(jet.xu, jet.xv);
    f.G = dot(jet.xv, jet.xv);

    // Derivatives of the unit normal from the second-order jets.
    const Vec3 nu = cross(jet.xuu, jet.xv) + cross(jet.xu, jet.xuv);
    const Vec3 nv = cross(jet.xuv, jet.xv) + cross(jet.xu, jet.xvv);
    f.normal_u = (nu - f.normal * dot(f.normal, nu)) / nn;
    f.normal_v = (nv - f.normal * dot(f.normal, nv)) / nn;

    // Shape operator columns from Xxi = -x_*(AX), solved against the metric
    // (least squares with the normal component already projected out).
    const Mat2 gram{f.E, f.F, f.F, f.G};
    const Mat2 gram_inv = gram.inverse();
    const Vec2 rhs_u{-dot(f.normal_u, jet.xu), -dot(f.normal_u, jet.xv)};
    const Vec2 rhs_v{-dot(f.normal_v, jet.xu), -dot(f.normal_v, jet.xv)};
    const Vec2 col_u = mul(gram_inv, rhs_u);
    const Vec2 col_v = mul(gram_inv, rhs_v);
    f.shape = {col_u.u, col_v.u, col_u.v, col_v.v};

    f.H = 0.5 * f.shape.trace();
    f.K = f.shape.det();

    const double scale = std::max(f.E, f.G);
    f.isothermal = std::abs(f.E - f.G) <= 1e-8 * scale && std::abs(f.F) <= 1e-8 * scale;
    f.conformal_factor = f.isothermal ? 0.5 * (f.E + f.G) : 0.0;
    return f;
}

FrameData frame_at(const ParametricSurface& surface, double u, double v) {
    return frame_of_jet(surface.jet(u, v), {u, v});
}

Vec2 apply_J(const FrameData& f, const Vec2& X) {
    // Solve x_*(JX) = xi x x_*(X) against the coordinate frame:
    // J = (1/W) [[-F, -G], [E, F]] with W = |xu x xv|.
    const double w = f.area_element;
    return {(-f.F * X.u - f.G * X.v) / w, (f.E * X.u + f.F * X.v) / w};
}

complex hopf_coefficient(const ParametricSurface& surface, double u, double v) {
    const FrameData f = frame_at(surface, u, v);
    if (!f.isothermal) {
        throw PreconditionViolation("hopf_coefficient requires isothermal coordinates (E=G, F=0)");
    }
    const double alpha = 0.5 * (f.shape.a - f.shape.d);
    const double beta = 0.5 * (f.shape.b + f.shape.c);
    return 0.5 * f.conformal_factor * complex(alpha, -beta);
}

CodazziResidual codazzi_residual(const ParametricSurface& surface, double u, double v,
                                 double step) {
    const double h = step > 0 ? step : 1e-4 * surface.domain().extent();
    const complex w_up = hopf_coefficient(surface, u + h, v);
    const complex w_um = hopf_coefficient(surface, u - h, v);
    const complex w_vp = hopf_coefficient(surface, u, v + h);
    const complex w_vm = hopf_coefficient(surface, u, v - h);
    const complex omega_u = (w_up - w_um) / (2 * h);
    const complex omega_v = (w_vp - w_vm) / (2 * h);
    const complex omega_wbar = 0.5 * (omega_u + complex(0, 1) * omega_v);

    const FrameData f = frame_at(surface, u, v);
    const double H_u = (frame_at(surface, u + h, v).H - frame_at(surface, u - h, v).H) / (2 * h);
    const double H_v = (frame_at(surface, u, v + h).H - frame_at(surface, u, v - h).H) / (2 * h);
    const complex H_w = 0.5 * complex(H_u, -H_v);

    return {omega_wbar, omega_wbar - 0.5 * f.conformal_factor * H_w};
}

namespace {

double brioschi_once(const ParametricSurface& surface, double u, double v, double h) {
    auto metric = [&](double uu, double vv) {
        const Jet2 j = surface.jet(uu, vv);
        return Vec3{dot(j.xu, j.xu), dot(j.xu, j.xv), dot(j.xv, j.xv)};  // (E, F, G)
    };
    const Vec3 m = metric(u, v);
    const Vec3 mu_p = metric(u + h, v), mu_m = metric(u - h, v);
    const Vec3 mv_p = metric(u, v + h), mv_m = metric(u, v - h);
    const Vec3 mpp = metric(u + h, v + h), mpm = metric(u + h, v - h);
    const Vec3 mmp = metric(u - h, v + h), mmm = metric(u - h, v - h);

    const Vec3 d_u = (mu_p - mu_m) / (2 * h);
    const Vec3 d_v = (mv_p - mv_m) / (2 * h);
    const double E = m.x, F = m.y, G = m.z;
    const double E_u = d_u.x, F_u = d_u.y, G_u = d_u.z;
    const double E_v = d_v.x, F_v = d_v.y, G_v = d_v.z;
    const double E_vv = (mv_p.x - 2 * m.x + mv_m.x) / (h * h);
    const double G_uu = (mu_p.z - 2 * m.z + mu_m.z) / (h * h);
    const double F_uv = (mpp.y - mpm.y - mmp.y + mmm.y) / (4 * h * h);

    auto det3 = [](double a11, double a12, double a13, double a21, double a22, double a23,
                   double a31, double a32, double a33) {
        return a11 * (a22 * a33 - a23 * a32) - a12 * (a21 * a33 - a23 * a31) +
               a13 * (a21 * a32 - a22 * a31);
    };
    const double m1 = det3(-0.5 * E_vv + F_uv - 0.5 * G_uu, 0.5 * E_u, F_u - 0.5 * E_v,
                           F_v - 0.5 * G_u, E, F,
                           0.5 * G_v, F, G);
    const double m2 = det3(0.0, 0.5 * E_v, 0.5 * G_u,
                           0.5 * E_v, E, F,
                           0.5 * G_u, F, G);
    const double w2 = E * G - F * F;
    return (m1 - m2) / (w2 * w2);
}

}  // namespace

double brioschi_curvature(const ParametricSurface& surface, double u, double v, double step) {
    const double h = step > 0 ? step : 2e-3 * surface.domain().extent();
    const double coarse = brioschi_once(surface, u, v, h);
    const double fine = brioschi_once(surface, u, v, 0.5 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double mean_curvature_deviation(const ParametricSurface& surface, int n) {
    const SurfaceDomain& dom = surface.domain();
    std::vector<double> samples;
    samples.reserve(n * n);
    const double margin = 1e-3;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double u = dom.u0 + (dom.u1 - dom.u0) * (margin + (1 - 2 * margin) * i / (n - 1.0));
            const double v = dom.v0 + (dom.v1 - dom.v0) * (margin + (1 - 2 * margin) * j / (n - 1.0));
            if (!dom.contains(u, v)) continue;
            samples.push_back(frame_at(surface, u, v).H);
        }
    }
    if (samples.empty()) throw PreconditionViolation("no sample points inside domain");
    double ref = 0.0;
    if (auto h = surface.declared_mean_curvature()) {
        ref = *h;
    } else {
        for (double s : samples) ref += s;
        ref /= samples.size();
    }
    double dev = 0.0;
    for (double s : samples) dev = std::max(dev, std::abs(s - ref));
    return dev;
}

}  // namespace cmc
