#include "cmc/associate.hpp"

#include <algorithm>
#include <cmath>

namespace cmc {

Mat2 associate_tensor(const Mat2& A, double H, double t) {
    const Mat2 traceless = A - Mat2::identity() * H;
    const Mat2 rotated = Mat2::rotation_j() * traceless;
    return traceless * std::cos(t) + rotated * std::sin(t) + Mat2::identity() * H;
}

TensorInvariantReport gauss_codazzi_invariants(const Mat2& A, double H,
                                               const std::vector<double>& ts) {
    TensorInvariantReport report;
    const double det0 = A.det();
    for (double t : ts) {
        const Mat2 at = associate_tensor(A, H, t);
        report.max_trace_deviation = std::max(report.max_trace_deviation,
                                              std::abs(at.trace() - 2.0 * H));
        report.max_det_deviation = std::max(report.max_det_deviation, std::abs(at.det() - det0));
    }
    return report;
}

DeformationState extract_deformation_state(const ParametricSurface& before,
                                           const ParametricSurface& at,
                                           const ParametricSurface& after, double dt, Vec2 p) {
    const Jet2 jm = before.jet(p.u, p.v);
    const Jet2 jp = after.jet(p.u, p.v);
    const FrameData f = frame_at(at, p.u, p.v);

    const Vec3 wu = (jp.xu - jm.xu) / (2 * dt);
    const Vec3 wv = (jp.xv - jm.xv) / (2 * dt);

    // Normal components give the metric pairing with Z.
    const Mat2 gram{f.E, f.F, f.F, f.G};
    const Vec2 rhs{-dot(wu, f.normal), -dot(wv, f.normal)};
    DeformationState state;
    state.Z = mul(gram.inverse(), rhs);

    // Tangential components give k (least squares over both directions).
    const Vec3 ju = f.push_forward(apply_J(f, {1, 0}));
    const Vec3 jv = f.push_forward(apply_J(f, {0, 1}));
    state.k = (dot(wu, ju) + dot(wv, jv)) / (ju.norm2() + jv.norm2());

    const Vec3 jz = f.push_forward(apply_J(f, state.Z));
    state.drehriss = jz + f.normal * state.k;
    const double H = at.declared_mean_curvature() ? *at.declared_mean_curvature() : f.H;
    state.v_field = jz + f.normal * (state.k + 1.0) + f.x * H;
    return state;
}

DeformationState minimal_family_deformation_state(const std::function<SurfacePtr(double)>& family,
                                                  double t, double dt, Vec2 p) {
    const SurfacePtr before = family(t - dt);
    const SurfacePtr at = family(t);
    const SurfacePtr after = family(t + dt);
    return extract_deformation_state(*before, *at, *after, dt, p);
}

ChristoffelSymbols christoffel(const ParametricSurface& surface, Vec2 p, double h) {
    auto metric = [&](double u, double v) {
        const Jet2 j = surface.jet(u, v);
        return Vec3{dot(j.xu, j.xu), dot(j.xu, j.xv), dot(j.xv, j.xv)};
    };
    const Vec3 m = metric(p.u, p.v);
    const Vec3 du = (metric(p.u + h, p.v) - metric(p.u - h, p.v)) / (2 * h);
    const Vec3 dv = (metric(p.u, p.v + h) - metric(p.u, p.v - h)) / (2 * h);

    // g[i][j] and its partials d[l][i][j] = d_l g_{ij}.
    const double g[2][2] = {{m.x, m.y}, {m.y, m.z}};
    const double d[2][2][2] = {{{du.x, du.y}, {du.y, du.z}}, {{dv.x, dv.y}, {dv.y, dv.z}}};
    const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const double ginv[2][2] = {{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}};

    ChristoffelSymbols out;
    for (int k = 0; k < 2; ++k) {
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                double acc = 0;
                for (int l = 0; l < 2; ++l) {
                    acc += ginv[k][l] * (d[i][j][l] + d[j][i][l] - d[l][i][j]);
                }
                out.gamma[k][i][j] = 0.5 * acc;
            }
        }
    }
    return out;
}

namespace {

Mat2 coordinate_J(const FrameData& f) {
    const double w = f.area_element;
    return {-f.F / w, -f.G / w, f.E / w, f.F / w};
}

}  // namespace

IntegrabilityReport integrability_residuals(const std::function<SurfacePtr(double)>& family,
                                            double t, double dt, const std::vector<Vec2>& samples,
                                            double fd_h) {
    const SurfacePtr before = family(t - dt);
    const SurfacePtr at = family(t);
    const SurfacePtr after = family(t + dt);

    IntegrabilityReport report;

    // Isometry guard: the metric must not drift with t.
    for (const Vec2& p : samples) {
        const FrameData fm = frame_at(*before, p.u, p.v);
        const FrameData f0 = frame_at(*at, p.u, p.v);
        const FrameData fp = frame_at(*after, p.u, p.v);
        const double scale = std::max({f0.E, std::abs(f0.F), f0.G, 1.0});
        const double drift = std::max({std::abs(fp.E - f0.E), std::abs(fp.F - f0.F),
                                       std::abs(fp.G - f0.G), std::abs(fm.E - f0.E),
                                       std::abs(fm.F - f0.F), std::abs(fm.G - f0.G)}) /
                             scale;
        report.metric_drift = std::max(report.metric_drift, drift);
    }
    if (report.metric_drift > 1e-8) {
        throw PreconditionViolation("family is not isometric: metric drift " +
                                    std::to_string(report.metric_drift));
    }

    auto state_at = [&](Vec2 p) { return extract_deformation_state(*before, *at, *after, dt, p); };

    for (const Vec2& p : samples) {
        const FrameData f0 = frame_at(*at, p.u, p.v);
        const double H = at->declared_mean_curvature() ? *at->declared_mean_curvature() : f0.H;
        const Mat2 J = coordinate_J(f0);
        const ChristoffelSymbols chr = christoffel(*at, p, fd_h);

        const DeformationState s0 = state_at(p);
        const DeformationState su_p = state_at({p.u + fd_h, p.v});
        const DeformationState su_m = state_at({p.u - fd_h, p.v});
        const DeformationState sv_p = state_at({p.u, p.v + fd_h});
        const DeformationState sv_m = state_at({p.u, p.v - fd_h});

        report.max_abs_k = std::max(report.max_abs_k, std::abs(s0.k));
        report.max_z_norm = std::max(report.max_z_norm,
                                     f0.push_forward(s0.Z).norm());

        // A' by central differences of the coordinate shape matrices.
        const Mat2 Am = frame_at(*before, p.u, p.v).shape;
        const Mat2 Ap = frame_at(*after, p.u, p.v).shape;
        const Mat2 Adot = (Ap - Am) * (1.0 / (2 * dt));
        report.max_shape_rate_norm = std::max(report.max_shape_rate_norm, Adot.max_abs());

        // nabla Z as a (1,1) tensor: column j is nabla_{d_j} Z.
        auto covariant = [&](const Vec2& field_u_p, const Vec2& field_u_m, const Vec2& field_v_p,
                             const Vec2& field_v_m, const Vec2& field0) {
            const double dZ[2][2] = {
                {(field_u_p.u - field_u_m.u) / (2 * fd_h), (field_v_p.u - field_v_m.u) / (2 * fd_h)},
                {(field_u_p.v - field_u_m.v) / (2 * fd_h), (field_v_p.v - field_v_m.v) / (2 * fd_h)}};
            const double z[2] = {field0.u, field0.v};
            double nz[2][2];
            for (int i = 0; i < 2; ++i) {
                for (int j = 0; j < 2; ++j) {
                    double acc = dZ[i][j];
                    for (int k = 0; k < 2; ++k) acc += chr.gamma[i][j][k] * z[k];
                    nz[i][j] = acc;
                }
            }
            return Mat2{nz[0][0], nz[0][1], nz[1][0], nz[1][1]};
        };

        const Mat2 nablaZ = covariant(su_p.Z, su_m.Z, sv_p.Z, sv_m.Z, s0.Z);

        // Equation A' = -k J A - nabla Z.
        const Mat2 shape_residual = Adot + (J * f0.shape) * s0.k + nablaZ;
        report.shape_rate = std::max(report.shape_rate, shape_residual.max_abs());

        // Equation grad k = -A J Z.
        const double dk_u = (su_p.k - su_m.k) / (2 * fd_h);
        const double dk_v = (sv_p.k - sv_m.k) / (2 * fd_h);
        const Mat2 gram{f0.E, f0.F, f0.F, f0.G};
        const Vec2 gradk = mul(gram.inverse(), {dk_u, dk_v});
        const Vec2 ajz = mul(f0.shape, mul(J, s0.Z));
        const Vec2 k_res = gradk + ajz;
        report.k_gradient = std::max(report.k_gradient, f0.push_forward(k_res).norm());

        // Equation nabla(JZ) = (k+1) A - H I, specific to associate families.
        auto jz_of = [&](const DeformationState& s, Vec2 q) {
            const FrameData fq = frame_at(*at, q.u, q.v);
            return apply_J(fq, s.Z);
        };
        const Mat2 nablaJZ = covariant(jz_of(su_p, {p.u + fd_h, p.v}), jz_of(su_m, {p.u - fd_h, p.v}),
                                       jz_of(sv_p, {p.u, p.v + fd_h}), jz_of(sv_m, {p.u, p.v - fd_h}),
                                       apply_J(f0, s0.Z));
        const Mat2 rot_residual =
            nablaJZ - f0.shape * (s0.k + 1.0) + Mat2::identity() * H;
        report.rotation_rate = std::max(report.rotation_rate, rot_residual.max_abs());
    }
    return report;
}

}  // namespace cmc
