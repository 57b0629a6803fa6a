#include "cmc/weierstrass.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <unordered_map>

namespace cmc {

WPhi assemble_phi(const WeierstrassData& data) {
    const RationalFn& g = data.gauss_projection;
    const RationalFn& f = data.height_density;
    if (g.num.is_zero()) throw PreconditionViolation("gauss projection must not be identically 0");

    const RationalFn g_inv = g.reciprocal();
    const complex half(0.5, 0.0), ihalf(0.0, 0.5);
    WPhi phi;
    phi.phi1 = (g_inv - g) * f * half;
    phi.phi2 = (g_inv + g) * f * ihalf;
    phi.phi3 = f;
    phi.dphi1 = phi.phi1.derivative();
    phi.dphi2 = phi.phi2.derivative();
    phi.dphi3 = phi.phi3.derivative();

    // Null identity at seeded sample points, relative to the component scale.
    std::mt19937 gen(20240817);
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        const complex z(box(gen), box(gen));
        const CVec3 v = phi.eval(z);
        const complex sum = v.x * v.x + v.y * v.y + v.z * v.z;
        const double scale = std::norm(v.x) + std::norm(v.y) + std::norm(v.z);
        if (!(std::abs(sum) <= 1e-10 * std::max(scale, 1e-30))) {
            throw Error("null identity violated while assembling Phi");
        }
    }
    return phi;
}

namespace {

// Numerically found roots of a multiple zero spread into a cluster of radius
// about sqrt(machine eps); merge anything within this tolerance so residues
// are expanded at one well-conditioned point (the declared puncture when the
// cluster sits on one).
constexpr double kRootClusterTol = 1e-6;

std::vector<complex> phi_pole_candidates(const WPhi& phi, const std::vector<complex>& punctures) {
    std::vector<complex> poles = punctures;
    auto add = [&](const std::vector<complex>& more) {
        for (const complex& p : more) {
            bool known = false;
            for (const complex& q : poles) {
                if (std::abs(p - q) < kRootClusterTol) {
                    known = true;
                    break;
                }
            }
            if (!known) poles.push_back(p);
        }
    };
    add(phi.phi1.den_roots());
    add(phi.phi2.den_roots());
    add(phi.phi3.den_roots());
    return poles;
}

}  // namespace

PeriodTriple period(const WPhi& phi, const ComplexPath& cycle,
                    const std::vector<complex>& punctures, double clearance,
                    const Tolerances& tol) {
    for (const complex& p : punctures) {
        const double d = cycle.clearance_to(p);
        if (d < clearance) {
            throw QuadratureFailure(
                "cycle passes within the declared clearance of a puncture; enlarge the cycle or "
                "reduce the clearance",
                d);
        }
    }

    PeriodTriple out;
    QuadResult q1, q2, q3;
    out.quadrature.x = integrate_path([&](complex z) { return phi.phi1.eval(z); }, cycle, tol, &q1);
    out.quadrature.y = integrate_path([&](complex z) { return phi.phi2.eval(z); }, cycle, tol, &q2);
    out.quadrature.z = integrate_path([&](complex z) { return phi.phi3.eval(z); }, cycle, tol, &q3);
    out.quad_error = q1.error_estimate + q2.error_estimate + q3.error_estimate;

    const complex two_pi_i(0.0, 2.0 * M_PI);
    for (const complex& pole : phi_pole_candidates(phi, punctures)) {
        const int wind = cycle.winding_number(pole);
        if (wind == 0) continue;
        out.residue.x += two_pi_i * double(wind) * phi.phi1.residue_at(pole);
        out.residue.y += two_pi_i * double(wind) * phi.phi2.residue_at(pole);
        out.residue.z += two_pi_i * double(wind) * phi.phi3.residue_at(pole);
    }

    out.discrepancy = (out.quadrature - out.residue).norm();
    if (out.discrepancy > 1e-8) {
        throw Error("period mismatch between quadrature and residue oracle: " +
                    std::to_string(out.discrepancy));
    }
    return out;
}

namespace {

Verdict period_verdict(const WeierstrassData& data,
                       const std::vector<NamedComplexCycle>& generators, double threshold,
                       const Tolerances& tol, bool imaginary_part) {
    const WPhi phi = assemble_phi(data);
    Verdict v;
    for (const auto& gen : generators) {
        const PeriodTriple p = period(phi, gen.path, data.punctures, data.clearance, tol);
        const Vec3 part = imaginary_part ? p.imag_part() : p.real_part();
        const double mag = std::max({std::abs(part.x), std::abs(part.y), std::abs(part.z)});
        if (mag >= threshold && mag > v.max_violation) {
            v.ok = false;
            v.witness = gen.label;
            v.max_violation = mag;
        }
    }
    return v;
}

}  // namespace

Verdict well_defined(const WeierstrassData& data, const std::vector<NamedComplexCycle>& generators,
                     double threshold, const Tolerances& tol) {
    return period_verdict(data, generators, threshold, tol, /*imaginary_part=*/false);
}

Verdict deformable(const WeierstrassData& data, const std::vector<NamedComplexCycle>& generators,
                   double threshold, const Tolerances& tol) {
    return period_verdict(data, generators, threshold, tol, /*imaginary_part=*/true);
}

std::vector<BranchPoint> regularity_check(const WeierstrassData& data) {
    std::vector<complex> candidates;
    auto add = [&](const std::vector<complex>& pts) {
        for (const complex& p : pts) {
            bool known = false;
            for (const complex& q : candidates) {
                if (std::abs(p - q) < 1e-9) {
                    known = true;
                    break;
                }
            }
            if (!known) candidates.push_back(p);
        }
    };
    add(data.gauss_projection.num_roots());
    add(data.gauss_projection.den_roots());
    add(data.height_density.num_roots());
    add(data.height_density.den_roots());

    std::vector<BranchPoint> flagged;
    for (const complex& p : candidates) {
        bool declared = false;
        for (const complex& q : data.punctures) {
            if (std::abs(p - q) < 1e-9) {
                declared = true;
                break;
            }
        }
        if (declared) continue;
        const int g_ord = data.gauss_projection.order_at(p);
        const int dh_ord = data.height_density.order_at(p);
        // (|g| + 1/|g|) |f| ~ |z - p|^{dh_ord - |g_ord|}
        const int metric_order = dh_ord - std::abs(g_ord);
        if (metric_order != 0) flagged.push_back({p, metric_order});
    }
    return flagged;
}

Chart Chart::identity() {
    Chart c;
    c.to_z = [](complex w) { return w; };
    c.dz = [](complex) { return complex(1.0); };
    c.d2z = [](complex) { return complex(0.0); };
    return c;
}

Chart Chart::annulus(complex center) {
    Chart c;
    c.to_z = [center](complex w) { return center + std::exp(w); };
    c.dz = [](complex w) { return std::exp(w); };
    c.d2z = [](complex w) { return std::exp(w); };
    return c;
}

namespace {

struct CacheKey {
    double re, im;
    bool operator==(const CacheKey& o) const { return re == o.re && im == o.im; }
};

struct CacheKeyHash {
    size_t operator()(const CacheKey& k) const {
        const std::hash<double> h;
        return h(k.re) * 1000003u ^ h(k.im);
    }
};

// Shared integral state for one family of immersions: the data, the chart,
// and the cached primitive F(z) = int_{z0}^{z} Phi along puncture-avoiding
// polylines.
class ImmersionCore {
public:
    ImmersionCore(ImmersionSpec spec, Tolerances tol)
        : spec_(std::move(spec)), phi_(assemble_phi(spec_.data)), tol_(tol) {
        route_clearance_ = std::max(2.0 * spec_.data.clearance, 0.05);
        // Stay clear of every puncture but never demand more room than the
        // geometry of the puncture set allows.
        for (size_t i = 0; i < spec_.data.punctures.size(); ++i) {
            for (size_t j = i + 1; j < spec_.data.punctures.size(); ++j) {
                route_clearance_ = std::min(
                    route_clearance_,
                    0.3 * std::abs(spec_.data.punctures[i] - spec_.data.punctures[j]));
            }
        }
    }

    const ImmersionSpec& spec() const { return spec_; }
    const WPhi& phi() const { return phi_; }

    CVec3 primitive(complex z) const {
        if (z == spec_.basepoint) return CVec3{};
        const CacheKey key{z.real(), z.imag()};
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        CVec3 value{};
        const auto points = route(spec_.basepoint, z);
        for (size_t i = 0; i + 1 < points.size(); ++i) {
            const ComplexPath seg = ComplexPath::segment(points[i], points[i + 1]);
            value.x += integrate_path([&](complex zz) { return phi_.phi1.eval(zz); }, seg, tol_);
            value.y += integrate_path([&](complex zz) { return phi_.phi2.eval(zz); }, seg, tol_);
            value.z += integrate_path([&](complex zz) { return phi_.phi3.eval(zz); }, seg, tol_);
        }
        std::lock_guard<std::mutex> lock(mutex_);
        cache_.emplace(key, value);
        return value;
    }

private:
    // Polyline from a to b that keeps route_clearance_ away from punctures.
    std::vector<complex> route(complex a, complex b) const {
        std::vector<complex> points{a};
        route_segment(a, b, 0, points);
        points.push_back(b);
        return points;
    }

    void route_segment(complex a, complex b, int depth, std::vector<complex>& mids) const {
        if (depth > 8) return;
        for (const complex& p : spec_.data.punctures) {
            const complex ab = b - a;
            const double len2 = std::norm(ab);
            if (len2 == 0.0) return;
            double t = ((p - a) * std::conj(ab)).real() / len2;
            t = std::clamp(t, 0.0, 1.0);
            const complex closest = a + t * ab;
            const double d = std::abs(closest - p);
            if (d < route_clearance_ && t > 1e-9 && t < 1.0 - 1e-9) {
                complex dir = closest - p;
                if (std::abs(dir) < 1e-12) {
                    dir = complex(-ab.imag(), ab.real());  // perpendicular escape
                }
                dir /= std::abs(dir);
                const complex waypoint = p + dir * (1.5 * route_clearance_);
                route_segment(a, waypoint, depth + 1, mids);
                mids.push_back(waypoint);
                route_segment(waypoint, b, depth + 1, mids);
                return;
            }
        }
    }

    ImmersionSpec spec_;
    WPhi phi_;
    Tolerances tol_;
    double route_clearance_;
    mutable std::mutex mutex_;
    mutable std::unordered_map<CacheKey, CVec3, CacheKeyHash> cache_;
};

// x_t(w) = Re[e^{-it} (F(z(w)) - F(z0))] with jets from the chain rule.
class WeierstrassImmersion final : public ParametricSurface {
public:
    WeierstrassImmersion(std::shared_ptr<const ImmersionCore> core, double t)
        : core_(std::move(core)), phase_(std::exp(complex(0.0, -t))) {
        base_ = core_->primitive(core_->spec().basepoint);
    }

    Jet2 jet(double u, double v) const override {
        const Chart& chart = core_->spec().chart;
        const complex w(u, v);
        const complex z = chart.to_z(w);
        const complex zw = chart.dz(w);
        const complex zww = chart.d2z(w);

        const CVec3 f = (core_->primitive(z) - base_) * phase_;
        const CVec3 phi_z = core_->phi().eval(z);
        const CVec3 dphi_z = core_->phi().eval_derivative(z);
        const CVec3 g1 = phi_z * (zw * phase_);
        CVec3 g2 = dphi_z * (zw * zw * phase_);
        g2 += phi_z * (zww * phase_);

        Jet2 jet;
        jet.x = f.real();
        jet.xu = g1.real();
        jet.xv = -1.0 * g1.imag();
        jet.xuu = g2.real();
        jet.xuv = -1.0 * g2.imag();
        jet.xvv = -1.0 * g2.real();
        return jet;
    }

    const SurfaceDomain& domain() const override { return core_->spec().domain; }
    std::optional<double> declared_mean_curvature() const override { return 0.0; }

private:
    std::shared_ptr<const ImmersionCore> core_;
    complex phase_;
    CVec3 base_;
};

// alpha * x + beta * y, pointwise on shared (u, v) coordinates.
class LinearComboSurface final : public ParametricSurface {
public:
    LinearComboSurface(SurfacePtr x, SurfacePtr y, double alpha, double beta)
        : x_(std::move(x)), y_(std::move(y)), alpha_(alpha), beta_(beta) {
        if (x_->declared_mean_curvature() && y_->declared_mean_curvature() &&
            *x_->declared_mean_curvature() == 0.0 && *y_->declared_mean_curvature() == 0.0) {
            declared_h_ = 0.0;
        }
    }

    Jet2 jet(double u, double v) const override {
        const Jet2 a = x_->jet(u, v);
        const Jet2 b = y_->jet(u, v);
        Jet2 out;
        out.x = a.x * alpha_ + b.x * beta_;
        out.xu = a.xu * alpha_ + b.xu * beta_;
        out.xv = a.xv * alpha_ + b.xv * beta_;
        out.xuu = a.xuu * alpha_ + b.xuu * beta_;
        out.xuv = a.xuv * alpha_ + b.xuv * beta_;
        out.xvv = a.xvv * alpha_ + b.xvv * beta_;
        return out;
    }

    const SurfaceDomain& domain() const override { return x_->domain(); }
    std::optional<double> declared_mean_curvature() const override { return declared_h_; }

private:
    SurfacePtr x_, y_;
    double alpha_, beta_;
    std::optional<double> declared_h_;
};

std::shared_ptr<const ImmersionCore> make_core(const ImmersionSpec& spec, const Tolerances& tol) {
    return std::make_shared<const ImmersionCore>(spec, tol);
}

}  // namespace

struct ImmersionFamily::Impl {
    std::shared_ptr<const ImmersionCore> core;
    Verdict well_defined_verdict;
    Verdict deformable_verdict;
};

ImmersionFamily::ImmersionFamily(ImmersionSpec spec, const Tolerances& tol) {
    auto impl = std::make_shared<Impl>();
    impl->well_defined_verdict = well_defined(spec.data, spec.generators, 1e-8, tol);
    impl->deformable_verdict = deformable(spec.data, spec.generators, 1e-8, tol);
    impl->core = make_core(spec, tol);
    impl_ = std::move(impl);
}

SurfacePtr ImmersionFamily::member(double t) const {
    if (!impl_->well_defined_verdict.ok) {
        throw PreconditionViolation("immersion is not well defined: cycle '" +
                                    impl_->well_defined_verdict.witness + "'");
    }
    const double phase = std::fmod(std::abs(t), M_PI);
    if (phase > 1e-12 && phase < M_PI - 1e-12 && !impl_->deformable_verdict.ok) {
        throw PreconditionViolation("associate member requires vanishing imaginary periods; "
                                    "cycle '" +
                                    impl_->deformable_verdict.witness + "' violates by " +
                                    std::to_string(impl_->deformable_verdict.max_violation));
    }
    return std::make_shared<WeierstrassImmersion>(impl_->core, t);
}

const Verdict& ImmersionFamily::well_defined_verdict() const {
    return impl_->well_defined_verdict;
}

const Verdict& ImmersionFamily::deformable_verdict() const { return impl_->deformable_verdict; }

SurfacePtr build_immersion(const ImmersionSpec& spec, const Tolerances& tol) {
    const Verdict wd = well_defined(spec.data, spec.generators, 1e-8, tol);
    if (!wd.ok) {
        throw PreconditionViolation("immersion is not well defined: cycle '" + wd.witness +
                                    "' has real period " + std::to_string(wd.max_violation));
    }
    return std::make_shared<WeierstrassImmersion>(make_core(spec, tol), 0.0);
}

SurfacePtr conjugate_immersion(const ImmersionSpec& spec, const Tolerances& tol) {
    return associate_member(spec, M_PI / 2.0, tol);
}

SurfacePtr associate_member(const ImmersionSpec& spec, double t, const Tolerances& tol) {
    const Verdict wd = well_defined(spec.data, spec.generators, 1e-8, tol);
    if (!wd.ok) {
        throw PreconditionViolation("immersion is not well defined: cycle '" + wd.witness + "'");
    }
    const double phase = std::fmod(std::abs(t), M_PI);
    if (phase > 1e-12 && phase < M_PI - 1e-12) {
        const Verdict def = deformable(spec.data, spec.generators, 1e-8, tol);
        if (!def.ok) {
            throw PreconditionViolation("associate member requires vanishing imaginary periods; "
                                        "cycle '" +
                                        def.witness + "' violates by " +
                                        std::to_string(def.max_violation));
        }
    }
    return std::make_shared<WeierstrassImmersion>(make_core(spec, tol), t);
}

SurfacePtr associate_minimal(SurfacePtr x, SurfacePtr y, double t) {
    return std::make_shared<LinearComboSurface>(std::move(x), std::move(y), std::cos(t),
                                                std::sin(t));
}

SurfacePtr reconstruct_family(SurfacePtr x, SurfacePtr x_s, double s, double t) {
    const double sin_s = std::sin(s);
    if (std::abs(sin_s) < 1e-9) {
        throw PreconditionViolation("reconstruct_family requires s not congruent to 0 mod pi");
    }
    return std::make_shared<LinearComboSurface>(std::move(x), std::move(x_s),
                                                std::sin(s - t) / sin_s, std::sin(t) / sin_s);
}

}  // namespace cmc
