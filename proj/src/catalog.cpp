#include "cmc/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cmc/ode.hpp"

namespace cmc {

const Cycle& CatalogEntry::cycle(const std::string& label) const {
    for (const Cycle& c : cycles) {
        if (c.label == label) return c;
    }
    throw PreconditionViolation("catalog entry '" + name + "' has no cycle '" + label + "'");
}

namespace {

Cycle iso_u_line(double u_level, double v_from, double v_to, double speed_scale,
                 std::string label) {
    // gamma(s) = (u_level, v_from + dir * s / speed_scale); covers [v_from, v_to].
    Cycle c;
    c.label = std::move(label);
    const double dir = (v_to >= v_from) ? 1.0 : -1.0;
    c.gamma = [=](double s) { return Vec2{u_level, v_from + dir * s / speed_scale}; };
    c.velocity = [=](double) { return Vec2{0.0, dir / speed_scale}; };
    c.length = std::abs(v_to - v_from) * speed_scale;
    return c;
}

}  // namespace

CatalogEntry catenoid(double c) {
    SurfaceDomain dom{0.0, 2.0 * M_PI, -1.2, 1.2, {}, 0.0};
    auto jets = [c](double u, double v) {
        const double ch = std::cosh(v), sh = std::sinh(v);
        const double cu = std::cos(u), su = std::sin(u);
        Jet2 j;
        j.x = Vec3{c * ch * cu, c * ch * su, c * v};
        j.xu = Vec3{-c * ch * su, c * ch * cu, 0};
        j.xv = Vec3{c * sh * cu, c * sh * su, c};
        j.xuu = Vec3{-c * ch * cu, -c * ch * su, 0};
        j.xuv = Vec3{-c * sh * su, c * sh * cu, 0};
        j.xvv = Vec3{c * ch * cu, c * ch * su, 0};
        return j;
    };
    CatalogEntry e;
    e.name = "catenoid";
    e.surface = std::make_shared<AnalyticSurface>(jets, dom, 0.0);
    e.H = 0.0;
    e.wrap_u = true;
    e.cycles.push_back(Cycle::iso_v_line(0.0, 0.0, 2.0 * M_PI, "waist"));
    e.cycles.back().length = 2.0 * M_PI;  // |x_u| = c cosh(0) = c; unit speed for c = 1
    e.cycles.back().unit_speed = (c == 1.0);

    // Conjugate helicoid: y_u = -x_v, y_v = x_u.
    auto conj = [c](double u, double v) {
        const double ch = std::cosh(v), sh = std::sinh(v);
        const double cu = std::cos(u), su = std::sin(u);
        Jet2 j;
        j.x = Vec3{-c * sh * su, c * sh * cu, -c * u};
        j.xu = Vec3{-c * sh * cu, -c * sh * su, -c};
        j.xv = Vec3{-c * ch * su, c * ch * cu, 0};
        j.xuu = Vec3{c * sh * su, -c * sh * cu, 0};
        j.xuv = Vec3{-c * ch * cu, -c * ch * su, 0};
        j.xvv = Vec3{-c * sh * su, c * sh * cu, 0};
        return j;
    };
    e.conjugate = std::make_shared<AnalyticSurface>(conj, dom, 0.0);
    e.description = "catenoid, isothermal angle/height chart";
    return e;
}

CatalogEntry helicoid(double c) {
    CatalogEntry cat = catenoid(c);
    CatalogEntry e;
    e.name = "helicoid";
    e.surface = cat.conjugate;
    e.H = 0.0;
    e.description = "helicoid, conjugate chart of the catenoid";
    return e;
}

CatalogEntry enneper() {
    SurfaceDomain dom{-1.0, 1.0, -1.0, 1.0, {}, 0.0};
    auto jets = [](double u, double v) {
        Jet2 j;
        j.x = Vec3{u / 2 - (u * u * u - 3 * u * v * v) / 6,
                   -v / 2 - (3 * u * u * v - v * v * v) / 6, (u * u - v * v) / 2};
        j.xu = Vec3{(1 - u * u + v * v) / 2, -u * v, u};
        j.xv = Vec3{u * v, -(1 + u * u - v * v) / 2, -v};
        j.xuu = Vec3{-u, -v, 1};
        j.xuv = Vec3{v, -u, 0};
        j.xvv = Vec3{u, v, -1};
        return j;
    };
    CatalogEntry e;
    e.name = "enneper";
    e.surface = std::make_shared<AnalyticSurface>(jets, dom, 0.0);
    e.H = 0.0;
    e.description = "Enneper surface, g = z, dh = z dz";
    return e;
}

CatalogEntry sphere(double r) {
    SurfaceDomain dom{0.0, 2.0 * M_PI, -1.5, 1.5, {}, 0.0};
    auto jets = [r](double u, double v) {
        const double se = 1.0 / std::cosh(v), ta = std::tanh(v);
        const double cu = std::cos(u), su = std::sin(u);
        Jet2 j;
        j.x = Vec3{r * se * cu, r * se * su, r * ta};
        j.xu = Vec3{-r * se * su, r * se * cu, 0};
        j.xv = Vec3{-r * se * ta * cu, -r * se * ta * su, r * se * se};
        j.xuu = Vec3{-r * se * cu, -r * se * su, 0};
        j.xuv = Vec3{r * se * ta * su, -r * se * ta * cu, 0};
        const double dsd = se * (se * se - ta * ta);  // d/dv (sech tanh)
        j.xvv = Vec3{-r * dsd * cu, -r * dsd * su, -2 * r * se * se * ta};
        return j;
    };
    CatalogEntry e;
    e.name = "sphere";
    e.surface = std::make_shared<AnalyticSurface>(jets, dom, -1.0 / r);
    e.H = -1.0 / r;  // outward normal
    e.wrap_u = true;
    e.cap_v0 = e.cap_v1 = true;
    {
        // Unit-speed equator: |x_u| = r at v = 0.
        Cycle c;
        c.label = "equator";
        const double w = 1.0 / r;
        c.gamma = [w](double s) { return Vec2{w * s, 0.0}; };
        c.velocity = [w](double) { return Vec2{w, 0.0}; };
        c.length = 2.0 * M_PI * r;
        c.unit_speed = true;
        e.cycles.push_back(std::move(c));
    }
    e.description = "round sphere, Mercator chart, outward normal";
    return e;
}

CatalogEntry cylinder(double r) {
    SurfaceDomain dom{-1.5, 1.5, 0.0, 2.0 * M_PI, {}, 0.0};
    auto jets = [r](double u, double v) {
        const double cv = std::cos(v), sv = std::sin(v);
        Jet2 j;
        j.x = Vec3{r * cv, r * sv, u};
        j.xu = Vec3{0, 0, 1};
        j.xv = Vec3{-r * sv, r * cv, 0};
        j.xuu = Vec3{0, 0, 0};
        j.xuv = Vec3{0, 0, 0};
        j.xvv = Vec3{-r * cv, -r * sv, 0};
        return j;
    };
    CatalogEntry e;
    e.name = "cylinder";
    e.surface = std::make_shared<AnalyticSurface>(jets, dom, 1.0 / (2.0 * r));
    e.H = 1.0 / (2.0 * r);  // inward normal
    e.wrap_v = true;
    // Equator oriented so that <x_*(J gamma'), e3> = +1 (v decreasing).
    e.cycles.push_back(iso_u_line(0.0, 2.0 * M_PI, 0.0, r, "equator"));
    e.cycles.back().unit_speed = true;
    e.description = "circular cylinder, inward normal, H = 1/(2r)";
    return e;
}

CatalogEntry paraboloid() {
    // z = rho^2 as a surface of revolution in the isothermal chart
    // u = sigma(rho) = m + (1/2) log((m-1)/(m+1)), m = sqrt(1 + 4 rho^2).
    auto sigma_of_rho = [](double rho) {
        const double m = std::sqrt(1.0 + 4.0 * rho * rho);
        return m + 0.5 * std::log((m - 1.0) / (m + 1.0));
    };
    auto rho_of_sigma = [sigma_of_rho](double sigma) {
        double rho = 0.5;
        for (int it = 0; it < 60; ++it) {
            const double m = std::sqrt(1.0 + 4.0 * rho * rho);
            const double f = sigma_of_rho(rho) - sigma;
            const double df = m / rho;  // d sigma / d rho
            const double step = f / df;
            rho -= step;
            rho = std::max(rho, 1e-6);
            if (std::abs(step) < 1e-15) break;
        }
        return rho;
    };
    const double s_lo = sigma_of_rho(0.25), s_hi = sigma_of_rho(1.25);
    SurfaceDomain dom{s_lo, s_hi, 0.0, 2.0 * M_PI, {}, 0.0};
    auto jets = [rho_of_sigma](double u, double v) {
        const double rho = rho_of_sigma(u);
        const double m2 = 1.0 + 4.0 * rho * rho;
        const double m = std::sqrt(m2);
        const double rp = rho / m;            // d rho / d sigma
        const double rpp = rho / (m2 * m2);   // d^2 rho / d sigma^2
        const double cv = std::cos(v), sv = std::sin(v);
        Jet2 j;
        j.x = Vec3{rho * cv, rho * sv, rho * rho};
        j.xu = Vec3{rp * cv, rp * sv, 2 * rho * rp};
        j.xv = Vec3{-rho * sv, rho * cv, 0};
        j.xuu = Vec3{rpp * cv, rpp * sv, 2 * (rp * rp + rho * rpp)};
        j.xuv = Vec3{-rp * sv, rp * cv, 0};
        j.xvv = Vec3{-rho * cv, -rho * sv, 0};
        return j;
    };
    CatalogEntry e;
    e.name = "paraboloid";
    e.surface = std::make_shared<AnalyticSurface>(jets, dom);
    e.wrap_v = true;
    e.description = "paraboloid of revolution (non-CMC control), isothermal chart";
    return e;
}

CatalogEntry catenoid_annulus(const Tolerances& tol) {
    ImmersionSpec spec;
    spec.data.gauss_projection = RationalFn::from_factors({{complex(0.0), 1}}, 1.0);
    spec.data.height_density = RationalFn::from_factors({{complex(0.0), -1}}, 1.0);
    spec.data.punctures = {complex(0.0)};
    spec.data.clearance = 0.05;
    spec.chart = Chart::annulus(0.0);
    spec.domain = SurfaceDomain{std::log(0.2), std::log(1.6), 0.0, 2.0 * M_PI, {}, 0.0};
    spec.basepoint = std::exp(complex(0.5 * (spec.domain.u0 + spec.domain.u1), 0.0));
    spec.generators = {{"puncture-0", ComplexPath::circle(0.0, 0.5)}};

    CatalogEntry e;
    e.name = "catenoid-annulus";
    e.surface = build_immersion(spec, tol);
    e.H = 0.0;
    e.wrap_v = true;
    e.weierstrass = spec;
    for (double r : {0.3, 0.5, 0.7}) {
        e.cycles.push_back(iso_u_line(std::log(r), 0.0, 2.0 * M_PI, 1.0,
                                      "puncture-" + std::to_string(r).substr(0, 3)));
    }
    e.description = "catenoid from Weierstrass data g = z, dh = dz/z, annular chart";
    return e;
}

DelaunayBranch delaunay_branch(const DelaunayParams& p) {
    if (p.H <= 0) throw PreconditionViolation("Delaunay parameters require H > 0");
    const double a_cyl = 1.0 / (4.0 * p.H);
    if (std::abs(p.a) < 1e-12) {
        throw OdeSingularity("sphere-chain degeneration: a = 0 collapses the neck radius", 0.0);
    }
    if (std::abs(p.a - a_cyl) < 1e-12) return DelaunayBranch::cylinder;
    if (p.a > 0 && p.a < a_cyl) return DelaunayBranch::unduloid;
    if (p.a < 0) return DelaunayBranch::nodoid;
    throw PreconditionViolation("Delaunay parameter a outside the unduloid/nodoid/cylinder ranges");
}

namespace {

// Profile state y = (r, z, psi, sigma) with sigma' = 1/r for the isothermal chart.
OdeRhs delaunay_rhs(double H) {
    return [H](double, const OdeState& y) {
        if (y[0] < 1e-9) {
            throw OdeSingularity("Delaunay profile radius degenerated toward the sphere chain",
                                 y[0]);
        }
        return OdeState{std::cos(y[2]), std::sin(y[2]), 2.0 * H - std::sin(y[2]) / y[0],
                        1.0 / y[0]};
    };
}

double start_radius(const DelaunayParams& p, DelaunayBranch branch) {
    const double disc = 1.0 - 4.0 * p.H * p.a;
    if (disc < 0) throw PreconditionViolation("no profile: 1 - 4 H a < 0");
    const double r_minus = (1.0 - std::sqrt(disc)) / (2.0 * p.H);
    const double r_plus = (1.0 + std::sqrt(disc)) / (2.0 * p.H);
    if (branch == DelaunayBranch::nodoid) return r_plus;
    if (r_minus <= 1e-9) {
        throw OdeSingularity("sphere-chain degeneration: neck radius is zero", 0.0);
    }
    return r_minus;  // unduloid neck, cylinder fixed point
}

struct ProfileTrajectory {
    OdeTrajectory traj;
    double period = 0;
    double drift = 0;
    double r0 = 0;
};

ProfileTrajectory delaunay_profile(const DelaunayParams& p, int periods, const Tolerances& tol) {
    const DelaunayBranch branch = delaunay_branch(p);
    const double r0 = start_radius(p, branch);
    const OdeRhs rhs = delaunay_rhs(p.H);
    const OdeState y0{r0, 0.0, M_PI / 2.0, 0.0};

    ProfileTrajectory out;
    out.r0 = r0;

    if (branch == DelaunayBranch::cylinder) {
        out.period = 2.0 * M_PI * r0;
    } else {
        // Coarse pass to locate one profile period: the second zero of
        // cos(psi) after the start (neck -> bulge -> neck; the nodoid winds
        // psi through a full turn with the same two crossings).
        Tolerances coarse = tol;
        coarse.ode_max_step = 0.01;
        const OdeTrajectory scout = ode_solve(rhs, y0, 0.0, 40.0 / p.H, coarse);
        int crossings = 0;
        double period = -1;
        for (size_t i = 1; i + 1 < scout.s.size() && period < 0; ++i) {
            const double c_prev = std::cos(scout.at(scout.s[i] - 1e-9)[2]);
            const double c_here = std::cos(scout.y[i + 1][2]);
            if (std::abs(std::cos(scout.y[i][2])) < 1e-12) continue;
            if (c_prev * c_here < 0) {
                // bisect within [s_i, s_{i+1}]
                double lo = scout.s[i], hi = scout.s[i + 1];
                for (int it = 0; it < 80; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    if (std::cos(scout.at(mid)[2]) * c_here > 0) {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                ++crossings;
                if (crossings == 2) period = 0.5 * (lo + hi);
            }
        }
        if (period < 0) throw Error("failed to locate the Delaunay profile period");
        out.period = period;
    }

    // Fine pass over the requested span plus padding for boundary jets.
    Tolerances fine = tol;
    fine.ode_max_step = 0.005;
    const double pad = 0.5;
    const OdeTrajectory fwd = ode_solve(rhs, y0, 0.0, periods * out.period + pad, fine);
    const OdeTrajectory bwd = ode_solve(rhs, y0, 0.0, -pad, fine);

    OdeTrajectory merged;
    for (size_t i = bwd.s.size(); i-- > 1;) {
        merged.s.push_back(bwd.s[i]);
        merged.y.push_back(bwd.y[i]);
        merged.dy.push_back(bwd.dy[i]);
    }
    merged.s.insert(merged.s.end(), fwd.s.begin(), fwd.s.end());
    merged.y.insert(merged.y.end(), fwd.y.begin(), fwd.y.end());
    merged.dy.insert(merged.dy.end(), fwd.dy.begin(), fwd.dy.end());
    out.traj = std::move(merged);

    // Conserved quantity F = r sin(psi) - H r^2 across one period.
    const double f0 = r0 - p.H * r0 * r0;
    for (size_t i = 0; i < out.traj.s.size(); ++i) {
        if (out.traj.s[i] < 0 || out.traj.s[i] > out.period) continue;
        const double r = out.traj.y[i][0], psi = out.traj.y[i][2];
        out.drift = std::max(out.drift, std::abs(r * std::sin(psi) - p.H * r * r - f0));
    }
    return out;
}

class DelaunaySurface final : public ParametricSurface {
public:
    DelaunaySurface(ProfileTrajectory profile, DelaunayParams params, SurfaceDomain dom)
        : profile_(std::move(profile)), params_(params), domain_(dom) {}

    Jet2 jet(double u, double v) const override {
        const OdeState y = profile_.traj.at(u);
        const double r = y[0], z = y[1], psi = y[2];
        const double cp = std::cos(psi), sp = std::sin(psi);
        const double psidot = 2.0 * params_.H - sp / r;
        const double cv = std::cos(v), sv = std::sin(v);
        Jet2 j;
        j.x = Vec3{r * cv, r * sv, z};
        j.xu = Vec3{cp * cv, cp * sv, sp};
        j.xv = Vec3{-r * sv, r * cv, 0};
        j.xuu = Vec3{-sp * psidot * cv, -sp * psidot * sv, cp * psidot};
        j.xuv = Vec3{-cp * sv, cp * cv, 0};
        j.xvv = Vec3{-r * cv, -r * sv, 0};
        return j;
    }

    const SurfaceDomain& domain() const override { return domain_; }
    std::optional<double> declared_mean_curvature() const override { return params_.H; }

    const ProfileTrajectory& profile() const { return profile_; }

private:
    ProfileTrajectory profile_;
    DelaunayParams params_;
    SurfaceDomain domain_;
};

// Chart u = sigma = int ds / r over the same profile; isothermal with
// conformal factor r^2.
class DelaunayIsothermalSurface final : public ParametricSurface {
public:
    DelaunayIsothermalSurface(std::shared_ptr<const DelaunaySurface> base, SurfaceDomain dom)
        : base_(std::move(base)), domain_(dom) {}

    Jet2 jet(double sigma, double v) const override {
        const double s = s_of_sigma(sigma);
        const Jet2 b = base_->jet(s, v);
        const OdeState y = base_->profile().traj.at(s);
        const double r = y[0], psi = y[2];
        const double fp = r;                      // ds/dsigma
        const double fpp = std::cos(psi) * r;     // d2s/dsigma2 = r' * r
        Jet2 j;
        j.x = b.x;
        j.xu = b.xu * fp;
        j.xv = b.xv;
        j.xuu = b.xuu * (fp * fp) + b.xu * fpp;
        j.xuv = b.xuv * fp;
        j.xvv = b.xvv;
        return j;
    }

    const SurfaceDomain& domain() const override { return domain_; }
    std::optional<double> declared_mean_curvature() const override {
        return base_->declared_mean_curvature();
    }

    double s_of_sigma(double sigma) const {
        const OdeTrajectory& t = base_->profile().traj;
        // Binary search over node sigma values (strictly increasing).
        size_t lo = 0, hi = t.s.size() - 1;
        while (hi - lo > 1) {
            const size_t mid = (lo + hi) / 2;
            if (t.y[mid][3] <= sigma) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Newton on the Hermite interpolant of sigma(s).
        double s = t.s[lo];
        for (int it = 0; it < 40; ++it) {
            const OdeState y = t.at(s);
            const double f = y[3] - sigma;
            const double df = 1.0 / y[0];
            const double step = f / df;
            s -= step;
            if (std::abs(step) < 1e-14) break;
        }
        return s;
    }

private:
    std::shared_ptr<const DelaunaySurface> base_;
    SurfaceDomain domain_;
};

}  // namespace

DelaunayProfileInfo delaunay_profile_info(const DelaunayParams& params, const Tolerances& tol) {
    const ProfileTrajectory profile = delaunay_profile(params, 1, tol);
    DelaunayProfileInfo info;
    info.period = profile.period;
    info.conserved_drift = profile.drift;
    info.neck_radius = profile.r0;
    info.bulge_radius = profile.r0;
    for (size_t i = 0; i < profile.traj.s.size(); ++i) {
        if (profile.traj.s[i] < 0 || profile.traj.s[i] > profile.period) continue;
        info.neck_radius = std::min(info.neck_radius, profile.traj.y[i][0]);
        info.bulge_radius = std::max(info.bulge_radius, profile.traj.y[i][0]);
    }
    return info;
}

CatalogEntry delaunay(const DelaunayParams& params, int periods, const Tolerances& tol) {
    const DelaunayBranch branch = delaunay_branch(params);
    ProfileTrajectory profile = delaunay_profile(params, periods, tol);
    const double r0 = profile.r0;
    const double period = profile.period;
    SurfaceDomain dom{0.0, periods * period, 0.0, 2.0 * M_PI, {}, 0.0};

    CatalogEntry e;
    switch (branch) {
        case DelaunayBranch::unduloid: e.name = "unduloid"; break;
        case DelaunayBranch::nodoid: e.name = "nodoid"; break;
        case DelaunayBranch::cylinder: e.name = "cylinder-limit"; break;
    }
    e.surface = std::make_shared<DelaunaySurface>(std::move(profile), params, dom);
    e.H = params.H;
    e.wrap_v = true;
    e.cycles.push_back(iso_u_line(0.0, 0.0, 2.0 * M_PI, r0, "neck"));
    e.cycles.back().unit_speed = true;
    e.description = "Delaunay surface of revolution from the profile flow";
    return e;
}

SurfacePtr delaunay_isothermal(const DelaunayParams& params, const Tolerances& tol) {
    CatalogEntry e = delaunay(params, 1, tol);
    auto base = std::dynamic_pointer_cast<const DelaunaySurface>(e.surface);
    const OdeTrajectory& t = base->profile().traj;
    // Usable sigma range, clipped away from the padded ends.
    const double s_lo = 0.02, s_hi = base->profile().period - 0.02;
    const double sig_lo = t.at(s_lo)[3], sig_hi = t.at(s_hi)[3];
    SurfaceDomain dom{sig_lo, sig_hi, 0.0, 2.0 * M_PI, {}, 0.0};
    return std::make_shared<DelaunayIsothermalSurface>(base, dom);
}

PuncturedPlaneFamily punctured_plane_family(const std::vector<complex>& punctures, int k,
                                            const Tolerances& tol) {
    if (punctures.empty() || k < 1) {
        throw PreconditionViolation("punctured-plane family needs punctures and k >= 1");
    }
    PuncturedPlaneFamily fam;
    std::vector<std::pair<complex, int>> factors;
    double max_abs = 0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < punctures.size(); ++i) {
        factors.push_back({punctures[i], 2 * k});
        max_abs = std::max(max_abs, std::abs(punctures[i]));
        for (size_t j = i + 1; j < punctures.size(); ++j) {
            min_gap = std::min(min_gap, std::abs(punctures[i] - punctures[j]));
        }
    }
    fam.data.gauss_projection = RationalFn::from_factors(factors, 1.0);
    fam.data.height_density = RationalFn::constant(1.0);
    fam.data.punctures = punctures;
    fam.data.clearance = 0.05;

    const double cycle_radius =
        punctures.size() > 1 ? std::min(0.5, 0.4 * min_gap) : 0.5;
    for (size_t i = 0; i < punctures.size(); ++i) {
        fam.puncture_cycles.push_back(
            {"puncture-" + std::to_string(i), ComplexPath::circle(punctures[i], cycle_radius)});
    }

    ImmersionSpec spec;
    spec.data = fam.data;
    spec.chart = Chart::annulus(0.0);
    if (punctures.size() == 1 && std::abs(punctures[0]) < 1e-12) {
        // Annulus around the single puncture at the origin.
        spec.domain = SurfaceDomain{std::log(0.2), std::log(1.6), 0.0, 2.0 * M_PI, {}, 0.0};
        spec.generators = fam.puncture_cycles;
        for (double r : {0.3, 0.5, 0.7}) {
            fam.entry.cycles.push_back(iso_u_line(std::log(r), 0.0, 2.0 * M_PI, 1.0,
                                                  "puncture-" + std::to_string(r).substr(0, 3)));
        }
    } else {
        // Outer annulus enclosing every puncture.
        const double r_in = max_abs + 0.75;
        const double r_out = 2.5 * r_in;
        spec.domain = SurfaceDomain{std::log(r_in), std::log(r_out), 0.0, 2.0 * M_PI, {}, 0.0};
        const double r_mid = std::sqrt(r_in * r_out);
        spec.generators = {{"outer", ComplexPath::circle(0.0, r_mid)}};
        fam.entry.cycles.push_back(iso_u_line(std::log(r_mid), 0.0, 2.0 * M_PI, 1.0, "outer"));
    }
    spec.basepoint = std::exp(complex(0.5 * (spec.domain.u0 + spec.domain.u1), 0.0));

    fam.entry.name = "s5-n" + std::to_string(punctures.size()) + "-k" + std::to_string(k);
    fam.entry.H = 0.0;
    fam.entry.wrap_v = true;
    fam.entry.weierstrass = spec;
    fam.entry.surface = build_immersion(spec, tol);
    fam.entry.description = "punctured-plane minimal family g = prod(z - p_i)^{2k}, dh = dz";
    return fam;
}

std::vector<std::string> catalog_names() {
    return {"catenoid", "helicoid",   "enneper", "sphere", "cylinder",
            "paraboloid", "catenoid-annulus", "unduloid", "nodoid", "s5"};
}

namespace {

std::vector<double> parse_args(const std::string& spec) {
    std::vector<double> args;
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return args;
    std::string rest = spec.substr(colon + 1);
    size_t pos = 0;
    while (pos < rest.size()) {
        size_t next = rest.find(',', pos);
        if (next == std::string::npos) next = rest.size();
        args.push_back(std::stod(rest.substr(pos, next - pos)));
        pos = next + 1;
    }
    return args;
}

}  // namespace

CatalogEntry catalog_lookup(const std::string& spec, const Tolerances& tol) {
    const std::string name = spec.substr(0, spec.find(':'));
    const std::vector<double> args = parse_args(spec);
    auto arg = [&](size_t i, double fallback) { return i < args.size() ? args[i] : fallback; };

    if (name == "catenoid") return catenoid(arg(0, 1.0));
    if (name == "helicoid") return helicoid(arg(0, 1.0));
    if (name == "enneper") return enneper();
    if (name == "sphere") return sphere(arg(0, 1.0));
    if (name == "cylinder") return cylinder(arg(0, 1.0));
    if (name == "paraboloid") return paraboloid();
    if (name == "catenoid-annulus") return catenoid_annulus(tol);
    if (name == "unduloid" || name == "nodoid" || name == "delaunay") {
        DelaunayParams params;
        params.H = arg(0, 0.5);
        params.a = arg(1, name == "nodoid" ? -0.2 : 0.3);
        return delaunay(params, 1, tol);
    }
    if (name == "s5") {
        const int n = static_cast<int>(arg(0, 1));
        const int k = static_cast<int>(arg(1, 1));
        std::vector<complex> ps;
        for (int i = 0; i < n; ++i) {
            ps.push_back(n == 1 ? complex(0.0) : complex(2.0 * i - (n - 1), 0.0));
        }
        return punctured_plane_family(ps, k, tol).entry;
    }
    throw PreconditionViolation("unknown catalog surface: " + spec);
}

}  // namespace cmc
