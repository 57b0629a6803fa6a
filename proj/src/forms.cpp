#include "cmc/forms.hpp"

#include <algorithm>
#include <cmath>

#include "cmc/quadrature.hpp"

namespace cmc {

Cycle Cycle::chart_circle(Vec2 center, double radius, int turns, std::string label) {
    Cycle c;
    c.label = std::move(label);
    const double w = 2.0 * M_PI * turns;
    c.gamma = [=](double s) {
        return Vec2{center.u + radius * std::cos(w * s), center.v + radius * std::sin(w * s)};
    };
    c.velocity = [=](double s) {
        return Vec2{-radius * w * std::sin(w * s), radius * w * std::cos(w * s)};
    };
    c.length = 1.0;
    return c;
}

Cycle Cycle::iso_v_line(double v_level, double u0, double u1, std::string label) {
    Cycle c;
    c.label = std::move(label);
    const double dir = (u1 >= u0) ? 1.0 : -1.0;
    c.gamma = [=](double s) { return Vec2{u0 + dir * s, v_level}; };
    c.velocity = [=](double) { return Vec2{dir, 0.0}; };
    c.length = std::abs(u1 - u0);
    return c;
}

Cycle Cycle::reversed() const {
    Cycle c = *this;
    const auto g = gamma;
    const auto vel = velocity;
    const double L = length;
    c.gamma = [=](double s) { return g(L - s); };
    c.velocity = [=](double s) { return vel(L - s) * -1.0; };
    c.label = label + "-reversed";
    return c;
}

void Cycle::validate(const ParametricSurface* surface) const {
    const Vec2 a = gamma(0.0), b = gamma(length);
    if (surface) {
        // Closed on the surface: wrapped charts close through a period.
        const Vec3 xa = surface->position(a.u, a.v);
        const Vec3 xb = surface->position(b.u, b.v);
        const double scale = std::max(1.0, xa.norm());
        if ((xa - xb).norm() > 1e-10 * scale) {
            throw PreconditionViolation("cycle endpoints do not coincide: " + label);
        }
    } else if ((a - b).norm() > 1e-10) {
        throw PreconditionViolation("cycle endpoints do not coincide: " + label);
    }
    if (unit_speed && surface) {
        for (int i = 0; i < 64; ++i) {
            const double s = length * (i + 0.5) / 64.0;
            const FrameData f = frame_at(*surface, gamma(s).u, gamma(s).v);
            const double speed = f.push_forward(velocity(s)).norm();
            if (std::abs(speed - 1.0) > 1e-8) {
                throw PreconditionViolation("cycle is flagged unit-speed but |x_*(gamma')| = " +
                                            std::to_string(speed));
            }
        }
    }
}

namespace {

double resolve_constant_h(const SurfacePtr& surface, double h_tol, const char* what) {
    const double dev = mean_curvature_deviation(*surface);
    if (dev > h_tol) {
        throw PreconditionViolation(std::string(what) +
                                    " requires constant mean curvature; max deviation " +
                                    std::to_string(dev));
    }
    if (auto h = surface->declared_mean_curvature()) return *h;
    // Mean of a small sample grid.
    const SurfaceDomain& dom = surface->domain();
    double acc = 0;
    int count = 0;
    for (int i = 1; i <= 5; ++i) {
        for (int j = 1; j <= 5; ++j) {
            const double u = dom.u0 + (dom.u1 - dom.u0) * i / 6.0;
            const double v = dom.v0 + (dom.v1 - dom.v0) * j / 6.0;
            if (!dom.contains(u, v)) continue;
            acc += frame_at(*surface, u, v).H;
            ++count;
        }
    }
    return acc / count;
}

}  // namespace

VectorOneForm force_form(const SurfacePtr& surface, double h_tol) {
    VectorOneForm form;
    form.kind = VectorOneForm::Kind::force;
    form.H = resolve_constant_h(surface, h_tol, "force form");
    const double H = form.H;
    form.value = [H](const FrameData& f, const Vec2& X) {
        return cross(f.x * H + f.normal, f.push_forward(X));
    };
    return form;
}

VectorOneForm torque_form(const SurfacePtr& surface, Vec3 origin, double h_tol) {
    VectorOneForm form;
    form.kind = VectorOneForm::Kind::torque;
    form.H = resolve_constant_h(surface, h_tol, "torque form");
    form.origin = origin;
    const double H = form.H;
    form.value = [H, origin](const FrameData& f, const Vec2& X) {
        const Vec3 x = f.x - origin;
        const Vec3 dx = f.push_forward(X);
        const Vec3 jdx = f.push_forward(apply_J(f, X));
        const Vec3 direct = cross(x, cross(x, dx)) * (2.0 / 3.0 * H) + cross(x, jdx);
        const Vec3 alt = cross(x, cross(x * H + f.normal, dx) * 2.0 + jdx) * (1.0 / 3.0);
        const double scale = std::max(1.0, x.norm2() * dx.norm());
        if ((direct - alt).norm() > 1e-12 * scale) {
            throw Error("torque form self-check failed: algebraic variants disagree");
        }
        return direct;
    };
    return form;
}

PeriodValue period_of_form(const VectorOneForm& form, const ParametricSurface& surface,
                           const Cycle& cycle, const Tolerances& tol) {
    cycle.validate(&surface);
    QuadResult info;
    const Vec3 value = integrate_real_1form(
        [&](double s) {
            const Vec2 p = cycle.gamma(s);
            const FrameData f = frame_at(surface, p.u, p.v);
            return form.value(f, cycle.velocity(s));
        },
        cycle.length, tol, &info);
    return {value, info.error_estimate};
}

Vec3 closedness_defect(const VectorOneForm& form, const ParametricSurface& surface, Vec2 p,
                       double h, int nodes_per_side) {
    // Corners of the square, counterclockwise in (u, v).
    const Vec2 corners[4] = {{p.u - h / 2, p.v - h / 2},
                             {p.u + h / 2, p.v - h / 2},
                             {p.u + h / 2, p.v + h / 2},
                             {p.u - h / 2, p.v + h / 2}};
    Vec3 acc{};
    for (int side = 0; side < 4; ++side) {
        const Vec2 a = corners[side];
        const Vec2 b = corners[(side + 1) % 4];
        const Vec2 dir = (b - a) * (1.0 / nodes_per_side);
        for (int i = 0; i < nodes_per_side; ++i) {
            const Vec2 q = a + dir * (i + 0.5);
            const FrameData f = frame_at(surface, q.u, q.v);
            acc += form.value(f, b - a) * (1.0 / nodes_per_side);
        }
    }
    return acc;
}

double fitted_decay_order(const std::vector<double>& hs, const std::vector<double>& defects) {
    // Least-squares slope of log(defect) vs log(h).
    const size_t n = hs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        const double x = std::log(hs[i]);
        const double y = std::log(std::max(defects[i], 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

Cycle arclength_reparametrize(const ParametricSurface& surface, const Cycle& cycle, int samples) {
    // Cumulative arclength at sample nodes with the exact speed as Hermite slope.
    auto speed = [&](double s) {
        const Vec2 p = cycle.gamma(s);
        const FrameData f = frame_at(surface, p.u, p.v);
        return f.push_forward(cycle.velocity(s)).norm();
    };
    std::vector<double> s_nodes(samples + 1), ell(samples + 1), spd(samples + 1);
    const double ds = cycle.length / samples;
    for (int i = 0; i <= samples; ++i) {
        s_nodes[i] = i * ds;
        spd[i] = speed(s_nodes[i]);
    }
    ell[0] = 0;
    Tolerances tol;
    for (int i = 0; i < samples; ++i) {
        const double piece = integrate_adaptive<double>(speed, s_nodes[i], s_nodes[i + 1], tol);
        ell[i + 1] = ell[i] + piece;
    }
    const double total = ell.back();

    // Invert ell(s) per query with monotone Hermite segments and Newton.
    auto s_of_ell = [=](double target) {
        size_t lo = 0, hi = samples;
        while (hi - lo > 1) {
            const size_t mid = (lo + hi) / 2;
            if (ell[mid] <= target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // Hermite cubic of ell on [s_lo, s_hi] with slopes spd.
        const double h = s_nodes[hi] - s_nodes[lo];
        double t = (target - ell[lo]) / std::max(ell[hi] - ell[lo], 1e-300);
        for (int it = 0; it < 8; ++it) {
            const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
            const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
            const double val =
                h00 * ell[lo] + h10 * h * spd[lo] + h01 * ell[hi] + h11 * h * spd[hi];
            const double d00 = 6 * t * (t - 1) / h, d10 = (1 - t) * (1 - 3 * t);
            const double d01 = -6 * t * (t - 1) / h, d11 = t * (3 * t - 2);
            const double der =
                (d00 * ell[lo] + d10 * spd[lo] + d01 * ell[hi] + d11 * spd[hi]) * h;
            if (std::abs(der) < 1e-300) break;
            t -= (val - target) / der;
            t = std::clamp(t, 0.0, 1.0);
        }
        return s_nodes[lo] + t * h;
    };

    Cycle out;
    out.label = cycle.label;
    out.length = total;
    out.unit_speed = true;
    const auto g = cycle.gamma;
    const auto vel = cycle.velocity;
    out.gamma = [=](double l) { return g(s_of_ell(std::clamp(l, 0.0, total))); };
    out.velocity = [=, &surface](double l) {
        const double s = s_of_ell(std::clamp(l, 0.0, total));
        const Vec2 v = vel(s);
        const Vec2 p = g(s);
        const FrameData f = frame_at(surface, p.u, p.v);
        const double sp = f.push_forward(v).norm();
        return v * (1.0 / sp);
    };
    return out;
}

CrossSectionResult cross_section_force(const SurfacePtr& surface, Vec3 plane_normal,
                                       const Cycle& cycle, const Tolerances& tol) {
    const Vec3 V = plane_normal.normalized();
    const double H = resolve_constant_h(surface, 1e-6, "cross-section formula");
    const Cycle unit = arclength_reparametrize(*surface, cycle);

    // Planarity and plane offset: <x, V> must be constant along the cycle.
    double offset = 0;
    {
        const int n = 64;
        for (int i = 0; i < n; ++i) {
            const Vec2 p = unit.gamma(unit.length * (i + 0.5) / n);
            offset += dot(surface->position(p.u, p.v), V);
        }
        offset /= n;
        for (int i = 0; i < n; ++i) {
            const Vec2 p = unit.gamma(unit.length * (i + 0.5) / n);
            if (std::abs(dot(surface->position(p.u, p.v), V) - offset) > 1e-8) {
                throw PreconditionViolation("cycle image does not lie in a plane orthogonal to V");
            }
        }
    }
    const Vec3 origin = V * offset;  // ambient origin translated into the plane

    // Transversality: a = <x_*(J gamma'), V> bounded away from zero.
    auto a_of = [&](double s) {
        const Vec2 p = unit.gamma(s);
        const FrameData f = frame_at(*surface, p.u, p.v);
        const Vec2 jdir = apply_J(f, unit.velocity(s));
        return dot(f.push_forward(jdir), V);
    };
    for (int i = 0; i < 256; ++i) {
        const double s = unit.length * (i + 0.5) / 256;
        if (std::abs(a_of(s)) <= 1e-6) {
            throw PreconditionViolation("transversality failure: <x_*(J gamma'), V> ~ 0 at s = " +
                                        std::to_string(s));
        }
    }

    QuadResult info;
    const double value = integrate_adaptive<double>(
        [&](double s) {
            const Vec2 p = unit.gamma(s);
            const FrameData f = frame_at(*surface, p.u, p.v);
            const double a = a_of(s);
            const double height = dot(f.x - origin, f.normal);
            return (a * a + H * height) / a;
        },
        0.0, unit.length, tol, &info);
    return {value, unit.length, info.error_estimate};
}

namespace {

bool circle_contains(const Circle2& c, const std::pair<double, double>& p, double eps = 1e-10) {
    const double dx = p.first - c.cx, dy = p.second - c.cy;
    return dx * dx + dy * dy <= (c.r + eps) * (c.r + eps);
}

Circle2 circle_from_two(const std::pair<double, double>& a, const std::pair<double, double>& b) {
    const double cx = 0.5 * (a.first + b.first), cy = 0.5 * (a.second + b.second);
    return {cx, cy, 0.5 * std::hypot(a.first - b.first, a.second - b.second)};
}

Circle2 circle_from_three(const std::pair<double, double>& a, const std::pair<double, double>& b,
                          const std::pair<double, double>& c) {
    const double ax = a.first, ay = a.second, bx = b.first, by = b.second, cx = c.first,
                 cy = c.second;
    const double d = 2.0 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
    if (std::abs(d) < 1e-14) {
        // Collinear: fall back to the widest pair.
        Circle2 best = circle_from_two(a, b);
        for (const auto& cand : {circle_from_two(a, c), circle_from_two(b, c)}) {
            if (cand.r > best.r) best = cand;
        }
        return best;
    }
    const double a2 = ax * ax + ay * ay, b2 = bx * bx + by * by, c2 = cx * cx + cy * cy;
    const double ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by)) / d;
    const double uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax)) / d;
    return {ux, uy, std::hypot(ax - ux, ay - uy)};
}

Circle2 welzl(std::vector<std::pair<double, double>>& pts, size_t n,
              std::vector<std::pair<double, double>>& boundary) {
    if (n == 0 || boundary.size() == 3) {
        switch (boundary.size()) {
            case 0: return {0, 0, 0};
            case 1: return {boundary[0].first, boundary[0].second, 0};
            case 2: return circle_from_two(boundary[0], boundary[1]);
            default: return circle_from_three(boundary[0], boundary[1], boundary[2]);
        }
    }
    const auto p = pts[n - 1];
    Circle2 c = welzl(pts, n - 1, boundary);
    if (circle_contains(c, p)) return c;
    boundary.push_back(p);
    c = welzl(pts, n - 1, boundary);
    boundary.pop_back();
    return c;
}

}  // namespace

Circle2 smallest_enclosing_circle(std::vector<std::pair<double, double>> points) {
    // Deterministic order-scramble keeps the recursion shallow for the
    // structured sample sets we feed it.
    std::vector<std::pair<double, double>> pts;
    pts.reserve(points.size());
    size_t idx = 0;
    const size_t n = points.size();
    const size_t stride = (n > 2) ? (n / 2 + 1) : 1;
    std::vector<bool> used(n, false);
    for (size_t i = 0; i < n; ++i) {
        while (used[idx]) idx = (idx + 1) % n;
        pts.push_back(points[idx]);
        used[idx] = true;
        idx = (idx + stride) % n;
    }
    std::vector<std::pair<double, double>> boundary;
    return welzl(pts, pts.size(), boundary);
}

AlexandrovResult alexandrov_criterion(const SurfacePtr& surface, Vec3 plane_normal,
                                      const Cycle& cycle, const Tolerances& tol) {
    const Vec3 V = plane_normal.normalized();
    const double H = resolve_constant_h(surface, 1e-6, "mirror-plane criterion");
    if (std::abs(H) < 1e-12) {
        throw PreconditionViolation("mirror-plane criterion requires H != 0");
    }
    const Cycle unit = arclength_reparametrize(*surface, cycle);

    // Plane offset and the symmetry normalization a = +1.
    double offset = 0;
    const int n = 128;
    for (int i = 0; i < n; ++i) {
        const Vec2 p = unit.gamma(unit.length * (i + 0.5) / n);
        offset += dot(surface->position(p.u, p.v), V);
    }
    offset /= n;
    const Vec3 origin = V * offset;
    for (int i = 0; i < n; ++i) {
        const double s = unit.length * (i + 0.5) / n;
        const Vec2 p = unit.gamma(s);
        const FrameData f = frame_at(*surface, p.u, p.v);
        const double a = dot(f.push_forward(apply_J(f, unit.velocity(s))), V);
        if (std::abs(a - 1.0) > 1e-6) {
            throw PreconditionViolation(
                "mirror-plane criterion requires <x_*(J gamma'), V> = 1; got " +
                std::to_string(a));
        }
    }

    AlexandrovResult out;
    out.value = unit.length + H * integrate_adaptive<double>(
                                   [&](double s) {
                                       const Vec2 p = unit.gamma(s);
                                       const FrameData f = frame_at(*surface, p.u, p.v);
                                       return dot(f.x - origin, f.normal);
                                   },
                                   0.0, unit.length, tol);

    // Smallest enclosing circle of the planar curve samples, in plane coords.
    Vec3 e1 = std::abs(V.x) < 0.9 ? cross(V, Vec3{1, 0, 0}) : cross(V, Vec3{0, 1, 0});
    e1 = e1.normalized();
    const Vec3 e2 = cross(V, e1);
    std::vector<std::pair<double, double>> samples;
    const int m = 256;
    samples.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Vec2 p = unit.gamma(unit.length * i / double(m));
        const Vec3 x = surface->position(p.u, p.v) - origin;
        samples.push_back({dot(x, e1), dot(x, e2)});
    }
    const Circle2 circ = smallest_enclosing_circle(std::move(samples));
    out.enclosing_radius = circ.r;
    out.disk_bound = 1.0 / std::abs(H);
    out.finite_family = circ.r < out.disk_bound;
    return out;
}

FamilyIdentityResiduals exactness_residuals(const std::function<SurfacePtr(double)>& family,
                                            double t, double dt, const std::vector<Vec2>& samples,
                                            Vec3 torque_origin) {
    const SurfacePtr sm = family(t - dt);
    const SurfacePtr s0 = family(t);
    const SurfacePtr sp = family(t + dt);
    const double H = s0->declared_mean_curvature()
                         ? *s0->declared_mean_curvature()
                         : frame_at(*s0, samples.front().u, samples.front().v).H;

    FamilyIdentityResiduals res;
    for (const Vec2& p : samples) {
        const FrameData fm = frame_at(*sm, p.u, p.v);
        const FrameData f0 = frame_at(*s0, p.u, p.v);
        const FrameData fp = frame_at(*sp, p.u, p.v);

        const Vec3 P = f0.x * H + f0.normal;

        // d/dt x_*(X) + (H x + xi) x x_*(X) for X = du, dv.
        const Vec3 dxu = (fp.xu - fm.xu) / (2 * dt);
        const Vec3 dxv = (fp.xv - fm.xv) / (2 * dt);
        res.differential_identity =
            std::max({res.differential_identity, (dxu + cross(P, f0.xu)).norm(),
                      (dxv + cross(P, f0.xv)).norm()});

        // d/dt xi + (H x + xi) x xi.
        const Vec3 dnormal = (fp.normal - fm.normal) / (2 * dt);
        res.normal_identity = std::max(res.normal_identity, (dnormal + cross(P, f0.normal)).norm());

        // X(x'' + H x' x x + x) - 3 H sigma(X).
        const Vec3 ddxu = (fp.xu - 2.0 * f0.xu + fm.xu) / (dt * dt);
        const Vec3 ddxv = (fp.xv - 2.0 * f0.xv + fm.xv) / (dt * dt);
        const Vec3 xdot = (fp.x - fm.x) / (2 * dt);
        const Vec3 xdot_u = dxu, xdot_v = dxv;
        const Vec3 x0 = f0.x - torque_origin;
        auto sigma = [&](const Vec2& X) {
            const Vec3 dx = f0.push_forward(X);
            const Vec3 jdx = f0.push_forward(apply_J(f0, X));
            return cross(x0, cross(x0, dx)) * (2.0 / 3.0 * H) + cross(x0, jdx);
        };
        const Vec3 term_u =
            ddxu + (cross(xdot_u, x0) + cross(xdot, f0.xu)) * H + f0.xu - sigma({1, 0}) * (3 * H);
        const Vec3 term_v =
            ddxv + (cross(xdot_v, x0) + cross(xdot, f0.xv)) * H + f0.xv - sigma({0, 1}) * (3 * H);
        res.second_order_identity =
            std::max({res.second_order_identity, term_u.norm(), term_v.norm()});
    }
    return res;
}

}  // namespace cmc
