#include <cmath>

#include "cmc/catalog.hpp"
#include "cmc/forms.hpp"
#include "cmc/weierstrass.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cmc;
using cmc::test::uniform;

TEST_CASE("force form values") {
    SUBCASE("minimal surface: omega(X) = x_*(JX)") {
        const CatalogEntry c = catenoid(1.0);
        const VectorOneForm omega = force_form(c.surface);
        for (int i = 0; i < 10; ++i) {
            const double u = uniform(0.3, 6.0), v = uniform(-1.0, 1.0);
            const FrameData f = frame_at(*c.surface, u, v);
            const Vec2 X{uniform(-1, 1), uniform(-1, 1)};
            const Vec3 expect = f.push_forward(apply_J(f, X));
            CHECK((omega.value(f, X) - expect).norm() < 1e-10);
        }
    }
    SUBCASE("unit sphere with outward normal: omega vanishes identically") {
        const CatalogEntry s = sphere(1.0);  // H = -1, xi = x
        const VectorOneForm omega = force_form(s.surface);
        const FrameData f = frame_at(*s.surface, 1.0, 0.5);
        CHECK(omega.value(f, {1.0, -0.7}).norm() < 1e-9);
    }
    SUBCASE("cylinder hand value") {
        const CatalogEntry c = cylinder(1.0);
        const FrameData f = frame_at(*c.surface, 0.0, 0.0);  // p = (1, 0, 0)
        const VectorOneForm omega = force_form(c.surface);
        // X with x_*(X) = (0, 1, 0) is the coordinate direction dv.
        const Vec3 got = omega.value(f, {0.0, 1.0});
        CHECK((got - Vec3{0, 0, -0.5}).norm() < 1e-12);
    }
    SUBCASE("non-constant H refuses with deviation report") {
        const CatalogEntry p = paraboloid();
        CHECK_THROWS_AS(force_form(p.surface), PreconditionViolation);
    }
}

TEST_CASE("torque form values") {
    SUBCASE("cylinder hand value, orientation with x_*(J gamma') = e3") {
        const CatalogEntry c = cylinder(1.0);
        const FrameData f = frame_at(*c.surface, 0.0, 0.0);  // p = (1, 0, 0)
        const VectorOneForm sigma = torque_form(c.surface);
        // gamma' = -dv/r gives x_*(gamma') = (0, -1, 0) and x_*(J gamma') = (0, 0, 1).
        const Vec2 gdot{0.0, -1.0};
        CHECK((f.push_forward(apply_J(f, gdot)) - Vec3{0, 0, 1}).norm() < 1e-12);
        const Vec3 got = sigma.value(f, gdot);
        CHECK((got - Vec3{0, -2.0 / 3.0, 0}).norm() < 1e-12);
    }
    SUBCASE("linearity and zero argument") {
        const CatalogEntry c = cylinder(1.0);
        const VectorOneForm sigma = torque_form(c.surface, Vec3{0.2, -0.1, 0.4});
        const FrameData f = frame_at(*c.surface, 0.4, 1.3);
        CHECK(sigma.value(f, {0, 0}).norm() == 0.0);
        const Vec2 X{0.7, -0.3}, Y{-0.2, 1.1};
        const Vec3 lhs = sigma.value(f, {X.u * 2.0 + Y.u * 3.0, X.v * 2.0 + Y.v * 3.0});
        const Vec3 rhs = sigma.value(f, X) * 2.0 + sigma.value(f, Y) * 3.0;
        CHECK((lhs - rhs).norm() < 1e-10 * std::max(1.0, lhs.norm()));
    }
    SUBCASE("minimal case: sigma(X) = x cross x_*(JX)") {
        const CatalogEntry c = catenoid(1.0);
        const VectorOneForm sigma = torque_form(c.surface);
        const FrameData f = frame_at(*c.surface, 2.0, 0.7);
        const Vec2 X{0.4, 0.9};
        const Vec3 expect = cross(f.x, f.push_forward(apply_J(f, X)));
        CHECK((sigma.value(f, X) - expect).norm() < 1e-10);
    }
}

TEST_CASE("periods of force and torque") {
    SUBCASE("catenoid waist: W = (0, 0, 2 pi)") {
        const CatalogEntry c = catenoid(1.0);
        const VectorOneForm omega = force_form(c.surface);
        const PeriodValue w = period_of_form(omega, *c.surface, c.cycle("waist"));
        CHECK((w.value - Vec3{0, 0, 2 * M_PI}).norm() < 1e-9);
    }
    SUBCASE("cylinder equator: W.e3 = pi, torque period = 0") {
        const CatalogEntry c = cylinder(1.0);
        const VectorOneForm omega = force_form(c.surface);
        const PeriodValue w = period_of_form(omega, *c.surface, c.cycle("equator"));
        CHECK(w.value.z == doctest::Approx(M_PI).epsilon(1e-9));
        CHECK(std::abs(w.value.x) < 1e-9);
        CHECK(std::abs(w.value.y) < 1e-9);
        const VectorOneForm sigma = torque_form(c.surface);
        const PeriodValue t = period_of_form(sigma, *c.surface, c.cycle("equator"));
        CHECK(t.value.norm() < 1e-9);
    }
    SUBCASE("sphere: all periods vanish (exact forms on a simply connected surface)") {
        const CatalogEntry s = sphere(2.0);
        const VectorOneForm omega = force_form(s.surface);
        const VectorOneForm sigma = torque_form(s.surface);
        const PeriodValue w = period_of_form(omega, *s.surface, s.cycle("equator"));
        const PeriodValue t = period_of_form(sigma, *s.surface, s.cycle("equator"));
        CHECK(w.value.norm() < 1e-9);
        CHECK(t.value.norm() < 1e-9);
    }
}

TEST_CASE("force periods match the conjugate-period identity on the built catenoid") {
    // omega(X) = x_*(JX) = -y_*(X) for minimal surfaces, so the force period
    // equals minus the imaginary Phi-period of the same cycle.
    const CatalogEntry cat = catenoid_annulus();
    const VectorOneForm omega = force_form(cat.surface);
    const WPhi phi = assemble_phi(cat.weierstrass->data);
    for (double r : {0.3, 0.7}) {
        const Cycle& chart_cycle = cat.cycle("puncture-" + std::to_string(r).substr(0, 3));
        const PeriodValue w = period_of_form(omega, *cat.surface, chart_cycle);
        const PeriodTriple p = period(phi, ComplexPath::circle(0.0, r),
                                      cat.weierstrass->data.punctures, 0.05);
        CHECK((w.value + p.imag_part()).norm() < 1e-8);
    }
}

TEST_CASE("homology invariance of force and torque periods on the catenoid annulus") {
    const CatalogEntry cat = catenoid_annulus();
    const VectorOneForm omega = force_form(cat.surface);
    const VectorOneForm sigma = torque_form(cat.surface);
    const PeriodValue w_in = period_of_form(omega, *cat.surface, cat.cycle("puncture-0.3"));
    const PeriodValue w_out = period_of_form(omega, *cat.surface, cat.cycle("puncture-0.7"));
    CHECK((w_in.value - w_out.value).norm() < 1e-8);
    const PeriodValue t_in = period_of_form(sigma, *cat.surface, cat.cycle("puncture-0.3"));
    const PeriodValue t_out = period_of_form(sigma, *cat.surface, cat.cycle("puncture-0.7"));
    CHECK((t_in.value - t_out.value).norm() < 1e-8);
}

TEST_CASE("closedness defect decay orders") {
    const CatalogEntry und = delaunay({0.5, 0.3});
    const std::vector<double> hs0 = {1e-1, 5e-2, 2.5e-2};

    SUBCASE("force form on the unduloid: order >= 2.7") {
        const VectorOneForm omega = force_form(und.surface);
        std::vector<double> defects;
        for (double h : hs0) {
            defects.push_back(closedness_defect(omega, *und.surface, {0.9, 1.0}, h).norm());
        }
        CHECK(fitted_decay_order(hs0, defects) >= 2.7);
    }
    SUBCASE("torque form on the nodoid: order >= 2.7") {
        const CatalogEntry nod = delaunay({0.5, -0.2});
        const VectorOneForm sigma = torque_form(nod.surface);
        std::vector<double> defects;
        for (double h : hs0) {
            defects.push_back(closedness_defect(sigma, *nod.surface, {0.9, 1.0}, h).norm());
        }
        CHECK(fitted_decay_order(hs0, defects) >= 2.7);
    }
    SUBCASE("non-closed control u dx: order about 2 with a visible constant") {
        VectorOneForm control;
        control.kind = VectorOneForm::Kind::custom;
        control.value = [](const FrameData& f, const Vec2& X) {
            return f.push_forward(X) * f.p.u;
        };
        std::vector<double> defects;
        for (double h : hs0) {
            defects.push_back(closedness_defect(control, *und.surface, {0.9, 1.0}, h).norm());
        }
        const double order = fitted_decay_order(hs0, defects);
        CHECK(order <= 2.3);
        CHECK(defects.back() > 1e-7);  // nonvanishing constant
    }
    SUBCASE("flat plane: defect at quadrature noise") {
        auto jets = [](double u, double v) {
            Jet2 j;
            j.x = Vec3{u, v, 0};
            j.xu = Vec3{1, 0, 0};
            j.xv = Vec3{0, 1, 0};
            return j;
        };
        auto plane = std::make_shared<AnalyticSurface>(
            jets, SurfaceDomain{-1, 1, -1, 1, {}, 0.0}, 0.0);
        const VectorOneForm omega = force_form(plane);
        CHECK(closedness_defect(omega, *plane, {0.0, 0.0}, 0.1).norm() < 1e-14);
    }
}

TEST_CASE("cross-section force") {
    SUBCASE("catenoid waist against e3: +-L") {
        const CatalogEntry c = catenoid(1.0);
        const CrossSectionResult res = cross_section_force(c.surface, {0, 0, 1}, c.cycle("waist"));
        CHECK(std::abs(std::abs(res.value) - 2 * M_PI) < 1e-9);
        CHECK(res.length == doctest::Approx(2 * M_PI).epsilon(1e-10));
        // consistency with the direct omega period
        const VectorOneForm omega = force_form(c.surface);
        const PeriodValue w = period_of_form(omega, *c.surface, c.cycle("waist"));
        CHECK(std::abs(res.value - w.value.z) < 1e-8);
    }
    SUBCASE("cylinder equator: pi") {
        const CatalogEntry c = cylinder(1.0);
        const CrossSectionResult res =
            cross_section_force(c.surface, {0, 0, 1}, c.cycle("equator"));
        CHECK(res.value == doctest::Approx(M_PI).epsilon(1e-9));
        const VectorOneForm omega = force_form(c.surface);
        const PeriodValue w = period_of_form(omega, *c.surface, c.cycle("equator"));
        CHECK(std::abs(res.value - w.value.z) < 1e-8);
    }
    SUBCASE("unduloid neck: agrees with the omega period component") {
        const CatalogEntry und = delaunay({0.5, 0.3});
        const CrossSectionResult res =
            cross_section_force(und.surface, {0, 0, 1}, und.cycle("neck"));
        const VectorOneForm omega = force_form(und.surface);
        const PeriodValue w = period_of_form(omega, *und.surface, und.cycle("neck"));
        CHECK(std::abs(res.value - w.value.z) < 1e-8);
    }
    SUBCASE("non-planar cycle refuses") {
        const CatalogEntry c = catenoid(1.0);
        Cycle tilted = Cycle::chart_circle({M_PI, 0.0}, 0.4, 1, "tilted");
        CHECK_THROWS_AS(cross_section_force(c.surface, {0, 0, 1}, tilted),
                        PreconditionViolation);
    }
    SUBCASE("transversality failure names the problem") {
        // Flat plane: every cycle is planar but the conormal never leaves the
        // plane, so <x_*(J gamma'), e3> = 0 along the whole curve.
        auto jets = [](double u, double v) {
            Jet2 j;
            j.x = Vec3{u, v, 0};
            j.xu = Vec3{1, 0, 0};
            j.xv = Vec3{0, 1, 0};
            return j;
        };
        auto plane = std::make_shared<AnalyticSurface>(
            jets, SurfaceDomain{-2, 2, -2, 2, {}, 0.0}, 0.0);
        const Cycle circle = Cycle::chart_circle({0, 0}, 1.0, 1, "flat-loop");
        try {
            cross_section_force(plane, {0, 0, 1}, circle);
            FAIL("expected a transversality error");
        } catch (const PreconditionViolation& err) {
            CHECK(std::string(err.what()).find("transversality") != std::string::npos);
        }
    }
}

TEST_CASE("reversing a cycle negates its periods") {
    const CatalogEntry c = cylinder(1.0);
    const VectorOneForm omega = force_form(c.surface);
    const Cycle& fwd = c.cycle("equator");
    const Cycle rev = fwd.reversed();
    const PeriodValue wf = period_of_form(omega, *c.surface, fwd);
    const PeriodValue wr = period_of_form(omega, *c.surface, rev);
    CHECK((wf.value + wr.value).norm() < 1e-10);
}

TEST_CASE("smallest enclosing circle") {
    SUBCASE("points on a unit circle") {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 100; ++i) {
            const double a = 2 * M_PI * i / 100.0;
            pts.push_back({std::cos(a), std::sin(a)});
        }
        const Circle2 c = smallest_enclosing_circle(pts);
        CHECK(c.r == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(std::abs(c.cx) < 1e-9);
        CHECK(std::abs(c.cy) < 1e-9);
    }
    SUBCASE("two points") {
        const Circle2 c = smallest_enclosing_circle({{0, 0}, {2, 0}});
        CHECK(c.r == doctest::Approx(1.0));
        CHECK(c.cx == doctest::Approx(1.0));
    }
    SUBCASE("random points are all enclosed") {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 60; ++i) pts.push_back({uniform(-3, 3), uniform(-2, 2)});
        const Circle2 c = smallest_enclosing_circle(pts);
        for (const auto& p : pts) {
            CHECK(std::hypot(p.first - c.cx, p.second - c.cy) <= c.r + 1e-9);
        }
    }
}

TEST_CASE("mirror-plane criterion") {
    SUBCASE("cylinder: value pi, radius 1 < 2, verdict fires") {
        const CatalogEntry c = cylinder(1.0);
        const AlexandrovResult res =
            alexandrov_criterion(c.surface, {0, 0, 1}, c.cycle("equator"));
        CHECK(res.value == doctest::Approx(M_PI).epsilon(1e-9));
        CHECK(res.enclosing_radius == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(res.disk_bound == doctest::Approx(2.0));
        CHECK(res.finite_family);
    }
    SUBCASE("minimal surfaces refuse (H = 0)") {
        const CatalogEntry cat = catenoid(1.0);
        CHECK_THROWS_AS(alexandrov_criterion(cat.surface, {0, 0, 1}, cat.cycle("waist")),
                        PreconditionViolation);
    }
    SUBCASE("synthetic: radius 3 exceeds the disk bound, criterion silent") {
        std::vector<std::pair<double, double>> pts;
        for (int i = 0; i < 64; ++i) {
            const double a = 2 * M_PI * i / 64.0;
            pts.push_back({3 * std::cos(a), 3 * std::sin(a)});
        }
        const Circle2 c = smallest_enclosing_circle(pts);
        const double H = 0.5;
        CHECK_FALSE(c.r < 1.0 / H);
    }
}

TEST_CASE("family identity residuals on the catenoid associate family") {
    const CatalogEntry c = catenoid(1.0);
    const SurfacePtr x = c.surface;
    const SurfacePtr y = c.conjugate;
    auto family = [&](double t) { return associate_minimal(x, y, t); };

    std::vector<Vec2> samples;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            samples.push_back({0.4 + 1.6 * i, -0.9 + 0.6 * j});
        }
    }
    const FamilyIdentityResiduals res = exactness_residuals(family, 0.5, 1e-4, samples);
    CHECK(res.differential_identity < 1e-6);
    CHECK(res.normal_identity < 1e-6);
    CHECK(res.second_order_identity < 1e-5);
}
