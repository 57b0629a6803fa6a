#include <cmath>

#include "cmc/associate.hpp"
#include "cmc/catalog.hpp"
#include "cmc/weierstrass.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cmc;
using cmc::test::uniform;

namespace {

Mat2 random_symmetric() {
    const double a = uniform(-2, 2), b = uniform(-2, 2), d = uniform(-2, 2);
    return {a, b, b, d};
}

}  // namespace

TEST_CASE("associate tensor special values") {
    SUBCASE("t = 0 is the identity map") {
        for (int i = 0; i < 20; ++i) {
            const Mat2 A = random_symmetric();
            const Mat2 at = associate_tensor(A, 0.5 * A.trace(), 0.0);
            CHECK((at - A).max_abs() < 1e-15);
        }
    }
    SUBCASE("A = diag(2, 0), H = 1, t = pi negates the traceless part") {
        const Mat2 at = associate_tensor({2, 0, 0, 0}, 1.0, M_PI);
        CHECK((at - Mat2{0, 0, 0, 2}).max_abs() < 1e-12);
    }
    SUBCASE("A = diag(2, 0), H = 1, t = pi/2 rotates it") {
        const Mat2 at = associate_tensor({2, 0, 0, 0}, 1.0, M_PI / 2);
        CHECK((at - Mat2{1, 1, 1, 1}).max_abs() < 1e-12);
        CHECK(at.trace() == doctest::Approx(2.0));
        CHECK(at.det() == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("umbilic A = H I is fixed for every t") {
        for (double t = 0; t < 6.3; t += 0.43) {
            const Mat2 at = associate_tensor({0.7, 0, 0, 0.7}, 0.7, t);
            CHECK((at - Mat2{0.7, 0, 0, 0.7}).max_abs() < 1e-15);
        }
    }
}

TEST_CASE("trace and determinant invariants over random tensors") {
    std::vector<double> ts;
    for (int i = 0; i < 32; ++i) ts.push_back(2 * M_PI * i / 32.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const Mat2 A = random_symmetric();
        const double H = 0.5 * A.trace();
        const TensorInvariantReport rep = gauss_codazzi_invariants(A, H, ts);
        CHECK(rep.max_trace_deviation < 1e-12);
        CHECK(rep.max_det_deviation < 1e-12);
    }
}

TEST_CASE("rotation composition: t1 then t2 equals t1 + t2 on the traceless part") {
    for (int i = 0; i < 50; ++i) {
        const Mat2 A = random_symmetric();
        const double H = uniform(-1, 1);
        const double t1 = uniform(0, 2 * M_PI), t2 = uniform(0, 2 * M_PI);
        const Mat2 step = associate_tensor(associate_tensor(A, H, t1), H, t2);
        const Mat2 direct = associate_tensor(A, H, t1 + t2);
        CHECK((step - direct).max_abs() < 1e-12);
    }
}

TEST_CASE("hopf coefficient rotates as e^{-it} along the catenoid family") {
    const CatalogEntry c = catenoid(1.0);
    const complex w0 = hopf_coefficient(*c.surface, 1.0, 0.3);
    for (const double t : {0.3, M_PI / 6, M_PI / 2, 2.5}) {
        const SurfacePtr xt = associate_minimal(c.surface, c.conjugate, t);
        const complex wt = hopf_coefficient(*xt, 1.0, 0.3);
        CHECK(std::abs(wt - std::exp(complex(0, -t)) * w0) < 1e-8);
    }
}

TEST_CASE("deformation state of the catenoid associate family: k = -1, Z = 0") {
    const CatalogEntry c = catenoid(1.0);
    auto family = [&](double t) { return associate_minimal(c.surface, c.conjugate, t); };
    for (const double t : {0.0, 0.7, M_PI / 2}) {
        for (int i = 0; i < 6; ++i) {
            const Vec2 p{uniform(0.3, 6.0), uniform(-1.0, 1.0)};
            const DeformationState st = minimal_family_deformation_state(family, t, 1e-4, p);
            CHECK(std::abs(st.k + 1.0) < 1e-6);
            CHECK(st.Z.norm() < 1e-6);
            CHECK(st.v_field.norm() < 1e-6);
            // Drehriss of the minimal family is -xi.
            const FrameData f = frame_at(*family(t), p.u, p.v);
            CHECK((st.drehriss + f.normal).norm() < 1e-6);
        }
    }
}

TEST_CASE("christoffel symbols of the catenoid metric") {
    // e^{2 rho} = cosh^2(v): Gamma^u_{uv} = rho_v = tanh(v), Gamma^v_{uu} = -tanh(v),
    // Gamma^v_{vv} = tanh(v), others zero (isothermal, u-independent).
    const CatalogEntry c = catenoid(1.0);
    const double v = 0.6, th = std::tanh(v);
    const ChristoffelSymbols chr = christoffel(*c.surface, {1.0, v}, 1e-4);
    CHECK(chr.gamma[0][0][1] == doctest::Approx(th).epsilon(1e-6));
    CHECK(chr.gamma[0][1][0] == doctest::Approx(th).epsilon(1e-6));
    CHECK(chr.gamma[1][0][0] == doctest::Approx(-th).epsilon(1e-6));
    CHECK(chr.gamma[1][1][1] == doctest::Approx(th).epsilon(1e-6));
    CHECK(std::abs(chr.gamma[0][0][0]) < 1e-6);
    CHECK(std::abs(chr.gamma[1][0][1]) < 1e-6);
}

TEST_CASE("integrability residuals") {
    const CatalogEntry c = catenoid(1.0);
    std::vector<Vec2> samples;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) samples.push_back({1.0 + 1.5 * i, -0.6 + 0.5 * j});
    }

    SUBCASE("minimal associate family satisfies all three identities") {
        auto family = [&](double t) { return associate_minimal(c.surface, c.conjugate, t); };
        const IntegrabilityReport rep = integrability_residuals(family, 0.4, 1e-4, samples, 1e-4);
        CHECK(rep.metric_drift < 1e-10);
        CHECK(rep.shape_rate < 1e-5);
        CHECK(rep.k_gradient < 1e-5);
        CHECK(rep.rotation_rate < 1e-5);
        CHECK(std::abs(rep.max_abs_k - 1.0) < 1e-6);
        CHECK(rep.max_z_norm < 1e-6);
    }

    SUBCASE("translation control family: A' = 0, k = 0, Z = 0") {
        const Vec3 dir{0.3, -0.2, 0.5};
        auto family = [&](double t) {
            auto jets = [surface = c.surface, dir, t](double u, double v) {
                Jet2 j = surface->jet(u, v);
                j.x += dir * t;
                return j;
            };
            return std::static_pointer_cast<const ParametricSurface>(
                std::make_shared<AnalyticSurface>(jets, c.surface->domain(), 0.0));
        };
        const IntegrabilityReport rep = integrability_residuals(family, 0.2, 1e-4, samples, 1e-4);
        CHECK(rep.metric_drift < 1e-12);
        CHECK(rep.max_shape_rate_norm < 1e-8);
        CHECK(rep.max_abs_k < 1e-8);
        CHECK(rep.max_z_norm < 1e-8);
        CHECK(rep.shape_rate < 1e-8);
        CHECK(rep.k_gradient < 1e-8);
    }

    SUBCASE("flat cylinder unrolling family: isometric but the rotation-rate identity fails") {
        // x_t = (R sin(v/R), R (1 - cos(v/R)), u) with R = 1 + t: flat and
        // isometric for every t, mean curvature 1/(2R) varies with t.
        auto family = [](double t) {
            const double R = 1.0 + t;
            auto jets = [R](double u, double v) {
                Jet2 j;
                const double cv = std::cos(v / R), sv = std::sin(v / R);
                j.x = Vec3{R * sv, R * (1 - cv), u};
                j.xu = Vec3{0, 0, 1};
                j.xv = Vec3{cv, sv, 0};
                j.xuu = Vec3{0, 0, 0};
                j.xuv = Vec3{0, 0, 0};
                j.xvv = Vec3{-sv / R, cv / R, 0};
                return j;
            };
            return std::static_pointer_cast<const ParametricSurface>(
                std::make_shared<AnalyticSurface>(
                    jets, SurfaceDomain{-1.5, 1.5, 0.0, 2.0, {}, 0.0}));
        };
        std::vector<Vec2> flat_samples;
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) flat_samples.push_back({-0.5 + 0.5 * i, 0.5 + 0.4 * j});
        }
        const IntegrabilityReport rep =
            integrability_residuals(family, 0.0, 1e-4, flat_samples, 1e-4);
        CHECK(rep.metric_drift < 1e-10);
        CHECK(rep.rotation_rate > 1e-3);  // violated: not an associate-type deformation
    }

    SUBCASE("non-isometric family refuses") {
        auto family = [&](double t) {
            auto jets = [surface = c.surface, t](double u, double v) {
                Jet2 j = surface->jet(u, v);
                const double s = 1.0 + t;
                j.x *= s;
                j.xu *= s;
                j.xv *= s;
                j.xuu *= s;
                j.xuv *= s;
                j.xvv *= s;
                return j;
            };
            return std::static_pointer_cast<const ParametricSurface>(
                std::make_shared<AnalyticSurface>(jets, c.surface->domain(), 0.0));
        };
        CHECK_THROWS_AS(integrability_residuals(family, 0.1, 1e-4, samples, 1e-4),
                        PreconditionViolation);
    }
}
