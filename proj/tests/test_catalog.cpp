#include <cmath>
#include <sstream>

#include "cmc/catalog.hpp"
#include "cmc/forms.hpp"
#include "cmc/mesh.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace cmc;
using cmc::test::uniform;

TEST_CASE("catalog entries pass frame, Gauss-equation, and declared-H checks") {
    for (const std::string& name :
         {"catenoid", "helicoid", "enneper", "sphere", "cylinder", "unduloid", "nodoid"}) {
        CAPTURE(name);
        const CatalogEntry e = catalog_lookup(name);
        const SurfaceDomain& d = e.surface->domain();
        REQUIRE(e.H.has_value());
        double max_h_dev = 0, max_gauss_dev = 0;
        for (int i = 0; i < 20; ++i) {
            for (int j = 0; j < 20; ++j) {
                const double u = d.u0 + (d.u1 - d.u0) * (0.02 + 0.96 * i / 19.0);
                const double v = d.v0 + (d.v1 - d.v0) * (0.02 + 0.96 * j / 19.0);
                const FrameData f = frame_at(*e.surface, u, v);
                max_h_dev = std::max(max_h_dev, std::abs(f.H - *e.H));
                max_gauss_dev = std::max(max_gauss_dev, std::abs(f.shape.det() - f.K));
            }
        }
        CHECK(max_h_dev < 1e-6);
        CHECK(max_gauss_dev < 1e-12);
    }
}

TEST_CASE("cylinder(1) has computed H = 1/2; sphere-limit conventions") {
    const CatalogEntry cyl = cylinder(1.0);
    CHECK(frame_at(*cyl.surface, 0.2, 0.8).H == doctest::Approx(0.5).epsilon(1e-12));
    const CatalogEntry sph = sphere(2.0);
    CHECK(frame_at(*sph.surface, 0.2, 0.8).H == doctest::Approx(-0.5).epsilon(1e-9));
}

TEST_CASE("enneper: umbilic free with constant Hopf modulus") {
    const CatalogEntry e = enneper();
    for (int i = 0; i < 5; ++i) {
        const double u = uniform(-0.8, 0.8), v = uniform(-0.8, 0.8);
        const complex w = hopf_coefficient(*e.surface, u, v);
        CHECK(std::abs(w) == doctest::Approx(0.5).epsilon(1e-9));
        const FrameData f = frame_at(*e.surface, u, v);
        CHECK(f.H * f.H - f.K > 1e-3);  // no umbilics
    }
}

TEST_CASE("delaunay branch classification") {
    CHECK(delaunay_branch({0.5, 0.3}) == DelaunayBranch::unduloid);
    CHECK(delaunay_branch({0.5, -0.2}) == DelaunayBranch::nodoid);
    CHECK(delaunay_branch({0.5, 0.5}) == DelaunayBranch::cylinder);
    CHECK_THROWS_AS(delaunay_branch({0.5, 0.7}), PreconditionViolation);
    CHECK_THROWS_AS(delaunay_branch({-0.5, 0.1}), PreconditionViolation);
}

TEST_CASE("delaunay profile: conserved quantity and pointwise H") {
    for (const DelaunayParams params : {DelaunayParams{0.5, 0.3}, DelaunayParams{0.5, -0.2},
                                        DelaunayParams{1.0, 0.1}}) {
        CAPTURE(params.H);
        CAPTURE(params.a);
        const DelaunayProfileInfo info = delaunay_profile_info(params);
        CHECK(info.conserved_drift <= 1e-8);
        CHECK(info.period > 0);

        const CatalogEntry e = delaunay(params);
        const SurfaceDomain& d = e.surface->domain();
        for (int i = 0; i < 15; ++i) {
            const double u = d.u0 + (d.u1 - d.u0) * uniform(0.0, 1.0);
            const double v = uniform(0.0, 2 * M_PI);
            const FrameData f = frame_at(*e.surface, u, v);
            CHECK(std::abs(f.H - params.H) < 1e-6);
        }
    }
}

TEST_CASE("delaunay cylinder limit is the constant profile") {
    const CatalogEntry e = delaunay({0.5, 0.5});  // a = 1/(4H): fixed point, r0 = 1
    const SurfaceDomain& d = e.surface->domain();
    for (double u : {d.u0 + 0.1, 0.5 * (d.u0 + d.u1), d.u1 - 0.1}) {
        const FrameData f = frame_at(*e.surface, u, 1.0);
        CHECK(std::hypot(f.x.x, f.x.y) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(f.H == doctest::Approx(0.5).epsilon(1e-10));
    }
}

TEST_CASE("sphere-chain profile closed form satisfies the flow") {
    // r = R sin(s/R), z = -R cos(s/R), psi = s/R solves r' = cos psi,
    // z' = sin psi, psi' = 2H - sin(psi)/r with H = 1/R.
    const double R = 2.0;
    for (double s : {0.3, 0.9, 2.2}) {
        const double r = R * std::sin(s / R), psi = s / R;
        CHECK(std::cos(psi) == doctest::Approx(R * std::cos(s / R) / R));  // r' = cos psi
        const double psi_dot_expected = 2.0 / R - std::sin(psi) / r;
        CHECK(psi_dot_expected == doctest::Approx(1.0 / R).epsilon(1e-12));
    }
}

TEST_CASE("sphere-chain degeneration reports a singularity") {
    CHECK_THROWS_AS(delaunay({0.5, 0.0}), OdeSingularity);
}

TEST_CASE("unduloid embeddedness vs nodoid winding") {
    // Unduloid: psi stays in (0, pi) so the height is strictly monotone.
    const CatalogEntry und = delaunay({0.5, 0.3});
    const SurfaceDomain& d = und.surface->domain();
    double z_prev = -1e9;
    bool monotone = true;
    for (int i = 0; i <= 50; ++i) {
        const double u = d.u0 + (d.u1 - d.u0) * i / 50.0;
        const double z = und.surface->position(u, 0.0).z;
        if (z <= z_prev) monotone = false;
        z_prev = z;
    }
    CHECK(monotone);

    // Nodoid: the profile doubles back (height not monotone).
    const CatalogEntry nod = delaunay({0.5, -0.2});
    const SurfaceDomain& dn = nod.surface->domain();
    z_prev = -1e9;
    monotone = true;
    for (int i = 0; i <= 50; ++i) {
        const double u = dn.u0 + (dn.u1 - dn.u0) * i / 50.0;
        const double z = nod.surface->position(u, 0.0).z;
        if (z <= z_prev) monotone = false;
        z_prev = z;
    }
    CHECK_FALSE(monotone);
}

TEST_CASE("unduloid neck force is a genuine obstruction") {
    const CatalogEntry und = delaunay({0.5, 0.3});
    const VectorOneForm omega = force_form(und.surface);
    const PeriodValue w = period_of_form(omega, *und.surface, und.cycle("neck"));
    CHECK(w.value.norm() > 0.1);
}

TEST_CASE("catenoid(1) waist force magnitude ties the catalog to the forms layer") {
    const CatalogEntry c = catenoid(1.0);
    const VectorOneForm omega = force_form(c.surface);
    const PeriodValue w = period_of_form(omega, *c.surface, c.cycle("waist"));
    CHECK(std::abs(w.value.norm() - 2 * M_PI) < 1e-6);
}

TEST_CASE("unduloid hopf modulus is constant in the isothermal chart") {
    const SurfacePtr iso = delaunay_isothermal({0.5, 0.3});
    const SurfaceDomain& d = iso->domain();
    std::vector<complex> values;
    for (int i = 0; i < 10; ++i) {
        const double u = d.u0 + (d.u1 - d.u0) * (0.05 + 0.9 * i / 9.0);
        const double v = uniform(0.0, 2 * M_PI);
        values.push_back(hopf_coefficient(*iso, u, v));
    }
    for (const complex& w : values) {
        CHECK(std::abs(std::abs(w) - std::abs(values[0])) < 1e-6);
    }
}

TEST_CASE("punctured-plane family: periods and deformability") {
    SUBCASE("single puncture, k = 1: all periods vanish") {
        const PuncturedPlaneFamily fam = punctured_plane_family({complex(0.0)}, 1);
        const WPhi phi = assemble_phi(fam.data);
        const PeriodTriple p =
            period(phi, fam.puncture_cycles[0].path, fam.data.punctures, fam.data.clearance);
        CHECK(p.quadrature.norm() < 1e-10);
        CHECK(p.residue.norm() == 0.0);
        CHECK(deformable(fam.data, fam.puncture_cycles).ok);
    }
    SUBCASE("k = 2 single puncture also vanishes") {
        const PuncturedPlaneFamily fam = punctured_plane_family({complex(0.0)}, 2);
        CHECK(well_defined(fam.data, fam.puncture_cycles).ok);
        CHECK(deformable(fam.data, fam.puncture_cycles).ok);
    }
    SUBCASE("two punctures: entry lives on the outer annulus and builds") {
        const PuncturedPlaneFamily fam = punctured_plane_family({complex(1.0), complex(-1.0)}, 1);
        REQUIRE(fam.entry.weierstrass.has_value());
        CHECK(well_defined(fam.data, fam.entry.weierstrass->generators).ok);
        const FrameData f = frame_at(*fam.entry.surface, fam.entry.weierstrass->domain.center().u,
                                     1.0);
        CHECK(std::abs(f.H) < 1e-6);
    }
}

TEST_CASE("mesh sampling") {
    SUBCASE("catenoid 64x32 grid: 2048 vertices, wrapped seam") {
        const CatalogEntry c = catenoid(1.0);
        const ObjMesh mesh = sample_mesh(c, 64, 32);
        CHECK(mesh.grid_vertex_count == 2048);
        CHECK(mesh.vertices.size() == 2048);
        CHECK(mesh.faces.size() == 2 * 64 * 31);
        CHECK_FALSE(mesh.watertight);  // open top and bottom
        std::ostringstream os;
        write_obj(mesh, os);
        const std::string obj = os.str();
        CHECK(obj.find("v ") != std::string::npos);
        CHECK(obj.find("f ") != std::string::npos);
    }
    SUBCASE("sphere mesh is watertight after capping") {
        const CatalogEntry s = sphere(1.0);
        const ObjMesh mesh = sample_mesh(s, 32, 16);
        CHECK(mesh.watertight);
    }
    SUBCASE("associate members have matching metric edge lengths") {
        const CatalogEntry c = catenoid(1.0);
        const SurfacePtr xt = associate_minimal(c.surface, c.conjugate, M_PI / 2);
        SurfaceDomain window{0.3, 5.9, -1.0, 1.0, {}, 0.0};
        const auto base = metric_edge_lengths(*c.surface, window, 16, 12);
        const auto rotated = metric_edge_lengths(*xt, window, 16, 12);
        REQUIRE(base.size() == rotated.size());
        double max_rel = 0;
        for (size_t i = 0; i < base.size(); ++i) {
            max_rel = std::max(max_rel, std::abs(base[i] - rotated[i]) / base[i]);
        }
        CHECK(max_rel < 1e-6);
    }
}

TEST_CASE("catalog lookup parses arguments") {
    CHECK(catalog_lookup("cylinder:2").H == doctest::Approx(0.25));
    CHECK(catalog_lookup("unduloid:0.5,0.3").name == "unduloid");
    CHECK(catalog_lookup("s5:1,1").name == "s5-n1-k1");
    CHECK_THROWS_AS(catalog_lookup("nonexistent"), PreconditionViolation);
}
