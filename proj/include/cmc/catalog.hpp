#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmc/forms.hpp"
#include "cmc/surface.hpp"
#include "cmc/weierstrass.hpp"

namespace cmc {

// A reference surface with its ground truth: declared curvature, distinguished
// cycles, mesh closure flags, and (when built from Weierstrass data) the data
// itself with its homology generators.
struct CatalogEntry {
    std::string name;
    SurfacePtr surface;
    std::optional<double> H;
    std::vector<Cycle> cycles;
    SurfacePtr conjugate;  // analytic conjugate when one is carried
    bool wrap_u = false, wrap_v = false, cap_v0 = false, cap_v1 = false;
    std::optional<ImmersionSpec> weierstrass;
    std::string description;

    const Cycle& cycle(const std::string& label) const;
};

CatalogEntry catenoid(double neck_radius = 1.0);
CatalogEntry helicoid(double scale = 1.0);
CatalogEntry enneper();
CatalogEntry sphere(double radius = 1.0);
CatalogEntry cylinder(double radius = 1.0);
// Non-CMC control: paraboloid of revolution z = rho^2 in its isothermal chart.
CatalogEntry paraboloid();

// The catenoid realized from its Weierstrass data g = z, dh = dz/z on an
// annulus about the puncture at 0.
CatalogEntry catenoid_annulus(const Tolerances& tol = {});

struct DelaunayParams {
    double H = 0.5;  // must be > 0 (mirror the surface for the other sign)
    double a = 0.3;  // conserved quantity F = r sin(psi) - H r^2
};

enum class DelaunayBranch { unduloid, nodoid, cylinder };
DelaunayBranch delaunay_branch(const DelaunayParams& params);

// Surface of revolution integrated from the unit-speed profile system
//   r' = cos(psi), z' = sin(psi), psi' = 2H - sin(psi)/r,
// chart (u, v) = (profile arclength, rotation angle).
CatalogEntry delaunay(const DelaunayParams& params, int periods = 1, const Tolerances& tol = {});

// Same surface in its isothermal chart (u = int ds / r).
SurfacePtr delaunay_isothermal(const DelaunayParams& params, const Tolerances& tol = {});

// Profile arclength of one period and the conserved-quantity drift across it.
struct DelaunayProfileInfo {
    double period = 0;
    double conserved_drift = 0;
    double neck_radius = 0;
    double bulge_radius = 0;
};
DelaunayProfileInfo delaunay_profile_info(const DelaunayParams& params,
                                          const Tolerances& tol = {});

// Punctured-plane minimal family g = prod (z - p_i)^{2k}, dh = dz. The entry's
// chart is an annulus that avoids all punctures (enclosing them all when
// n > 1); puncture_cycles are the circles about each puncture in the z plane.
struct PuncturedPlaneFamily {
    WeierstrassData data;
    std::vector<NamedComplexCycle> puncture_cycles;
    CatalogEntry entry;
};
PuncturedPlaneFamily punctured_plane_family(const std::vector<complex>& punctures, int k,
                                            const Tolerances& tol = {});

std::vector<std::string> catalog_names();
// Lookup by "name" or "name:arg1,arg2"; e.g. "cylinder:2", "unduloid:0.5,0.3",
// "s5:2,1".
CatalogEntry catalog_lookup(const std::string& spec, const Tolerances& tol = {});

}  // namespace cmc
