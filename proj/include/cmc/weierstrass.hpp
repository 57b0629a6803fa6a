#pragma once

#include <memory>
#include <string>
#include <vector>

#include "cmc/quadrature.hpp"
#include "cmc/rational.hpp"
#include "cmc/surface.hpp"

namespace cmc {

// Weierstrass data (g, dh) restricted to rational functions on the punctured
// plane; dh is stored as its density f with dh = f dz.
struct WeierstrassData {
    RationalFn gauss_projection;         // g
    RationalFn height_density;           // f, dh = f dz
    std::vector<complex> punctures;      // removed points; must cover all poles of Phi
    double clearance = 1e-3;             // cycles must keep this distance from punctures
};

// The null curve Phi = ((1/g - g) dh/2, i (1/g + g) dh/2, dh), as densities.
struct WPhi {
    RationalFn phi1, phi2, phi3;
    RationalFn dphi1, dphi2, dphi3;      // z-derivatives of the densities

    CVec3 eval(complex z) const {
        return {phi1.eval(z), phi2.eval(z), phi3.eval(z)};
    }
    CVec3 eval_derivative(complex z) const {
        return {dphi1.eval(z), dphi2.eval(z), dphi3.eval(z)};
    }
};

// Builds Phi and verifies the null identity Phi1^2 + Phi2^2 + Phi3^2 = 0 at
// 20 seeded sample points (relative tolerance 1e-10).
WPhi assemble_phi(const WeierstrassData& data);

struct NamedComplexCycle {
    std::string label;
    ComplexPath path;
};

// Closed-loop periods of Phi, computed by quadrature and independently by the
// residue oracle (2 pi i times the winding-weighted residues at enclosed poles).
// A discrepancy beyond 1e-8 fails the run.
struct PeriodTriple {
    CVec3 quadrature;
    CVec3 residue;
    double discrepancy = 0;
    double quad_error = 0;

    Vec3 real_part() const { return quadrature.real(); }
    Vec3 imag_part() const { return quadrature.imag(); }
};

PeriodTriple period(const WPhi& phi, const ComplexPath& cycle,
                    const std::vector<complex>& punctures, double clearance = 1e-3,
                    const Tolerances& tol = {});

struct Verdict {
    bool ok = true;
    std::string witness;       // offending cycle label, empty when ok
    double max_violation = 0;  // largest offending period component
};

// Re-period obstruction to the immersion being single-valued.
Verdict well_defined(const WeierstrassData& data, const std::vector<NamedComplexCycle>& generators,
                     double threshold = 1e-8, const Tolerances& tol = {});
// Im-period obstruction to the isometric (associate) deformation.
Verdict deformable(const WeierstrassData& data, const std::vector<NamedComplexCycle>& generators,
                   double threshold = 1e-8, const Tolerances& tol = {});

// Points where the conformal metric density (|g| + |g|^-1)^2 |dh|^2 / 4
// degenerates: order > 0 means it vanishes (branch point), order < 0 means it
// blows up (end). Declared punctures are exempt.
struct BranchPoint {
    complex location;
    int metric_order;
};
std::vector<BranchPoint> regularity_check(const WeierstrassData& data);

// Conformal chart w = u + iv -> z used to lay a rectangle over (part of) the
// punctured plane.
struct Chart {
    std::function<complex(complex)> to_z;
    std::function<complex(complex)> dz;
    std::function<complex(complex)> d2z;

    static Chart identity();
    // z = center + exp(w); v-lines are concentric circles about center.
    static Chart annulus(complex center);
};

// Everything needed to realize x = Re int Phi as a chart immersion.
struct ImmersionSpec {
    WeierstrassData data;
    complex basepoint;                         // z0, maps to x = 0
    Chart chart;
    SurfaceDomain domain;                      // in w = (u, v)
    std::vector<NamedComplexCycle> generators; // homology generators in the z plane
};

// x = Re int Phi; requires well_defined over the given generators.
SurfacePtr build_immersion(const ImmersionSpec& spec, const Tolerances& tol = {});
// y = Im int Phi; requires deformable (so that y is single-valued too).
SurfacePtr conjugate_immersion(const ImmersionSpec& spec, const Tolerances& tol = {});
// x_t = Re int e^{-it} Phi. t = 0 gives x, t = pi/2 the conjugate. For t not a
// multiple of pi this requires deformable.
SurfacePtr associate_member(const ImmersionSpec& spec, double t, const Tolerances& tol = {});

// Hands out associate members x_t that share one primitive-integral cache,
// with the period verdicts computed once.
class ImmersionFamily {
public:
    explicit ImmersionFamily(ImmersionSpec spec, const Tolerances& tol = {});
    SurfacePtr member(double t) const;  // t != 0 mod pi requires the deformable verdict
    SurfacePtr base() const { return member(0.0); }
    const Verdict& well_defined_verdict() const;
    const Verdict& deformable_verdict() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
};

// cos(t) x + sin(t) y for a conjugate pair sharing one conformal chart.
SurfacePtr associate_minimal(SurfacePtr x, SurfacePtr y, double t);
// x_t = (sin(s - t) x + sin(t) x_s) / sin(s); requires sin(s) != 0.
SurfacePtr reconstruct_family(SurfacePtr x, SurfacePtr x_s, double s, double t);

}  // namespace cmc
