#pragma once

#include <functional>
#include <vector>

#include "cmc/surface.hpp"

namespace cmc {

// A_t = cos(t)(A - HI) + sin(t) J(A - HI) + HI in an orthonormal positive
// frame, where J is the 90-degree rotation. Trace and determinant are
// t-invariants: tr A_t = 2H, det A_t = det A.
Mat2 associate_tensor(const Mat2& A, double H, double t);

struct TensorInvariantReport {
    double max_trace_deviation = 0;  // |tr A_t - 2H|
    double max_det_deviation = 0;    // |det A_t - det A|
};
TensorInvariantReport gauss_codazzi_invariants(const Mat2& A, double H,
                                               const std::vector<double>& ts);

// Pointwise state of an isometric deformation, extracted from the t-derivative
// of the differential: Xx' = k x_*(JX) - <X, Z> xi.
struct DeformationState {
    double k = 0;
    Vec2 Z{};            // coordinate components
    Vec3 drehriss{};     // x_*(JZ) + k xi
    Vec3 v_field{};      // x_*(JZ) + (k+1) xi + H x; vanishes for the
                         // normalized associate deformation
};

DeformationState extract_deformation_state(const ParametricSurface& before,
                                           const ParametricSurface& at,
                                           const ParametricSurface& after, double dt, Vec2 p);

DeformationState minimal_family_deformation_state(const std::function<SurfacePtr(double)>& family,
                                                  double t, double dt, Vec2 p);

// Christoffel symbols of the induced metric from central differences,
// gamma[k][i][j] = Gamma^k_{ij}; truncation error O(h^2).
struct ChristoffelSymbols {
    double gamma[2][2][2] = {};
};
ChristoffelSymbols christoffel(const ParametricSurface& surface, Vec2 p, double h);

// Residuals of the deformation integrability identities over sample points:
//   shape_rate:    A' + k J A + nabla Z
//   k_gradient:    grad k + A J Z
//   rotation_rate: nabla(JZ) - (k+1) A + H I   (associate-type families only)
// Refuses when the family is not isometric (metric drift beyond 1e-8).
struct IntegrabilityReport {
    double shape_rate = 0;
    double k_gradient = 0;
    double rotation_rate = 0;
    double metric_drift = 0;
    double max_abs_k = 0;
    double max_z_norm = 0;
    double max_shape_rate_norm = 0;  // |A'| itself, for rigid-family checks
};

IntegrabilityReport integrability_residuals(const std::function<SurfacePtr(double)>& family,
                                            double t, double dt, const std::vector<Vec2>& samples,
                                            double fd_h);

}  // namespace cmc
