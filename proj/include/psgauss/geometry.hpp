#pragma once

#include <array>
#include <vector>

#include "psgauss/gram_schmidt.hpp"
#include "psgauss/vec.hpp"

namespace psgauss {

/// First fundamental form of a chart, as jets valid to order 2.
struct MetricSample {
    Jet g11, g12, g22;
    Jet det;
    int surface_index = 0;  // 0 when det > 0 at the base point, 1 when < 0
};

/// Orthonormal moving frame along the surface at one chart point:
/// jet-valued tangent pair e1, e2 (spacelike first on Lorentzian
/// surfaces), the in-sphere normals e3..em, and the position x as the
/// final ambient normal direction.
struct Frame {
    MetricSample metric;
    JetVector position;                     // x
    std::array<JetVector, 2> tangent;       // e1, e2
    std::array<double, 2> eps;              // <e_i, e_i>
    std::array<std::array<Jet, 2>, 2> coeff;  // e_i = coeff[i][0] du + coeff[i][1] dv
    bool null_fallback = false;             // chart was null-seeded
    std::vector<JetVector> normals;         // e3..em
    std::vector<double> normal_eps;
};

/// Everything the classification needs at one point: second fundamental
/// form (frame and coordinate basis), mean curvature, shape operators,
/// curvature quantities, and the residuals of the structure equations.
struct GeometrySample {
    std::array<std::array<JetVector, 2>, 2> h;  // h(e_i, e_j), in-sphere-normal valued fields
    JetVector H;                                // mean curvature field
    std::array<std::array<AmbientVector, 2>, 2> h_coord;  // h(du_i, du_j) at base
    // shape[r](i,j) = <h(e_i,e_j), e_r> for the r-th in-sphere normal
    std::vector<std::array<std::array<double, 2>, 2>> shape;
    double K_intrinsic = 0.0;
    double K_extrinsic = 0.0;
    double S = 0.0;    // scalar curvature, 2K
    double S_h = 0.0;  // signed squared norm of h
    double H_norm2 = 0.0;  // <H, H> (indefinite, at base)
    std::vector<double> rd_commutator;  // <R^D(e1,e2)e_r,e_s>, pairs r<s, via shape operators
    std::vector<double> rd_direct;      // same, via derivatives of the normal connection
    std::array<AmbientVector, 2> DH;    // D_{e_i} H at base
    // Levi-Civita connection in the frame: conn[i][j][k] = <nabla_{e_i} e_j, e_k> eps_k
    double conn[2][2][2] = {};
    double res_gauss = 0.0;
    double res_codazzi = 0.0;
    double res_ricci = 0.0;
    double res_scalar = 0.0;
    double frame_residual = 0.0;
};

/// g_ij = <x_i, x_j> as jets; throws DegenerateMetric when |det g| falls
/// under 1e-12 * scale^2 at the base point.
MetricSample first_fundamental_form(const JetVector& xjet);

/// Gram-Schmidt over (x_u, x_v), re-seeded with (x_u + x_v, x_u - x_v)
/// when |g11| < null_tol * max|g| (null coordinate charts).  The frame is
/// ordered spacelike-first and oriented positively against the chart.
Frame tangent_frame(const JetVector& xjet, const MetricSample& metric,
                    double null_tol = 1e-6);

/// Completes {e1, e2, x} to a full orthonormal jet-valued basis; the
/// appended vectors are the normals of the surface inside the sphere.
void attach_normal_frame(Frame& frame, double tol = 1e-9);

/// Convenience: metric + tangent + normals in one call.
Frame build_frame(const JetVector& xjet);

/// Second fundamental form, mean curvature, shape operators, both
/// curvature routes, both normal-curvature routes, and the residual block.
GeometrySample analyze_geometry(const Frame& frame);

/// Positive-spectrum Laplace-Beltrami at the base point of f (an order-2
/// jet over the chart):  -(1/sqrt|g|) d_i( sqrt|g| g^{ij} d_j f ).
double laplace_beltrami(const Jet& f, const MetricSample& metric);

/// Gaussian curvature of a 2D metric from its jets alone (coordinate
/// Christoffel route; valid in both signatures.)
double intrinsic_curvature(const MetricSample& metric);

/// Directional derivative of a jet-valued ambient field along a tangent
/// vector given by chart coefficients (a du + b dv).
JetVector direction_derivative(const JetVector& field, const Jet& a, const Jet& b);

}  // namespace psgauss
