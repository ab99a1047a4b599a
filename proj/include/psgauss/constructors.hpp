#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "psgauss/immersion.hpp"

namespace psgauss {

// ---------------------------------------------------------------------------
// Liouville solver: Delta_0 w + e^{2w} = 0 with Dirichlet data, the equation
// of conformal factors mu = e^w of Gaussian curvature 1.

struct LiouvilleOptions {
    double tol = 1e-10;   // Newton convergence on max |update|
    int max_iter = 25;
    int refine = 2;       // internal mesh refinement factor (power of two)
    bool deferred_correction = true;  // fourth-order defect correction pass
    // The Dirichlet problem for Liouville's equation is non-monotone and
    // generally has two solutions over the same boundary data.  Newton
    // starts from `initial` when given; otherwise from the discrete
    // harmonic extension of the boundary values, which selects the branch
    // continuously connected to the linear problem.
    std::function<double(double, double)> initial;
};

struct LiouvilleSolution {
    int n = 0;  // output nodes per side
    double u0 = 0, u1 = 0, v0 = 0, v1 = 0;
    std::vector<double> w;         // row-major n*n, w = ln(mu)
    std::vector<double> residual;  // converged discrete residual at the output nodes
    int newton_iterations = 0;
    std::vector<double> residual_history;  // max |F| per Newton step

    double at(int i, int j) const { return w[static_cast<std::size_t>(i) * n + j]; }
};

LiouvilleSolution liouville_solve(double u0, double u1, double v0, double v1,
                                  const std::function<double(double, double)>& boundary_w,
                                  int n, const LiouvilleOptions& opts = {});

/// The closed-form family mu_alpha = 2 alpha / (1 + alpha^2 (u^2+v^2)),
/// an exact solution of Liouville's equation, as an expression tree.
ExprPtr stereographic_mu(double alpha = 1.0);

// ---------------------------------------------------------------------------
// Frobenius integration of the compatible first-order system for surfaces
// with harmonic Gauss map in isothermal coordinates:
//   x_uu =  (mu_u/mu) x_u - (mu_v/mu) x_v - mu^2 x + c
//   x_uv =  (mu_v/mu) x_u + (mu_u/mu) x_v
//   x_vv = -(mu_u/mu) x_u + (mu_v/mu) x_v - mu^2 x - c
// with c a fixed lightlike vector and mu a Liouville conformal factor.

struct FrobeniusState {
    AmbientVector x, xu, xv;
    double u = 0.0, v = 0.0;
};

struct ConstraintResiduals {
    std::vector<std::pair<std::string, double>> values;
    bool pass = false;
    double worst = 0.0;
};

/// Checks the conserved quantities at the start point: sphere membership,
/// orthogonality, isothermal metric, and the lightlike direction c being
/// nonzero, null, and orthogonal to x, x_u, x_v.  These propagate exactly
/// under the system, so initial validity suffices.
ConstraintResiduals initial_data_validate(const FrobeniusState& state, const AmbientVector& c,
                                          double mu0, double tol = 1e-9);

struct FrobeniusSample {
    double u = 0.0, v = 0.0;
    AmbientVector x, xu, xv;
};

struct FrobeniusRun {
    std::vector<FrobeniusSample> samples;  // every accepted step, in order
    FrobeniusState end;
    double max_drift = 0.0;  // worst conserved-quantity violation seen
};

/// Classical fixed-step RK4 along an axis-aligned polyline.  Throws
/// ValidationError when mu fails Liouville's equation on the hull of the
/// path, or when the initial data fails validation; throws Error when the
/// observed drift breaks the fourth-order law by two orders of magnitude.
FrobeniusRun frobenius_integrate(const ExprPtr& mu, const AmbientVector& c,
                                 const FrobeniusState& initial,
                                 const std::vector<std::pair<double, double>>& waypoints,
                                 double step);

/// States integrated over a full grid (u-loop outside, v-loop inside),
/// exposable as a SurfaceSampler whose order-3 jets come from the system
/// itself rather than from finite differences.
struct FrobeniusSurface {
    ExprPtr mu;
    AmbientVector c;
    int nu = 0, nv = 0;
    double u0 = 0, u1 = 0, v0 = 0, v1 = 0;
    std::vector<FrobeniusState> states;  // row-major nu*nv
    double max_drift = 0.0;

    std::vector<std::pair<double, double>> points() const;
    SurfaceSampler sampler() const;
};

FrobeniusSurface frobenius_grid(const ExprPtr& mu, const AmbientVector& c,
                                const FrobeniusState& initial, double u1, int nu, double v1,
                                int nv, double step);

/// Order-3 jets of the solution through `state`, assembled from the system.
JetVector frobenius_jets(const ExprPtr& mu, const AmbientVector& c,
                         const FrobeniusState& state);

// ---------------------------------------------------------------------------
// Light-cone surfaces x(u,v) = z(u)/(u+v) - z'(u)/2 built from constant
// speed-2 spacelike curves in the light cone with null acceleration.

struct LightconeValidation {
    bool pass = false;
    double max_position_residual = 0.0;  // |<z, z>|
    double max_speed_residual = 0.0;     // |<z', z'> - 4|
    double max_accel_residual = 0.0;     // |<z'', z''>|
    double min_jerk_norm = 0.0;          // min Euclid ||z'''||
};

LightconeValidation lightcone_validate(const CurveSpec& z, int samples = 33,
                                       double tol = 1e-10);

/// Builds the immersion spec with the u+v = 0 line excluded.  The curve
/// must live in an index-1 ambient space and pass lightcone_validate.
ImmersionSpec lightcone_build(const CurveSpec& z);

/// The built-in example curve (cos, sin, sinh, cosh of sqrt(2) u) source.
const char* lightcone_example_curve_source();

// ---------------------------------------------------------------------------
// Closed-form flat Lorentzian surfaces with zero mean curvature in S^3_s.

/// branch "desitter": (1/sqrt2)(cos u, sin u, cosh v, sinh v) in S^3_1;
/// branch "index2": the exponential-trigonometric solution of
///   x_uu = a xi, x_uv = x, x_vv = -xi/a
/// in null coordinates over S^3_2, with alpha = sqrt(a/2).
ImmersionSpec lemma2_closed_form(double a, const std::string& branch);

struct FlatSystemResiduals {
    double uu = 0.0;       // ||x_uu - a xi||
    double uv = 0.0;       // ||x_uv - x||
    double vv = 0.0;       // ||x_vv + xi/a||
    double xi_unit = 0.0;  // |<xi, xi> + 1|
};

/// Residuals of the defining system at a point, with xi reconstructed as
/// the unit timelike normal of the surface there.
FlatSystemResiduals lemma2_system_residuals(const ImmersionSpec& spec, double a, double u, double v);

}  // namespace psgauss
