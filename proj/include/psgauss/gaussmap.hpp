#pragma once

#include <string>
#include <vector>

#include "psgauss/geometry.hpp"
#include "psgauss/immersion.hpp"
#include "psgauss/multivector.hpp"

namespace psgauss {

/// The Gauss map value nu = x ^ e1 ^ e2 at one point (jets to order 2)
/// together with its Laplacian computed two independent ways.
struct GaussSample {
    MultiVector<Jet> nu;
    MultiVector<double> nu0;             // base value
    MultiVector<double> delta_numeric;   // Laplace-Beltrami of each blade coefficient
    MultiVector<double> delta_closed;    // closed normal-bundle formula
    double nu_norm_residual = 0.0;       // |<<nu,nu>> - (-1)^t|
    double cross_residual = 0.0;         // max |delta_numeric - delta_closed| coefficient-wise
    double lambda_pointwise = 0.0;       // least-squares <Delta nu, nu> / <nu, nu> here
};

/// nu as a jet-valued multivector over the chart.
MultiVector<Jet> gauss_map(const Frame& frame);

/// Laplacian of nu obtained by applying the Laplace-Beltrami operator to
/// every blade coefficient.
MultiVector<double> delta_nu_numeric(const MultiVector<Jet>& nu, const MetricSample& metric);

/// Laplacian of nu from the closed formula
///   S_h nu + 2 H^e1^e2 - 2(x^D_{e1}H^e2 + x^e1^D_{e2}H)
///   + 2 sum_{r<s} eps_r eps_s <R^D(e1,e2)e_r,e_s> x^e_r^e_s.
MultiVector<double> delta_nu_closed(const Frame& frame, const GeometrySample& geo);

GaussSample gauss_sample(const Frame& frame, const GeometrySample& geo);

/// Full per-point analysis record used by the classifier and the reports.
struct PointSample {
    double u = 0.0, v = 0.0;
    int deduced_index = 0;
    double sphere_residual = 0.0;
    double frame_residual = 0.0;
    double res_gauss = 0.0, res_codazzi = 0.0, res_ricci = 0.0, res_scalar = 0.0;
    double H_norm_euclid = 0.0;
    double max_rd = 0.0;
    double S = 0.0, S_h = 0.0;
    double K_intrinsic = 0.0, K_extrinsic = 0.0;
    double nu_norm_residual = 0.0;
    double cross_residual = 0.0;
    double lambda_pointwise = 0.0;
    MultiVector<double> nu0;
    MultiVector<double> dnu;
    bool null_fallback = false;
};

PointSample analyze_point(const SurfaceSampler& sampler, double u, double v);

enum class Verdict { Harmonic, OneType, GrassmannHarmonicOnly, Inconclusive };

const char* to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct ResidualStat {
    double max = 0.0;
    double mean = 0.0;
};

/// Grid-level classification: the predicates of the characterization
/// (H = 0, flat normal connection, constant scalar curvature), the
/// least-squares eigenvalue of Delta nu = lambda nu, and aggregated
/// residuals for reporting.
struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    double lambda = 0.0;
    double tol = 1e-7;
    int surface_index = 0;

    double max_H = 0.0;
    double max_RD = 0.0;
    double S_mean = 0.0;
    double S_max_dev = 0.0;
    double Sh_mean = 0.0;
    double K_mean = 0.0;

    ResidualStat sphere, frame, gauss, codazzi, ricci, scalar_identity;
    ResidualStat nu_norm, delta_cross, eigen;

    std::vector<PointSample> points;
};

Classification classify(const SurfaceSampler& sampler,
                        const std::vector<std::pair<double, double>>& grid, double tol = 1e-7,
                        int threads = 1);

/// Sum in a fixed pairwise order (reduction-order independent of thread
/// count, reproducible run to run).
double pairwise_sum(const std::vector<double>& xs);

}  // namespace psgauss
