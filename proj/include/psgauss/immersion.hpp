#pragma once

#include <functional>
#include <string>
#include <vector>

#include "psgauss/expression.hpp"
#include "psgauss/vec.hpp"

namespace psgauss {

/// Rectangular chart domain with an optional excluded level set
/// (e.g. the line u + v = 0): points where `excluded` vanishes are
/// outside the chart.
struct ChartDomain {
    double u0 = 0.0, u1 = 1.0;
    double v0 = 0.0, v1 = 1.0;
    ExprPtr excluded;  // null when nothing is excluded

    bool contains(double u, double v) const;
};

/// A parametric immersion x(u,v) into the unit pseudo-sphere of
/// E^{dim}_{index}, given componentwise by expression trees.
struct ImmersionSpec {
    Signature sig;
    int surface_index = 0;  // expected index t of the induced metric
    ChartDomain domain;
    std::vector<ExprPtr> components;
    std::vector<std::pair<std::string, double>> params;  // as declared in the source

    /// Order-3 jets of all components at an interior chart point.
    JetVector evaluate(double u, double v) const;

    /// Plain values (no derivatives).
    AmbientVector evaluate_point(double u, double v) const;
};

/// A curve z(u) in E^{dim}_{index}, componentwise expression trees of u.
struct CurveSpec {
    Signature sig;
    double u0 = 0.0, u1 = 1.0;
    std::vector<ExprPtr> components;

    /// Order-3 jets in u (the v direction is unused).
    JetVector evaluate(double u) const;
};

/// Parse the surface definition text format:
///
///   # comment
///   dim = 4
///   index = 1
///   surface_index = 1
///   domain = u in [0.1, 1], v in [0.1, 1]
///   exclude = u+v = 0          (optional)
///   param a = 2                (optional, repeatable)
///   x1 = cos(sqrt(2)*u)/(u+v)
///   ...
///   x4 = ...
ImmersionSpec parse_surface(const std::string& source);

/// Curve files use the same header style with keys dim, index,
/// domain = u in [a,b], and components z1..z{dim}.
CurveSpec parse_curve(const std::string& source);

/// Parse a standalone expression (entry point for tests and tools).
ExprPtr parse_expression(const std::string& source);

/// Canonical text form of a spec; parse(render(spec)) reproduces the
/// component trees exactly.
std::string render_surface(const ImmersionSpec& spec);

/// Anything that can produce order-3 jets over a chart: parsed
/// immersions, constructed surfaces, test lambdas.
struct SurfaceSampler {
    Signature sig;
    int surface_index = 0;
    std::function<JetVector(double, double)> jets;
    std::string name;
};

SurfaceSampler make_sampler(const ImmersionSpec& spec, const std::string& name = "");

/// Max over the grid of |<x,x> - 1| (membership in the unit pseudo-sphere).
double validate_on_sphere(const ImmersionSpec& spec, int nu, int nv);

/// Inclusive rectangular sample grid, row-major with u varying slowest.
std::vector<std::pair<double, double>> grid_points(const ChartDomain& d, int nu, int nv);

}  // namespace psgauss
