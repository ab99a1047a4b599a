#include <cmath>
#include <cstdio>

#include "psgauss/constructors.hpp"
#include "psgauss/geometry.hpp"

namespace psgauss {

LightconeValidation lightcone_validate(const CurveSpec& z, int samples, double tol) {
    LightconeValidation out;
    out.min_jerk_norm = 1e300;
    for (int k = 0; k < samples; ++k) {
        const double u = z.u0 + (z.u1 - z.u0) * k / (samples - 1);
        const JetVector zj = z.evaluate(u);
        const JetVector z1 = derivative_u(zj);
        const JetVector z2 = derivative_u(z1);
        const AmbientVector z0b = base_point(zj), z1b = base_point(z1), z2b = base_point(z2);
        std::vector<double> jerk(z.sig.dimension);
        for (int i = 0; i < z.sig.dimension; ++i) jerk[i] = zj.c[i].partial(3, 0);
        const AmbientVector z3b(z.sig, jerk);

        out.max_position_residual = std::max(out.max_position_residual,
                                             std::abs(inner(z0b, z0b)));
        out.max_speed_residual = std::max(out.max_speed_residual,
                                          std::abs(inner(z1b, z1b) - 4.0));
        out.max_accel_residual = std::max(out.max_accel_residual, std::abs(inner(z2b, z2b)));
        out.min_jerk_norm = std::min(out.min_jerk_norm, euclid_norm(z3b));
    }
    out.pass = out.max_position_residual <= tol && out.max_speed_residual <= tol &&
               out.max_accel_residual <= tol && out.min_jerk_norm > tol;
    return out;
}

ImmersionSpec lightcone_build(const CurveSpec& z) {
    if (z.sig.index != 1)
        throw ValidationError("light-cone construction requires an index-1 ambient space");
    const auto check = lightcone_validate(z);
    if (!check.pass) {
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "curve fails light-cone constraints: |<z,z>| <= %.3g, "
                      "|<z',z'>-4| <= %.3g, |<z'',z''>| <= %.3g, min||z'''|| = %.3g",
                      check.max_position_residual, check.max_speed_residual,
                      check.max_accel_residual, check.min_jerk_norm);
        throw ValidationError(buf);
    }

    ImmersionSpec spec;
    spec.sig = z.sig;
    spec.surface_index = 1;
    spec.domain.u0 = z.u0;
    spec.domain.u1 = z.u1;
    spec.domain.v0 = z.u0;
    spec.domain.v1 = z.u1;
    const ExprPtr u_plus_v = make_binary(ExprOp::Add, make_var_u(), make_var_v());
    spec.domain.excluded = u_plus_v;
    spec.components.resize(z.sig.dimension);
    for (int i = 0; i < z.sig.dimension; ++i) {
        const ExprPtr zi = z.components[i];
        const ExprPtr dzi = differentiate(zi, 'u');
        spec.components[i] = make_binary(
            ExprOp::Sub, make_binary(ExprOp::Div, zi, u_plus_v),
            make_binary(ExprOp::Div, dzi, make_constant(2.0)));
    }
    return spec;
}

const char* lightcone_example_curve_source() {
    return
        "# constant speed-2 spacelike curve in the light cone of E^4_1\n"
        "dim = 4\n"
        "index = 1\n"
        "domain = u in [0.1, 1]\n"
        "z1 = cos(sqrt(2)*u)\n"
        "z2 = sin(sqrt(2)*u)\n"
        "z3 = sinh(sqrt(2)*u)\n"
        "z4 = cosh(sqrt(2)*u)\n";
}

ImmersionSpec lemma2_closed_form(double a, const std::string& branch) {
    if (!(a > 0.0)) throw Error("lemma2_closed_form requires a > 0");
    if (branch == "desitter") {
        return parse_surface(
            "dim = 4\n"
            "index = 1\n"
            "surface_index = 1\n"
            "domain = u in [0, 2*pi], v in [-1, 1]\n"
            "x1 = cos(u)/sqrt(2)\n"
            "x2 = sin(u)/sqrt(2)\n"
            "x3 = cosh(v)/sqrt(2)\n"
            "x4 = sinh(v)/sqrt(2)\n");
    }
    if (branch == "index2") {
        // exponential-trigonometric solution in null coordinates; with the
        // standard constant vectors it collapses to cosh/sinh * cos/sin of
        // P = alpha u + v/(2 alpha), Q = alpha u - v/(2 alpha)
        char buf[1024];
        std::snprintf(buf, sizeof buf,
                      "dim = 4\n"
                      "index = 2\n"
                      "surface_index = 1\n"
                      "param alpha = %.17g\n"
                      "domain = u in [-0.8, 0.8], v in [-0.8, 0.8]\n"
                      "x1 = cosh(alpha*u + v/(2*alpha))*cos(alpha*u - v/(2*alpha))\n"
                      "x2 = cosh(alpha*u + v/(2*alpha))*sin(alpha*u - v/(2*alpha))\n"
                      "x3 = sinh(alpha*u + v/(2*alpha))*cos(alpha*u - v/(2*alpha))\n"
                      "x4 = sinh(alpha*u + v/(2*alpha))*sin(alpha*u - v/(2*alpha))\n",
                      std::sqrt(a / 2.0));
        return parse_surface(buf);
    }
    throw Error("unknown branch '" + branch + "' (expected 'desitter' or 'index2')");
}

FlatSystemResiduals lemma2_system_residuals(const ImmersionSpec& spec, double a, double u,
                                        double v) {
    const JetVector xj = spec.evaluate(u, v);
    const JetVector xu = derivative_u(xj);
    const AmbientVector x = base_point(xj);
    const AmbientVector x_uu = base_point(derivative_u(xu));
    const AmbientVector x_uv = base_point(derivative_v(xu));
    const AmbientVector x_vv = base_point(derivative_v(derivative_v(xj)));

    const Frame fr = build_frame(xj);
    if (fr.normals.size() != 1)
        throw Error("system residuals need exactly one normal direction");
    AmbientVector xi = base_point(fr.normals[0]);
    FlatSystemResiduals out;
    out.xi_unit = std::abs(inner(xi, xi) + 1.0);
    if (inner(x_uu, xi) > 0.0) xi = -xi;  // x_uu = a xi fixes the orientation
    out.uu = euclid_norm(x_uu - xi * a);
    out.uv = euclid_norm(x_uv - x);
    out.vv = euclid_norm(x_vv + xi * (1.0 / a));
    return out;
}

}  // namespace psgauss
