#include <cmath>
#include <map>

#include "psgauss/constructors.hpp"

namespace psgauss {

namespace {

/// mu and its first partials at a point.
struct MuValue {
    double mu, mu_u, mu_v;
};

MuValue mu_at(const ExprPtr& mu, double u, double v) {
    const Jet j = eval_expr<Jet>(mu, Jet::variable_u(u), Jet::variable_v(v));
    return {j.value(), j.partial(1, 0), j.partial(0, 1)};
}

/// One derivative evaluation of the first-order system for y = (x, xu, xv)
/// along the u axis (axis = 0) or the v axis (axis = 1).
struct Derivs {
    AmbientVector dx, dxu, dxv;
};

Derivs rhs(const ExprPtr& mu, const AmbientVector& c, int axis, double u, double v,
           const AmbientVector& x, const AmbientVector& xu, const AmbientVector& xv) {
    const MuValue m = mu_at(mu, u, v);
    const double p = m.mu_u / m.mu, q = m.mu_v / m.mu, M = m.mu * m.mu;
    Derivs d{AmbientVector::zero(x.sig), AmbientVector::zero(x.sig),
             AmbientVector::zero(x.sig)};
    const AmbientVector x_uv = xu * q + xv * p;
    if (axis == 0) {
        d.dx = xu;
        d.dxu = xu * p - xv * q - x * M + c;  // x_uu
        d.dxv = x_uv;
    } else {
        d.dx = xv;
        d.dxu = x_uv;
        d.dxv = xu * (-p) + xv * q - x * M - c;  // x_vv
    }
    return d;
}

double constraint_drift(const ExprPtr& mu, const AmbientVector& c, const FrobeniusState& s) {
    const MuValue m = mu_at(mu, s.u, s.v);
    const double mu2 = m.mu * m.mu;
    double worst = std::abs(inner(s.x, s.x) - 1.0);
    worst = std::max(worst, std::abs(inner(s.x, s.xu)));
    worst = std::max(worst, std::abs(inner(s.x, s.xv)));
    worst = std::max(worst, std::abs(inner(s.xu, s.xv)));
    worst = std::max(worst, std::abs(inner(s.xu, s.xu) - mu2));
    worst = std::max(worst, std::abs(inner(s.xv, s.xv) - mu2));
    worst = std::max(worst, std::abs(inner(c, s.x)));
    worst = std::max(worst, std::abs(inner(c, s.xu)));
    worst = std::max(worst, std::abs(inner(c, s.xv)));
    return worst;
}

void check_liouville(const ExprPtr& mu, double u0, double u1, double v0, double v1) {
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; j <= 6; ++j) {
            const double u = u0 + (u1 - u0) * i / 6.0;
            const double v = v0 + (v1 - v0) * j / 6.0;
            const Jet jm = eval_expr<Jet>(mu, Jet::variable_u(u), Jet::variable_v(v));
            if (!(jm.value() > 0.0))
                throw ValidationError("mu must be positive on the path hull");
            const Jet w = log(jm);
            const double res = w.partial(2, 0) + w.partial(0, 2) + jm.value() * jm.value();
            if (std::abs(res) > 1e-8 * std::max(1.0, jm.value() * jm.value()))
                throw ValidationError(
                    "mu does not satisfy Liouville's equation on the path hull (residual " +
                    std::to_string(res) + ")");
        }
}

FrobeniusState rk4_segment(const ExprPtr& mu, const AmbientVector& c, FrobeniusState s,
                           int axis, double target, double step,
                           std::vector<FrobeniusSample>* samples, double& drift) {
    const double start = axis == 0 ? s.u : s.v;
    const double length = target - start;
    if (length == 0.0) return s;
    const int nsteps = std::max(1, static_cast<int>(std::ceil(std::abs(length) / step - 1e-12)));
    const double h = length / nsteps;

    for (int k = 0; k < nsteps; ++k) {
        const double t = start + h * k;
        const double uu = axis == 0 ? t : s.u;
        const double vv = axis == 0 ? s.v : t;

        const Derivs k1 = rhs(mu, c, axis, uu, vv, s.x, s.xu, s.xv);
        const double th = t + 0.5 * h;
        const double u2 = axis == 0 ? th : s.u, v2 = axis == 0 ? s.v : th;
        const Derivs k2 = rhs(mu, c, axis, u2, v2, s.x + k1.dx * (0.5 * h),
                              s.xu + k1.dxu * (0.5 * h), s.xv + k1.dxv * (0.5 * h));
        const Derivs k3 = rhs(mu, c, axis, u2, v2, s.x + k2.dx * (0.5 * h),
                              s.xu + k2.dxu * (0.5 * h), s.xv + k2.dxv * (0.5 * h));
        const double tf = t + h;
        const double u4 = axis == 0 ? tf : s.u, v4 = axis == 0 ? s.v : tf;
        const Derivs k4 = rhs(mu, c, axis, u4, v4, s.x + k3.dx * h, s.xu + k3.dxu * h,
                              s.xv + k3.dxv * h);

        const double w = h / 6.0;
        s.x += (k1.dx + k2.dx * 2.0 + k3.dx * 2.0 + k4.dx) * w;
        s.xu += (k1.dxu + k2.dxu * 2.0 + k3.dxu * 2.0 + k4.dxu) * w;
        s.xv += (k1.dxv + k2.dxv * 2.0 + k3.dxv * 2.0 + k4.dxv) * w;
        if (axis == 0)
            s.u = tf;
        else
            s.v = tf;

        drift = std::max(drift, constraint_drift(mu, c, s));
        if (samples) samples->push_back({s.u, s.v, s.x, s.xu, s.xv});
    }
    return s;
}

}  // namespace

ConstraintResiduals initial_data_validate(const FrobeniusState& s, const AmbientVector& c,
                                          double mu0, double tol) {
    ConstraintResiduals out;
    const double mu2 = mu0 * mu0;
    out.values = {
        {"<x,x>-1", std::abs(inner(s.x, s.x) - 1.0)},
        {"<x,xu>", std::abs(inner(s.x, s.xu))},
        {"<x,xv>", std::abs(inner(s.x, s.xv))},
        {"<xu,xv>", std::abs(inner(s.xu, s.xv))},
        {"<xu,xu>-mu^2", std::abs(inner(s.xu, s.xu) - mu2)},
        {"<xv,xv>-mu^2", std::abs(inner(s.xv, s.xv) - mu2)},
        {"<c,c>", std::abs(inner(c, c))},
        {"<c,x>", std::abs(inner(c, s.x))},
        {"<c,xu>", std::abs(inner(c, s.xu))},
        {"<c,xv>", std::abs(inner(c, s.xv))},
    };
    out.worst = 0.0;
    for (const auto& [name, r] : out.values) out.worst = std::max(out.worst, r);
    const bool c_nonzero = euclid_norm(c) > tol;
    out.pass = out.worst <= tol && c_nonzero;
    if (!c_nonzero) out.values.emplace_back("||c|| = 0 (c must be lightlike, nonzero)", 1.0);
    return out;
}

FrobeniusRun frobenius_integrate(const ExprPtr& mu, const AmbientVector& c,
                                 const FrobeniusState& initial,
                                 const std::vector<std::pair<double, double>>& waypoints,
                                 double step) {
    if (step <= 0.0) throw Error("step must be positive");
    double u_lo = initial.u, u_hi = initial.u, v_lo = initial.v, v_hi = initial.v;
    for (const auto& [u, v] : waypoints) {
        u_lo = std::min(u_lo, u);
        u_hi = std::max(u_hi, u);
        v_lo = std::min(v_lo, v);
        v_hi = std::max(v_hi, v);
    }
    check_liouville(mu, u_lo, u_hi, v_lo, v_hi);

    const MuValue m0 = mu_at(mu, initial.u, initial.v);
    const auto validation = initial_data_validate(initial, c, m0.mu, 1e-9);
    if (!validation.pass) {
        std::string msg = "initial data fails validation:";
        for (const auto& [name, r] : validation.values)
            if (r > 1e-9) msg += " " + name + "=" + std::to_string(r);
        throw ValidationError(msg);
    }

    FrobeniusRun run;
    run.samples.push_back({initial.u, initial.v, initial.x, initial.xu, initial.xv});
    FrobeniusState s = initial;
    double total_length = 0.0;
    for (const auto& [wu, wv] : waypoints) {
        const bool du = std::abs(wu - s.u) > 1e-15;
        const bool dv = std::abs(wv - s.v) > 1e-15;
        if (du && dv)
            throw Error("waypoints must form an axis-aligned polyline");
        total_length += std::abs(wu - s.u) + std::abs(wv - s.v);
        if (du)
            s = rk4_segment(mu, c, s, 0, wu, step, &run.samples, run.max_drift);
        else if (dv)
            s = rk4_segment(mu, c, s, 1, wv, step, &run.samples, run.max_drift);
    }
    run.end = s;

    // two orders of magnitude above a conservative fourth-order drift law
    const double law = 1e2 * step * step * step * step * std::max(total_length, step);
    if (run.max_drift > 1e2 * std::max(law, 1e-14))
        throw Error("constraint drift " + std::to_string(run.max_drift) +
                    " breaks the fourth-order law; integration unstable");
    return run;
}

FrobeniusSurface frobenius_grid(const ExprPtr& mu, const AmbientVector& c,
                                const FrobeniusState& initial, double u1, int nu, double v1,
                                int nv, double step) {
    FrobeniusSurface surf;
    surf.mu = mu;
    surf.c = c;
    surf.nu = nu;
    surf.nv = nv;
    surf.u0 = initial.u;
    surf.u1 = u1;
    surf.v0 = initial.v;
    surf.v1 = v1;
    surf.states.resize(static_cast<std::size_t>(nu) * nv);

    check_liouville(mu, std::min(surf.u0, u1), std::max(surf.u0, u1), std::min(surf.v0, v1),
                    std::max(surf.v0, v1));
    const MuValue m0 = mu_at(mu, initial.u, initial.v);
    if (!initial_data_validate(initial, c, m0.mu, 1e-9).pass)
        throw ValidationError("initial data fails validation");

    FrobeniusState anchor = initial;
    for (int i = 0; i < nu; ++i) {
        const double ui = nu == 1 ? surf.u0 : surf.u0 + (u1 - surf.u0) * i / (nu - 1);
        anchor = rk4_segment(mu, c, anchor, 0, ui, step, nullptr, surf.max_drift);
        FrobeniusState cur = anchor;
        for (int j = 0; j < nv; ++j) {
            const double vj = nv == 1 ? surf.v0 : surf.v0 + (v1 - surf.v0) * j / (nv - 1);
            cur = rk4_segment(mu, c, cur, 1, vj, step, nullptr, surf.max_drift);
            surf.states[static_cast<std::size_t>(i) * nv + j] = cur;
        }
    }
    return surf;
}

std::vector<std::pair<double, double>> FrobeniusSurface::points() const {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(states.size());
    for (const auto& s : states) pts.emplace_back(s.u, s.v);
    return pts;
}

JetVector frobenius_jets(const ExprPtr& mu, const AmbientVector& c,
                         const FrobeniusState& s) {
    const Jet jm = eval_expr<Jet>(mu, Jet::variable_u(s.u), Jet::variable_v(s.v));
    const double m = jm.value();
    const double mu_u = jm.partial(1, 0), mu_v = jm.partial(0, 1);
    const double mu_uu = jm.partial(2, 0), mu_uv = jm.partial(1, 1), mu_vv = jm.partial(0, 2);

    const double p = mu_u / m, q = mu_v / m, M = m * m;
    const double p_u = (mu_uu * m - mu_u * mu_u) / (m * m);
    const double p_v = (mu_uv * m - mu_u * mu_v) / (m * m);
    const double q_u = p_v;
    const double q_v = (mu_vv * m - mu_v * mu_v) / (m * m);
    const double M_u = 2.0 * m * mu_u, M_v = 2.0 * m * mu_v;

    const AmbientVector &x = s.x, &xu = s.xu, &xv = s.xv;
    const AmbientVector A = xu * p - xv * q - x * M + c;   // x_uu
    const AmbientVector B = xu * q + xv * p;               // x_uv
    const AmbientVector C = xu * (-p) + xv * q - x * M - c;  // x_vv
    const AmbientVector x_uuu = xu * p_u + A * p - xv * q_u - B * q - x * M_u - xu * M;
    const AmbientVector x_uuv = xu * p_v + B * p - xv * q_v - C * q - x * M_v - xv * M;
    const AmbientVector x_uvv = xu * q_v + B * q + xv * p_v + C * p;
    const AmbientVector x_vvv = xu * (-p_v) + B * (-p) + xv * q_v + C * q - x * M_v - xv * M;

    std::vector<Jet> out(x.dim());
    for (int i = 0; i < x.dim(); ++i) {
        Jet j;
        j.c[Jet::idx(0, 0)] = x.c[i];
        j.c[Jet::idx(1, 0)] = xu.c[i];
        j.c[Jet::idx(0, 1)] = xv.c[i];
        j.c[Jet::idx(2, 0)] = A.c[i] / 2.0;
        j.c[Jet::idx(1, 1)] = B.c[i];
        j.c[Jet::idx(0, 2)] = C.c[i] / 2.0;
        j.c[Jet::idx(3, 0)] = x_uuu.c[i] / 6.0;
        j.c[Jet::idx(2, 1)] = x_uuv.c[i] / 2.0;
        j.c[Jet::idx(1, 2)] = x_uvv.c[i] / 2.0;
        j.c[Jet::idx(0, 3)] = x_vvv.c[i] / 6.0;
        out[i] = j;
    }
    return JetVector(x.sig, std::move(out));
}

SurfaceSampler FrobeniusSurface::sampler() const {
    SurfaceSampler s;
    s.sig = c.sig;
    s.surface_index = 0;
    s.name = "frobenius";
    const FrobeniusSurface copy = *this;
    s.jets = [copy](double u, double v) {
        // locate the stored grid state
        const double du = copy.nu > 1 ? (copy.u1 - copy.u0) / (copy.nu - 1) : 1.0;
        const double dv = copy.nv > 1 ? (copy.v1 - copy.v0) / (copy.nv - 1) : 1.0;
        const int i = static_cast<int>(std::lround((u - copy.u0) / du));
        const int j = static_cast<int>(std::lround((v - copy.v0) / dv));
        if (i < 0 || j < 0 || i >= copy.nu || j >= copy.nv)
            throw DomainError("point outside the integrated grid");
        const auto& st = copy.states[static_cast<std::size_t>(i) * copy.nv + j];
        if (std::abs(st.u - u) > 1e-9 || std::abs(st.v - v) > 1e-9)
            throw DomainError("sampler point does not coincide with an integrated node");
        return frobenius_jets(copy.mu, copy.c, st);
    };
    return s;
}

}  // namespace psgauss
