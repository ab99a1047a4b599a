#include "psgauss/gaussmap.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <thread>

namespace psgauss {

MultiVector<Jet> gauss_map(const Frame& fr) {
    return decomposable_from_vectors<Jet>({fr.position, fr.tangent[0], fr.tangent[1]});
}

MultiVector<double> delta_nu_numeric(const MultiVector<Jet>& nu, const MetricSample& metric) {
    MultiVector<double> out(nu.sig, nu.grade);
    for (std::size_t i = 0; i < nu.c.size(); ++i)
        out.c[i] = laplace_beltrami(nu.c[i], metric);
    return out;
}

MultiVector<double> delta_nu_closed(const Frame& fr, const GeometrySample& geo) {
    const AmbientVector x = base_point(fr.position);
    const AmbientVector e1 = base_point(fr.tangent[0]);
    const AmbientVector e2 = base_point(fr.tangent[1]);
    const AmbientVector H = base_point(geo.H);

    const MultiVector<double> nu0 = decomposable_from_vectors<double>({x, e1, e2});
    MultiVector<double> out = nu0 * geo.S_h;
    out += decomposable_from_vectors<double>({H, e1, e2}) * 2.0;
    out -= decomposable_from_vectors<double>({x, geo.DH[0], e2}) * 2.0;
    out -= decomposable_from_vectors<double>({x, e1, geo.DH[1]}) * 2.0;

    std::size_t k = 0;
    const std::size_t nn = fr.normals.size();
    for (std::size_t r = 0; r < nn; ++r)
        for (std::size_t s = r + 1; s < nn; ++s, ++k) {
            const double factor =
                2.0 * fr.normal_eps[r] * fr.normal_eps[s] * geo.rd_direct[k];
            if (factor == 0.0) continue;
            out += decomposable_from_vectors<double>(
                       {x, base_point(fr.normals[r]), base_point(fr.normals[s])}) *
                   factor;
        }
    return out;
}

GaussSample gauss_sample(const Frame& fr, const GeometrySample& geo) {
    GaussSample gs;
    gs.nu = gauss_map(fr);
    gs.nu0 = base_point(gs.nu);
    gs.delta_numeric = delta_nu_numeric(gs.nu, fr.metric);
    gs.delta_closed = delta_nu_closed(fr, geo);
    const double target = fr.metric.surface_index == 0 ? 1.0 : -1.0;
    gs.nu_norm_residual = std::abs(wedge_inner(gs.nu0, gs.nu0) - target);
    gs.cross_residual = max_abs_coeff(gs.delta_numeric - gs.delta_closed);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < gs.nu0.c.size(); ++i) {
        num += gs.delta_numeric.c[i] * gs.nu0.c[i];
        den += gs.nu0.c[i] * gs.nu0.c[i];
    }
    gs.lambda_pointwise = den > 0.0 ? num / den : 0.0;
    return gs;
}

PointSample analyze_point(const SurfaceSampler& sampler, double u, double v) {
    const JetVector xjet = sampler.jets(u, v);
    const Frame fr = build_frame(xjet);
    const GeometrySample geo = analyze_geometry(fr);
    const GaussSample gs = gauss_sample(fr, geo);

    PointSample p;
    p.u = u;
    p.v = v;
    p.deduced_index = fr.metric.surface_index;
    const AmbientVector x0 = base_point(xjet);
    p.sphere_residual = std::abs(inner(x0, x0) - 1.0);
    p.frame_residual = geo.frame_residual;
    p.res_gauss = geo.res_gauss;
    p.res_codazzi = geo.res_codazzi;
    p.res_ricci = geo.res_ricci;
    p.res_scalar = geo.res_scalar;
    p.H_norm_euclid = euclid_norm(base_point(geo.H));
    for (double rd : geo.rd_direct) p.max_rd = std::max(p.max_rd, std::abs(rd));
    for (double rd : geo.rd_commutator) p.max_rd = std::max(p.max_rd, std::abs(rd));
    p.S = geo.S;
    p.S_h = geo.S_h;
    p.K_intrinsic = geo.K_intrinsic;
    p.K_extrinsic = geo.K_extrinsic;
    p.nu_norm_residual = gs.nu_norm_residual;
    p.cross_residual = gs.cross_residual;
    p.lambda_pointwise = gs.lambda_pointwise;
    p.nu0 = gs.nu0;
    p.dnu = gs.delta_numeric;
    p.null_fallback = fr.null_fallback;
    return p;
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Harmonic: return "harmonic";
        case Verdict::OneType: return "one_type";
        case Verdict::GrassmannHarmonicOnly: return "grassmann_harmonic_only";
        default: return "inconclusive";
    }
}

Verdict verdict_from_string(const std::string& s) {
    if (s == "harmonic") return Verdict::Harmonic;
    if (s == "one_type") return Verdict::OneType;
    if (s == "grassmann_harmonic_only") return Verdict::GrassmannHarmonicOnly;
    if (s == "inconclusive") return Verdict::Inconclusive;
    throw Error("unknown verdict '" + s + "'");
}

double pairwise_sum(const std::vector<double>& xs) {
    if (xs.empty()) return 0.0;
    std::vector<double> level = xs;
    while (level.size() > 1) {
        std::vector<double> next;
        next.reserve((level.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] + level[i + 1]);
        if (level.size() % 2 == 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

namespace {

ResidualStat stat_of(const std::vector<PointSample>& pts, double PointSample::*field) {
    ResidualStat st;
    std::vector<double> values;
    values.reserve(pts.size());
    for (const auto& p : pts) {
        st.max = std::max(st.max, p.*field);
        values.push_back(p.*field);
    }
    st.mean = pts.empty() ? 0.0 : pairwise_sum(values) / static_cast<double>(pts.size());
    return st;
}

}  // namespace

Classification classify(const SurfaceSampler& sampler,
                        const std::vector<std::pair<double, double>>& grid, double tol,
                        int threads) {
    Classification out;
    out.tol = tol;
    out.points.resize(grid.size());

    const int nthreads = std::max(1, threads);
    if (nthreads == 1 || grid.size() < 2) {
        for (std::size_t i = 0; i < grid.size(); ++i)
            out.points[i] = analyze_point(sampler, grid[i].first, grid[i].second);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i = next++; i < grid.size(); i = next++)
                        out.points[i] = analyze_point(sampler, grid[i].first, grid[i].second);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    const auto& pts = out.points;
    if (pts.empty()) throw Error("empty sample grid");
    out.surface_index = pts.front().deduced_index;

    out.sphere = stat_of(pts, &PointSample::sphere_residual);
    out.frame = stat_of(pts, &PointSample::frame_residual);
    out.gauss = stat_of(pts, &PointSample::res_gauss);
    out.codazzi = stat_of(pts, &PointSample::res_codazzi);
    out.ricci = stat_of(pts, &PointSample::res_ricci);
    out.scalar_identity = stat_of(pts, &PointSample::res_scalar);
    out.nu_norm = stat_of(pts, &PointSample::nu_norm_residual);
    out.delta_cross = stat_of(pts, &PointSample::cross_residual);

    for (const auto& p : pts) {
        out.max_H = std::max(out.max_H, p.H_norm_euclid);
        out.max_RD = std::max(out.max_RD, p.max_rd);
    }
    {
        std::vector<double> s_values, sh_values, k_values;
        for (const auto& p : pts) {
            s_values.push_back(p.S);
            sh_values.push_back(p.S_h);
            k_values.push_back(p.K_intrinsic);
        }
        const double n = static_cast<double>(pts.size());
        out.S_mean = pairwise_sum(s_values) / n;
        out.Sh_mean = pairwise_sum(sh_values) / n;
        out.K_mean = pairwise_sum(k_values) / n;
        for (const auto& p : pts)
            out.S_max_dev = std::max(out.S_max_dev, std::abs(p.S - out.S_mean));
    }

    // least-squares eigenvalue over all points and blade coefficients
    {
        std::vector<double> num, den;
        for (const auto& p : pts)
            for (std::size_t i = 0; i < p.nu0.c.size(); ++i) {
                num.push_back(p.dnu.c[i] * p.nu0.c[i]);
                den.push_back(p.nu0.c[i] * p.nu0.c[i]);
            }
        const double d = pairwise_sum(den);
        out.lambda = d > 0.0 ? pairwise_sum(num) / d : 0.0;
    }
    {
        std::vector<double> values;
        for (const auto& p : pts) {
            const double r = max_abs_coeff(p.dnu - p.nu0 * out.lambda);
            values.push_back(r);
            out.eigen.max = std::max(out.eigen.max, r);
        }
        out.eigen.mean = pairwise_sum(values) / static_cast<double>(pts.size());
    }

    const bool p1 = out.max_H <= tol;
    const bool p2 = out.max_RD <= tol;
    const bool p3 = out.S_max_dev <= tol;
    bool s_is_two = true;
    for (const auto& p : pts) s_is_two = s_is_two && std::abs(p.S - 2.0) <= tol;

    if (p1 && p2 && s_is_two)
        out.verdict = Verdict::Harmonic;
    else if (p1 && p2 && p3)
        out.verdict = Verdict::OneType;
    else if (p1 && !(p2 && p3))
        out.verdict = Verdict::GrassmannHarmonicOnly;
    else
        out.verdict = Verdict::Inconclusive;
    return out;
}

}  // namespace psgauss
