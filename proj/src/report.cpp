#include "psgauss/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "json.hpp"
#include "psgauss/version.hpp"

namespace psgauss {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json stat_json(const ResidualStat& st) {
    return ordered_json{{"max", st.max}, {"mean", st.mean}};
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string report_to_json(const VerificationReport& r) {
    ordered_json j;
    j["schema"] = 1;
    j["tool"] = "psgauss";
    j["version"] = version();
    j["surface"] = r.surface;
    j["provenance"] = r.provenance;
    j["dimension"] = r.dimension;
    j["index"] = r.index;
    j["surface_index"] = r.surface_index;
    j["grid"] = ordered_json{{"nu", r.grid.nu},   {"nv", r.grid.nv}, {"u0", r.grid.u0},
                             {"u1", r.grid.u1},   {"v0", r.grid.v0}, {"v1", r.grid.v1}};
    j["tolerances"] =
        ordered_json{{"predicate", r.tol_predicate}, {"identity", r.tol_identity}};
    j["residuals"] = ordered_json{
        {"sphere", stat_json(r.cls.sphere)},
        {"frame", stat_json(r.cls.frame)},
        {"gauss", stat_json(r.cls.gauss)},
        {"codazzi", stat_json(r.cls.codazzi)},
        {"ricci", stat_json(r.cls.ricci)},
        {"scalar_identity", stat_json(r.cls.scalar_identity)},
        {"nu_norm", stat_json(r.cls.nu_norm)},
        {"delta_nu_cross", stat_json(r.cls.delta_cross)},
        {"delta_nu_eigen", stat_json(r.cls.eigen)},
    };
    j["predicates"] = ordered_json{
        {"max_H", r.cls.max_H},           {"max_RD", r.cls.max_RD},
        {"S_mean", r.cls.S_mean},         {"S_max_dev", r.cls.S_max_dev},
        {"S_h_mean", r.cls.Sh_mean},      {"K_mean", r.cls.K_mean},
    };
    if (!r.constructor.empty()) {
        ordered_json cj;
        cj["name"] = r.constructor;
        for (const auto& [key, value] : r.constructor_stats) cj[key] = value;
        j["constructor"] = cj;
    }
    j["lambda"] = r.cls.lambda;
    j["verdict"] = to_string(r.cls.verdict);
    if (!r.expected_verdict.empty()) j["expected_verdict"] = r.expected_verdict;
    j["matched"] = r.matched;
    j["threads"] = r.threads;
    j["wall_time_ms"] = r.wall_time_ms;
    return j.dump(2) + "\n";
}

VerificationReport verify_surface(const SurfaceSampler& sampler, const GridSpec& grid,
                                  double tol_predicate, double tol_identity,
                                  const std::string& expected_verdict, int threads) {
    VerificationReport r;
    r.surface = sampler.name;
    r.dimension = sampler.sig.dimension;
    r.index = sampler.sig.index;
    r.grid = grid;
    r.tol_predicate = tol_predicate;
    r.tol_identity = tol_identity;
    r.threads = threads;
    r.expected_verdict = expected_verdict;

    ChartDomain dom;
    dom.u0 = grid.u0;
    dom.u1 = grid.u1;
    dom.v0 = grid.v0;
    dom.v1 = grid.v1;
    const auto pts = grid_points(dom, grid.nu, grid.nv);

    const auto t0 = std::chrono::steady_clock::now();
    r.cls = classify(sampler, pts, tol_predicate, threads);
    const auto t1 = std::chrono::steady_clock::now();
    r.wall_time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    r.surface_index = r.cls.surface_index;
    r.matched = expected_verdict.empty() ||
                r.cls.verdict == verdict_from_string(expected_verdict);
    return r;
}

void write_surface_csv(std::ostream& os, const SurfaceSampler& sampler,
                       const std::vector<std::pair<double, double>>& points) {
    os << "u,v";
    for (int i = 1; i <= sampler.sig.dimension; ++i) os << ",x" << i;
    os << "\n";
    for (const auto& [u, v] : points) {
        const AmbientVector x = base_point(sampler.jets(u, v));
        os << fmt(u) << "," << fmt(v);
        for (double c : x.c) os << "," << fmt(c);
        os << "\n";
    }
}

void write_frobenius_csv(std::ostream& os, const FrobeniusSurface& surface) {
    os << "u,v";
    for (int i = 1; i <= surface.c.sig.dimension; ++i) os << ",x" << i;
    os << "\n";
    for (const auto& s : surface.states) {
        os << fmt(s.u) << "," << fmt(s.v);
        for (double c : s.x.c) os << "," << fmt(c);
        os << "\n";
    }
}

void write_liouville_csv(std::ostream& os, const LiouvilleSolution& sol) {
    os << "u,v,w,residual\n";
    for (int i = 0; i < sol.n; ++i) {
        const double u = sol.u0 + (sol.u1 - sol.u0) * i / (sol.n - 1);
        for (int j = 0; j < sol.n; ++j) {
            const double v = sol.v0 + (sol.v1 - sol.v0) * j / (sol.n - 1);
            const std::size_t id = static_cast<std::size_t>(i) * sol.n + j;
            os << fmt(u) << "," << fmt(v) << "," << fmt(sol.w[id]) << ","
               << fmt(sol.residual[id]) << "\n";
        }
    }
}

}  // namespace psgauss
