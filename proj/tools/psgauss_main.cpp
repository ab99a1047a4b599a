#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "psgauss/catalog.hpp"
#include "psgauss/constructors.hpp"
#include "psgauss/report.hpp"
#include "psgauss/version.hpp"

using namespace psgauss;

namespace {

struct VerifyArgs {
    std::string surface;
    std::string grid = "21x21";
    std::string u_range, v_range;
    double tol = 1e-7;
    double identity_tol = 1e-8;
    std::string out, csv, expect;
    int threads = 1;
};

std::pair<int, int> parse_grid(const std::string& text) {
    int nu = 0, nv = 0;
    if (std::sscanf(text.c_str(), "%dx%d", &nu, &nv) != 2 || nu < 1 || nv < 1)
        throw ValidationError("bad --grid '" + text + "', expected NxM");
    return {nu, nv};
}

std::pair<double, double> parse_range(const std::string& text) {
    double a = 0, b = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf", &a, &b) != 2 || !(a < b))
        throw ValidationError("bad range '" + text + "', expected a:b with a < b");
    return {a, b};
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream os(path);
    if (!os) throw Error("cannot open '" + path + "' for writing");
    os << body;
}

void emit_report(const VerificationReport& report, const std::string& out) {
    const std::string body = report_to_json(report);
    if (out.empty())
        std::cout << body;
    else
        write_text(out, body);
}

int finish_verify(const VerificationReport& report, const std::string& out) {
    emit_report(report, out);
    if (!report.matched) {
        std::cerr << "verdict '" << to_string(report.cls.verdict) << "' does not match expected '"
                  << report.expected_verdict << "'\n";
        return 1;
    }
    return 0;
}

int cmd_verify(const VerifyArgs& args) {
    ImmersionSpec spec;
    std::string provenance;
    std::string expected = args.expect;
    if (catalog_has(args.surface)) {
        const auto& entry = catalog_get(args.surface);
        spec = entry.spec();
        provenance = entry.provenance;
        if (expected.empty()) expected = to_string(entry.expected_verdict);
    } else {
        std::ifstream in(args.surface);
        if (!in) throw ValidationError("no catalog entry or readable file named '" +
                                       args.surface + "'");
        std::stringstream ss;
        ss << in.rdbuf();
        spec = parse_surface(ss.str());
        provenance = "user surface file";
    }

    GridSpec grid;
    std::tie(grid.nu, grid.nv) = parse_grid(args.grid);
    grid.u0 = spec.domain.u0;
    grid.u1 = spec.domain.u1;
    grid.v0 = spec.domain.v0;
    grid.v1 = spec.domain.v1;
    if (!args.u_range.empty()) std::tie(grid.u0, grid.u1) = parse_range(args.u_range);
    if (!args.v_range.empty()) std::tie(grid.v0, grid.v1) = parse_range(args.v_range);

    const auto sampler = make_sampler(spec, args.surface);
    VerificationReport report =
        verify_surface(sampler, grid, args.tol, args.identity_tol, expected, args.threads);
    report.provenance = provenance;

    if (!args.csv.empty()) {
        ChartDomain dom;
        dom.u0 = grid.u0;
        dom.u1 = grid.u1;
        dom.v0 = grid.v0;
        dom.v1 = grid.v1;
        std::ofstream os(args.csv);
        if (!os) throw Error("cannot open '" + args.csv + "'");
        write_surface_csv(os, sampler, grid_points(dom, grid.nu, grid.nv));
    }
    return finish_verify(report, args.out);
}

int map_exception(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const ValidationError*>(&e) ||
        dynamic_cast<const DomainError*>(&e) || dynamic_cast<const SignatureMismatch*>(&e))
        return 2;
    return 3;  // numerical degeneracy / non-convergence / internal
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pseudo-spherical Gauss map toolkit: verify surfaces in S^m_s(1), "
                 "classify their Gauss maps, and build the characterized families"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    // ---- verify ----------------------------------------------------------
    VerifyArgs vargs;
    auto* verify = app.add_subcommand(
        "verify", "run the full pipeline on a catalog surface or a surface file");
    verify->add_option("surface", vargs.surface, "catalog name or surface file")->required();
    verify->add_option("--grid", vargs.grid, "sample grid NxM (default 21x21)");
    verify->add_option("--u", vargs.u_range, "u range a:b (default: chart domain)");
    verify->add_option("--v", vargs.v_range, "v range a:b");
    verify->add_option("--tol", vargs.tol, "predicate tolerance (default 1e-7)");
    verify->add_option("--identity-tol", vargs.identity_tol,
                       "identity-residual tolerance (default 1e-8)");
    verify->add_option("--out", vargs.out, "write the JSON report here (default stdout)");
    verify->add_option("--csv", vargs.csv, "also dump sampled points as CSV");
    verify->add_option("--expect", vargs.expect,
                       "expected verdict (overrides the catalog expectation)");
    verify->add_option("--threads", vargs.threads, "worker threads (default 1)");

    // ---- construct -------------------------------------------------------
    auto* construct = app.add_subcommand("construct", "run one of the surface constructors");
    construct->require_subcommand(1);

    double li_alpha = 1.0;
    int li_n = 65;
    std::string li_domain = "-1:1";
    LiouvilleOptions li_opts;
    std::string li_out, li_report;
    auto* liouville = construct->add_subcommand(
        "liouville", "solve the conformal-factor equation Delta w + e^{2w} = 0 with "
                     "boundary data from the closed stereographic family");
    liouville->add_option("--alpha", li_alpha, "family parameter (default 1)");
    liouville->add_option("--n", li_n, "output grid nodes per side (default 65)");
    liouville->add_option("--domain", li_domain, "square domain a:b (default -1:1)");
    liouville->add_option("--tol", li_opts.tol, "Newton tolerance on max |update|");
    liouville->add_option("--max-iter", li_opts.max_iter, "Newton iteration cap");
    liouville->add_option("--refine", li_opts.refine, "internal mesh refinement factor");
    liouville->add_flag_callback("--no-dc", [&] { li_opts.deferred_correction = false; },
                                 "disable the fourth-order defect correction");
    liouville->add_option("--out", li_out, "CSV output u,v,w,residual");
    liouville->add_option("--report", li_report, "JSON report file (default stdout)");

    std::string fr_mu = "stereographic";
    double fr_alpha = 1.0, fr_step = 1e-3;
    std::string fr_to = "0.5,0.5", fr_grid = "6x6", fr_out, fr_report;
    auto* frobenius = construct->add_subcommand(
        "frobenius", "integrate the harmonic-Gauss-map system from the reference "
                     "initial data in E^5_1 and classify the result");
    frobenius->add_option("--mu", fr_mu, "conformal factor: 'stereographic' or an expression");
    frobenius->add_option("--alpha", fr_alpha, "stereographic family parameter");
    frobenius->add_option("--step", fr_step, "RK4 step (default 1e-3)");
    frobenius->add_option("--to", fr_to, "target corner U,V (default 0.5,0.5)");
    frobenius->add_option("--grid", fr_grid, "classification grid over [0,U]x[0,V]");
    frobenius->add_option("--out", fr_out, "CSV output of the sampled surface");
    frobenius->add_option("--report", fr_report, "JSON report file (default stdout)");

    std::string lc_curve, lc_out, lc_csv, lc_report;
    std::string lc_grid = "21x21";
    auto* lightcone = construct->add_subcommand(
        "lightcone", "build x = z(u)/(u+v) - z'(u)/2 from a validated light-cone curve");
    lightcone->add_option("--curve", lc_curve,
                          "curve file, or 'example' for the built-in one")->required();
    lightcone->add_option("--grid", lc_grid, "verification grid");
    lightcone->add_option("--out", lc_out, "write the built surface definition here");
    lightcone->add_option("--csv", lc_csv, "CSV sample dump");
    lightcone->add_option("--report", lc_report, "JSON report file (default stdout)");

    std::string l2_branch = "index2", l2_out, l2_csv, l2_report;
    double l2_a = 2.0;
    auto* lemma2 = construct->add_subcommand(
        "lemma2", "closed-form flat Lorentzian surfaces with zero mean curvature");
    lemma2->add_option("--branch", l2_branch, "'index2' or 'desitter'");
    lemma2->add_option("--a", l2_a, "system parameter a > 0 (index2 branch)");
    lemma2->add_option("--out", l2_out, "write the surface definition here");
    lemma2->add_option("--csv", l2_csv, "CSV sample dump");
    lemma2->add_option("--report", l2_report, "JSON report file (default stdout)");

    // ---- catalog ---------------------------------------------------------
    auto* catalog = app.add_subcommand("catalog", "list or export the built-in surfaces");
    catalog->require_subcommand(1);
    auto* list = catalog->add_subcommand("list", "print catalog names with expectations");
    std::string exp_name, exp_out;
    auto* exporter = catalog->add_subcommand("export", "emit a surface definition file");
    exporter->add_option("name", exp_name, "catalog entry")->required();
    exporter->add_option("--out", exp_out, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(vargs);

        if (liouville->parsed()) {
            const auto [a, b] = parse_range(li_domain);
            const auto boundary = [li_alpha](double u, double v) {
                return std::log(2.0 * li_alpha /
                                (1.0 + li_alpha * li_alpha * (u * u + v * v)));
            };
            li_opts.initial = boundary;  // stay on the branch of the family
            const auto sol = liouville_solve(a, b, a, b, boundary, li_n, li_opts);
            double err = 0.0, res = 0.0;
            for (int i = 0; i < sol.n; ++i)
                for (int j = 0; j < sol.n; ++j) {
                    const double u = a + (b - a) * i / (sol.n - 1);
                    const double v = a + (b - a) * j / (sol.n - 1);
                    err = std::max(err,
                                   std::abs(sol.at(i, j) - boundary(u, v)));
                    res = std::max(res, std::abs(sol.residual[i * sol.n + j]));
                }
            if (!li_out.empty()) {
                std::ofstream os(li_out);
                if (!os) throw Error("cannot open '" + li_out + "'");
                write_liouville_csv(os, sol);
            }
            nlohmann::ordered_json j;
            j["schema"] = 1;
            j["tool"] = "psgauss";
            j["version"] = version();
            j["constructor"] = nlohmann::ordered_json{
                {"name", "liouville"},
                {"alpha", li_alpha},
                {"n", sol.n},
                {"refine", li_opts.refine},
                {"newton_iterations", sol.newton_iterations},
                {"max_residual", res},
                {"max_error_vs_closed_form", err},
            };
            const std::string body = j.dump(2) + "\n";
            if (li_report.empty())
                std::cout << body;
            else
                write_text(li_report, body);
            return 0;
        }

        if (frobenius->parsed()) {
            double tu = 0, tv = 0;
            if (std::sscanf(fr_to.c_str(), "%lf,%lf", &tu, &tv) != 2)
                throw ValidationError("bad --to '" + fr_to + "', expected U,V");
            const ExprPtr mu = fr_mu == "stereographic" ? stereographic_mu(fr_alpha)
                                                        : parse_expression(fr_mu);
            const Signature sig(5, 1);
            FrobeniusState init;
            init.x = AmbientVector(sig, {1, 0, 0, 0, 0});
            const double mu0 = eval_expr<double>(mu, 0.0, 0.0);
            init.xu = AmbientVector(sig, {0, mu0, 0, 0, 0});
            init.xv = AmbientVector(sig, {0, 0, mu0, 0, 0});
            const AmbientVector c(sig, {0, 0, 0, 1, 1});

            const auto run =
                frobenius_integrate(mu, c, init, {{tu, 0.0}, {tu, tv}}, fr_step);
            const auto [gnu, gnv] = parse_grid(fr_grid);
            const auto surf = frobenius_grid(mu, c, init, tu, gnu, tv, gnv, fr_step);
            if (!fr_out.empty()) {
                std::ofstream os(fr_out);
                if (!os) throw Error("cannot open '" + fr_out + "'");
                write_frobenius_csv(os, surf);
            }
            GridSpec grid{gnu, gnv, 0.0, tu, 0.0, tv};
            VerificationReport report = verify_surface(surf.sampler(), grid, 1e-4, 1e-6,
                                                       "harmonic", 1);
            report.provenance = "frobenius integration of the harmonic system";
            report.constructor = "frobenius";
            report.constructor_stats = {
                {"step", fr_step},
                {"path_drift", run.max_drift},
                {"grid_drift", surf.max_drift},
            };
            return finish_verify(report, fr_report);
        }

        if (lightcone->parsed()) {
            std::string source;
            if (lc_curve == "example") {
                source = lightcone_example_curve_source();
            } else {
                std::ifstream in(lc_curve);
                if (!in) throw ValidationError("cannot read curve file '" + lc_curve + "'");
                std::stringstream ss;
                ss << in.rdbuf();
                source = ss.str();
            }
            const auto curve = parse_curve(source);
            const auto val = lightcone_validate(curve);
            const auto spec = lightcone_build(curve);
            if (!lc_out.empty()) write_text(lc_out, render_surface(spec));

            const auto [gnu, gnv] = parse_grid(lc_grid);
            GridSpec grid{gnu, gnv, spec.domain.u0, spec.domain.u1, spec.domain.v0,
                          spec.domain.v1};
            const auto sampler = make_sampler(spec, "lightcone");
            if (!lc_csv.empty()) {
                std::ofstream os(lc_csv);
                if (!os) throw Error("cannot open '" + lc_csv + "'");
                write_surface_csv(os, sampler, grid_points(spec.domain, gnu, gnv));
            }
            VerificationReport report =
                verify_surface(sampler, grid, 1e-7, 1e-8, "harmonic", 1);
            report.provenance = "light-cone construction";
            report.constructor = "lightcone";
            report.constructor_stats = {
                {"curve_position_residual", val.max_position_residual},
                {"curve_speed_residual", val.max_speed_residual},
                {"curve_accel_residual", val.max_accel_residual},
                {"curve_min_jerk", val.min_jerk_norm},
            };
            return finish_verify(report, lc_report);
        }

        if (lemma2->parsed()) {
            const auto spec = lemma2_closed_form(l2_a, l2_branch);
            if (!l2_out.empty()) write_text(l2_out, render_surface(spec));
            const auto sampler = make_sampler(spec, "lemma2:" + l2_branch);
            GridSpec grid{21, 21, spec.domain.u0, spec.domain.u1, spec.domain.v0,
                          spec.domain.v1};
            if (!l2_csv.empty()) {
                std::ofstream os(l2_csv);
                if (!os) throw Error("cannot open '" + l2_csv + "'");
                write_surface_csv(os, sampler, grid_points(spec.domain, 21, 21));
            }
            VerificationReport report =
                verify_surface(sampler, grid, 1e-7, 1e-8, "one_type", 1);
            report.provenance = "closed-form flat Lorentzian surface";
            report.constructor = "lemma2";
            report.constructor_stats = {{"a", l2_a}};
            if (l2_branch == "index2") {
                const auto res = lemma2_system_residuals(spec, l2_a, 0.2, -0.1);
                report.constructor_stats.emplace_back("system_residual_uu", res.uu);
                report.constructor_stats.emplace_back("system_residual_uv", res.uv);
                report.constructor_stats.emplace_back("system_residual_vv", res.vv);
                report.constructor_stats.emplace_back("normal_unit_residual", res.xi_unit);
            }
            return finish_verify(report, l2_report);
        }

        if (list->parsed()) {
            for (const auto& e : catalog_entries())
                std::cout << e.name << "  [" << to_string(e.expected_verdict) << "]  "
                          << e.provenance << "\n";
            return 0;
        }
        if (exporter->parsed()) {
            if (!catalog_has(exp_name))
                throw ValidationError("unknown catalog surface '" + exp_name + "'");
            const auto& entry = catalog_get(exp_name);
            if (exp_out.empty())
                std::cout << entry.source;
            else
                write_text(exp_out, entry.source);
            return 0;
        }
    } catch (const std::exception& e) {
        return map_exception(e);
    }
    return 0;
}
