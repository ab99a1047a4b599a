#include "psgauss/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace psgauss {

namespace {

Jet sqrt_abs(const Jet& q) { return sqrt(q.value() < 0.0 ? -q : q); }

/// In-sphere normal projection of an ambient jet-vector field.
JetVector project_normal(const JetVector& w, const Frame& fr) {
    JetVector out = JetVector::zero(w.sig);
    for (std::size_t r = 0; r < fr.normals.size(); ++r)
        out += fr.normals[r] * (fr.normal_eps[r] * inner(w, fr.normals[r]));
    return out;
}

/// Tangent projection coefficients: gamma_l with P_T(w) = sum gamma_l e_l.
std::array<double, 2> tangent_components(const JetVector& w, const Frame& fr) {
    return {fr.eps[0] * base_value(inner(w, fr.tangent[0])),
            fr.eps[1] * base_value(inner(w, fr.tangent[1]))};
}

}  // namespace

JetVector direction_derivative(const JetVector& field, const Jet& a, const Jet& b) {
    JetVector out = derivative_u(field) * a;
    out += derivative_v(field) * b;
    return out;
}

MetricSample first_fundamental_form(const JetVector& xjet) {
    const JetVector xu = derivative_u(xjet);
    const JetVector xv = derivative_v(xjet);
    MetricSample m;
    m.g11 = inner(xu, xu);
    m.g12 = inner(xu, xv);
    m.g22 = inner(xv, xv);
    m.det = m.g11 * m.g22 - m.g12 * m.g12;
    const double scale = std::max({std::abs(m.g11.value()), std::abs(m.g12.value()),
                                   std::abs(m.g22.value()), 1e-300});
    if (std::abs(m.det.value()) < 1e-12 * scale * scale)
        throw DegenerateMetric("induced metric is degenerate at the base point");
    m.surface_index = m.det.value() > 0.0 ? 0 : 1;
    return m;
}

Frame tangent_frame(const JetVector& xjet, const MetricSample& metric, double null_tol) {
    Frame fr;
    fr.metric = metric;
    fr.position = xjet;

    const JetVector xu = derivative_u(xjet);
    const JetVector xv = derivative_v(xjet);

    const double gmax = std::max({std::abs(metric.g11.value()), std::abs(metric.g12.value()),
                                  std::abs(metric.g22.value())});
    const bool fallback = std::abs(metric.g11.value()) < null_tol * gmax;
    fr.null_fallback = fallback;

    // seeds with their chart coefficients
    JetVector s1 = fallback ? xu + xv : xu;
    JetVector s2 = fallback ? xu - xv : xv;
    std::array<Jet, 2> c1 = {Jet(1.0), Jet(fallback ? 1.0 : 0.0)};
    std::array<Jet, 2> c2 = fallback ? std::array<Jet, 2>{Jet(1.0), Jet(-1.0)}
                                     : std::array<Jet, 2>{Jet(0.0), Jet(1.0)};

    const Jet q1 = inner(s1, s1);
    const double eps1 = q1.value() > 0.0 ? 1.0 : -1.0;
    const Jet n1 = recip(sqrt_abs(q1));
    JetVector e1 = s1 * n1;
    std::array<Jet, 2> ce1 = {c1[0] * n1, c1[1] * n1};

    const Jet proj = inner(s2, e1) * eps1;
    JetVector t2 = s2 - e1 * proj;
    std::array<Jet, 2> ct2 = {c2[0] - ce1[0] * proj, c2[1] - ce1[1] * proj};
    const Jet q2 = inner(t2, t2);
    const double eps2 = q2.value() > 0.0 ? 1.0 : -1.0;
    const Jet n2 = recip(sqrt_abs(q2));
    JetVector e2 = t2 * n2;
    std::array<Jet, 2> ce2 = {ct2[0] * n2, ct2[1] * n2};

    if (eps1 < 0.0 && eps2 < 0.0)
        throw DegenerateMetric("surface metric has index 2; only index 0 or 1 is supported");

    fr.tangent = {e1, e2};
    fr.eps = {eps1, eps2};
    fr.coeff = {ce1, ce2};
    if (eps1 < 0.0) {  // spacelike first on Lorentzian surfaces
        std::swap(fr.tangent[0], fr.tangent[1]);
        std::swap(fr.eps[0], fr.eps[1]);
        std::swap(fr.coeff[0], fr.coeff[1]);
    }
    // orient positively against the chart basis (du, dv)
    const double det_chart = fr.coeff[0][0].value() * fr.coeff[1][1].value() -
                             fr.coeff[0][1].value() * fr.coeff[1][0].value();
    if (det_chart < 0.0) {
        fr.tangent[1] = -fr.tangent[1];
        for (auto& c : fr.coeff[1]) c = -c;
    }
    return fr;
}

void attach_normal_frame(Frame& fr, double tol) {
    const std::vector<JetVector> partial = {fr.tangent[0], fr.tangent[1], fr.position};
    const std::vector<double> signs = {fr.eps[0], fr.eps[1], 1.0};
    const auto full = complete_frame(partial, signs, tol);
    fr.normals.assign(full.frame.begin() + 3, full.frame.end());
    fr.normal_eps.assign(full.signs.begin() + 3, full.signs.end());

    if (!fr.normals.empty()) {
        // fixed orientation convention for the completed ambient frame
        const int n = fr.position.sig.dimension;
        std::vector<std::vector<double>> m;
        m.push_back(base_point(fr.position).c);
        m.push_back(base_point(fr.tangent[0]).c);
        m.push_back(base_point(fr.tangent[1]).c);
        for (const auto& nor : fr.normals) m.push_back(base_point(nor).c);
        // determinant by elimination
        double det = 1.0;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
            if (piv != col) {
                std::swap(m[piv], m[col]);
                det = -det;
            }
            det *= m[col][col];
            if (m[col][col] == 0.0) break;
            for (int r = col + 1; r < n; ++r) {
                const double f = m[r][col] / m[col][col];
                for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            }
        }
        if (det < 0.0) fr.normals.back() = -fr.normals.back();
    }
}

Frame build_frame(const JetVector& xjet) {
    Frame fr = tangent_frame(xjet, first_fundamental_form(xjet));
    attach_normal_frame(fr);
    return fr;
}

double intrinsic_curvature(const MetricSample& g) {
    // inverse metric as jets
    const Jet inv_det = recip(g.det);
    const Jet iu[2][2] = {{g.g22 * inv_det, -g.g12 * inv_det},
                          {-g.g12 * inv_det, g.g11 * inv_det}};
    const Jet gm[2][2] = {{g.g11, g.g12}, {g.g12, g.g22}};
    Jet dg[2][2][2];  // dg[k][i][j] = d_k g_ij
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            dg[0][i][j] = derivative_u(gm[i][j]);
            dg[1][i][j] = derivative_v(gm[i][j]);
        }
    Jet gamma[2][2][2];  // gamma[k][i][j] = Gamma^k_{ij}
    for (int k = 0; k < 2; ++k)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                Jet acc;
                for (int l = 0; l < 2; ++l)
                    acc += iu[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                gamma[k][i][j] = acc * 0.5;
            }
    // R(du, dv)dv components: d_u Gamma^l_vv - d_v Gamma^l_uv
    //                         + Gamma^m_vv Gamma^l_um - Gamma^m_uv Gamma^l_vm
    double R[2];
    for (int l = 0; l < 2; ++l) {
        double acc = derivative_u(gamma[l][1][1]).value() - derivative_v(gamma[l][0][1]).value();
        for (int m = 0; m < 2; ++m)
            acc += gamma[m][1][1].value() * gamma[l][0][m].value() -
                   gamma[m][0][1].value() * gamma[l][1][m].value();
        R[l] = acc;
    }
    const double r1212 = g.g11.value() * R[0] + g.g12.value() * R[1];
    return r1212 / g.det.value();
}

double laplace_beltrami(const Jet& f, const MetricSample& g) {
    const double scale = std::max({std::abs(g.g11.value()), std::abs(g.g12.value()),
                                   std::abs(g.g22.value()), 1e-300});
    if (std::abs(g.det.value()) < 1e-12 * scale * scale)
        throw DegenerateMetric("degenerate metric in laplace_beltrami");
    const Jet sq = sqrt_abs(g.det);
    const Jet inv_det = recip(g.det);
    const Jet iuu = g.g22 * inv_det, iuv = -g.g12 * inv_det, ivv = g.g11 * inv_det;
    const Jet fu = derivative_u(f), fv = derivative_v(f);
    const Jet flux_u = sq * (iuu * fu + iuv * fv);
    const Jet flux_v = sq * (iuv * fu + ivv * fv);
    return -(derivative_u(flux_u).value() + derivative_v(flux_v).value()) / sq.value();
}

GeometrySample analyze_geometry(const Frame& fr) {
    GeometrySample out;
    const Signature sig = fr.position.sig;
    const std::size_t nn = fr.normals.size();

    // ambient covariant derivatives of the tangent frame fields
    JetVector accel[2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            accel[i][j] = direction_derivative(fr.tangent[j], fr.coeff[i][0], fr.coeff[i][1]);

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.h[i][j] = project_normal(accel[i][j], fr);

    out.H = (out.h[0][0] * fr.eps[0] + out.h[1][1] * fr.eps[1]) * Jet(0.5);
    out.H_norm2 = base_value(inner(out.H, out.H));

    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto comp = tangent_components(accel[i][j], fr);
            out.conn[i][j][0] = comp[0];
            out.conn[i][j][1] = comp[1];
        }

    // coordinate-basis second fundamental form at the base point
    const JetVector xu = derivative_u(fr.position);
    const JetVector xuu = derivative_u(xu), xuv = derivative_v(xu),
                    xvv = derivative_v(derivative_v(fr.position));
    out.h_coord[0][0] = base_point(project_normal(xuu, fr));
    out.h_coord[0][1] = base_point(project_normal(xuv, fr));
    out.h_coord[1][0] = out.h_coord[0][1];
    out.h_coord[1][1] = base_point(project_normal(xvv, fr));

    // shape operators
    out.shape.resize(nn);
    for (std::size_t r = 0; r < nn; ++r)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                out.shape[r][i][j] = base_value(inner(out.h[i][j], fr.normals[r]));

    // curvature, two routes
    out.K_intrinsic = intrinsic_curvature(fr.metric);
    const double e12 = fr.eps[0] * fr.eps[1];
    const double h11_h22 = base_value(inner(out.h[0][0], out.h[1][1]));
    const double h12_sq = base_value(inner(out.h[0][1], out.h[0][1]));
    out.K_extrinsic = 1.0 + e12 * (h11_h22 - h12_sq);
    out.res_gauss = std::abs(out.K_intrinsic - out.K_extrinsic);
    out.S = 2.0 * out.K_intrinsic;

    out.S_h = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.S_h += fr.eps[i] * fr.eps[j] * base_value(inner(out.h[i][j], out.h[i][j]));

    // normal curvature via shape-operator commutators
    for (std::size_t r = 0; r < nn; ++r)
        for (std::size_t s = r + 1; s < nn; ++s) {
            double acc = 0.0;
            for (int j = 0; j < 2; ++j)
                acc += fr.eps[j] * (out.shape[s][0][j] * out.shape[r][j][1] -
                                    out.shape[r][0][j] * out.shape[s][j][1]);
            out.rd_commutator.push_back(acc);
        }

    // normal curvature from derivatives of the normal connection forms
    if (nn > 0) {
        std::vector<std::vector<Jet>> wu(nn, std::vector<Jet>(nn)), wv = wu;
        for (std::size_t r = 0; r < nn; ++r) {
            const JetVector dru = derivative_u(fr.normals[r]);
            const JetVector drv = derivative_v(fr.normals[r]);
            for (std::size_t s = 0; s < nn; ++s) {
                wu[r][s] = inner(dru, fr.normals[s]);
                wv[r][s] = inner(drv, fr.normals[s]);
            }
        }
        const double jac = fr.coeff[0][0].value() * fr.coeff[1][1].value() -
                           fr.coeff[0][1].value() * fr.coeff[1][0].value();
        for (std::size_t r = 0; r < nn; ++r)
            for (std::size_t s = r + 1; s < nn; ++s) {
                double acc = derivative_u(wv[r][s]).value() - derivative_v(wu[r][s]).value();
                for (std::size_t t = 0; t < nn; ++t)
                    acc += fr.normal_eps[t] * (wv[r][t].value() * wu[t][s].value() -
                                               wu[r][t].value() * wv[t][s].value());
                out.rd_direct.push_back(jac * acc);
            }
    }
    out.res_ricci = 0.0;
    for (std::size_t k = 0; k < out.rd_commutator.size(); ++k)
        out.res_ricci = std::max(out.res_ricci,
                                 std::abs(out.rd_commutator[k] - out.rd_direct[k]));

    // scalar curvature identity S = 2 + 4<H,H> - S_h
    out.res_scalar = std::abs(out.S - 2.0 - 4.0 * out.H_norm2 + out.S_h);

    // mean curvature derivative in the normal bundle
    for (int i = 0; i < 2; ++i) {
        const JetVector dH = direction_derivative(out.H, fr.coeff[i][0], fr.coeff[i][1]);
        out.DH[i] = base_point(project_normal(dH, fr));
    }

    // Codazzi residual: symmetry of the covariant derivative of h
    AmbientVector nabla_h[2][2][2];
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                const JetVector dh =
                    direction_derivative(out.h[j][k], fr.coeff[i][0], fr.coeff[i][1]);
                AmbientVector term = base_point(project_normal(dh, fr));
                const auto cj = tangent_components(accel[i][j], fr);
                const auto ck = tangent_components(accel[i][k], fr);
                for (int l = 0; l < 2; ++l) {
                    term -= base_point(out.h[l][k]) * cj[l];
                    term -= base_point(out.h[j][l]) * ck[l];
                }
                nabla_h[i][j][k] = term;
            }
    out.res_codazzi = 0.0;
    for (int k = 0; k < 2; ++k)
        out.res_codazzi = std::max(
            out.res_codazzi, euclid_norm(nabla_h[0][1][k] - nabla_h[1][0][k]));

    // frame orthonormality residual over the completed ambient frame
    std::vector<const JetVector*> all = {&fr.tangent[0], &fr.tangent[1]};
    std::vector<double> all_eps = {fr.eps[0], fr.eps[1]};
    for (std::size_t r = 0; r < nn; ++r) {
        all.push_back(&fr.normals[r]);
        all_eps.push_back(fr.normal_eps[r]);
    }
    all.push_back(&fr.position);
    all_eps.push_back(1.0);
    for (std::size_t a = 0; a < all.size(); ++a)
        for (std::size_t b = a; b < all.size(); ++b) {
            const double expect = a == b ? all_eps[a] : 0.0;
            out.frame_residual =
                std::max(out.frame_residual,
                         std::abs(base_value(inner(*all[a], *all[b])) - expect));
        }
    (void)sig;
    return out;
}

}  // namespace psgauss
