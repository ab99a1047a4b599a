#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <cmath>

#include "psgauss/constructors.hpp"

namespace psgauss {

namespace {

struct Mesh {
    int n;  // nodes per side
    double u0, u1, v0, v1;
    double hu, hv;

    double u(int i) const { return u0 + hu * i; }
    double v(int j) const { return v0 + hv * j; }
    bool interior(int i, int j) const { return i > 0 && j > 0 && i < n - 1 && j < n - 1; }
    int interior_id(int i, int j) const { return (i - 1) * (n - 2) + (j - 1); }
    std::size_t node(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }
};

double laplace5(const Mesh& m, const std::vector<double>& w, int i, int j) {
    const double cu = 1.0 / (m.hu * m.hu), cv = 1.0 / (m.hv * m.hv);
    return cu * (w[m.node(i - 1, j)] - 2.0 * w[m.node(i, j)] + w[m.node(i + 1, j)]) +
           cv * (w[m.node(i, j - 1)] - 2.0 * w[m.node(i, j)] + w[m.node(i, j + 1)]);
}

/// Fourth difference along one axis, central where possible and shifted
/// within two nodes of the edge; feeds the defect estimate for the
/// correction pass.  The shifted band is first-order accurate, which is
/// enough: it perturbs the O(h^2) defect, not the solution itself.
double fourth_diff(const std::vector<double>& w, const Mesh& m, int i, int j, bool along_u) {
    const int pos = along_u ? i : j;
    const int base = std::max(0, std::min(pos - 2, m.n - 5));
    double vals[5];
    for (int k = 0; k < 5; ++k) {
        const int p = base + k;
        vals[k] = along_u ? w[m.node(p, j)] : w[m.node(i, p)];
    }
    const double acc = vals[0] - 4.0 * vals[1] + 6.0 * vals[2] - 4.0 * vals[3] + vals[4];
    const double h = along_u ? m.hu : m.hv;
    return acc / (h * h * h * h);
}

struct NewtonResult {
    int iterations = 0;
    std::vector<double> history;
};

/// Newton iteration on the 5-point discretization of
///   Delta_0 w + e^{2w} + defect = 0
/// with fixed boundary values already stored in `w`.
/// Discrete harmonic extension of the boundary values: a single linear
/// solve that places the Newton start on the branch of the boundary data
/// (the nonlinearity also admits a concentrated "bubble" solution, which a
/// zero initial guess tends to find instead).
void harmonic_extension(const Mesh& m, std::vector<double>& w) {
    const int n = m.n;
    const int unknowns = (n - 2) * (n - 2);
    const double cu = 1.0 / (m.hu * m.hu), cv = 1.0 / (m.hv * m.hv);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(unknowns) * 5);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(unknowns);
    for (int i = 1; i < n - 1; ++i)
        for (int j = 1; j < n - 1; ++j) {
            const int id = m.interior_id(i, j);
            trip.emplace_back(id, id, -2.0 * (cu + cv));
            const auto side = [&](int ii, int jj, double coeff) {
                if (m.interior(ii, jj))
                    trip.emplace_back(id, m.interior_id(ii, jj), coeff);
                else
                    rhs[id] -= coeff * w[m.node(ii, jj)];
            };
            side(i - 1, j, cu);
            side(i + 1, j, cu);
            side(i, j - 1, cv);
            side(i, j + 1, cv);
        }
    Eigen::SparseMatrix<double> L(unknowns, unknowns);
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(L);
    if (lu.info() != Eigen::Success) throw Error("harmonic extension solve failed");
    const Eigen::VectorXd sol = lu.solve(rhs);
    for (int i = 1; i < n - 1; ++i)
        for (int j = 1; j < n - 1; ++j) w[m.node(i, j)] = sol[m.interior_id(i, j)];
}

NewtonResult newton_solve(const Mesh& m, std::vector<double>& w,
                          const std::vector<double>& defect, const LiouvilleOptions& opts,
                          std::vector<double>& history) {
    const int n = m.n;
    const int unknowns = (n - 2) * (n - 2);
    const double cu = 1.0 / (m.hu * m.hu), cv = 1.0 / (m.hv * m.hv);

    Eigen::SparseMatrix<double> J(unknowns, unknowns);
    Eigen::VectorXd rhs(unknowns), delta(unknowns);
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(unknowns) * 5);

    NewtonResult result;
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        double fmax = 0.0;
        for (int i = 1; i < n - 1; ++i)
            for (int j = 1; j < n - 1; ++j) {
                const double f = laplace5(m, w, i, j) + std::exp(2.0 * w[m.node(i, j)]) +
                                 defect[m.node(i, j)];
                rhs[m.interior_id(i, j)] = -f;
                fmax = std::max(fmax, std::abs(f));
            }
        history.push_back(fmax);
        if (!std::isfinite(fmax) || fmax > 1e12)
            throw NonConvergence("Liouville Newton iteration diverged (blow-up regime)",
                                 history);

        trip.clear();
        for (int i = 1; i < n - 1; ++i)
            for (int j = 1; j < n - 1; ++j) {
                const int id = m.interior_id(i, j);
                trip.emplace_back(id, id,
                                  -2.0 * (cu + cv) + 2.0 * std::exp(2.0 * w[m.node(i, j)]));
                if (m.interior(i - 1, j)) trip.emplace_back(id, m.interior_id(i - 1, j), cu);
                if (m.interior(i + 1, j)) trip.emplace_back(id, m.interior_id(i + 1, j), cu);
                if (m.interior(i, j - 1)) trip.emplace_back(id, m.interior_id(i, j - 1), cv);
                if (m.interior(i, j + 1)) trip.emplace_back(id, m.interior_id(i, j + 1), cv);
            }
        J.setFromTriplets(trip.begin(), trip.end());

        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(J);
        if (lu.info() != Eigen::Success)
            throw NonConvergence("singular Jacobian in Liouville Newton step", history);
        delta = lu.solve(rhs);

        double dmax = 0.0;
        for (int i = 1; i < n - 1; ++i)
            for (int j = 1; j < n - 1; ++j) {
                w[m.node(i, j)] += delta[m.interior_id(i, j)];
                dmax = std::max(dmax, std::abs(delta[m.interior_id(i, j)]));
            }
        ++result.iterations;
        if (dmax <= opts.tol) {
            result.history = history;
            return result;
        }
    }
    throw NonConvergence("Liouville Newton iteration did not converge after " +
                             std::to_string(opts.max_iter) + " steps",
                         history);
}

}  // namespace

LiouvilleSolution liouville_solve(double u0, double u1, double v0, double v1,
                                  const std::function<double(double, double)>& boundary_w,
                                  int n, const LiouvilleOptions& opts) {
    if (n < 9) throw Error("liouville_solve needs at least a 9x9 grid");
    const int refine = std::max(1, opts.refine);

    Mesh m;
    m.n = (n - 1) * refine + 1;
    m.u0 = u0;
    m.u1 = u1;
    m.v0 = v0;
    m.v1 = v1;
    m.hu = (u1 - u0) / (m.n - 1);
    m.hv = (v1 - v0) / (m.n - 1);

    std::vector<double> w(static_cast<std::size_t>(m.n) * m.n, 0.0);
    for (int i = 0; i < m.n; ++i)
        for (int j = 0; j < m.n; ++j)
            if (!m.interior(i, j)) w[m.node(i, j)] = boundary_w(m.u(i), m.v(j));

    std::vector<double> defect(w.size(), 0.0);
    std::vector<double> history;

    if (opts.initial) {
        for (int i = 1; i < m.n - 1; ++i)
            for (int j = 1; j < m.n - 1; ++j) w[m.node(i, j)] = opts.initial(m.u(i), m.v(j));
    } else {
        harmonic_extension(m, w);
    }
    NewtonResult base = newton_solve(m, w, defect, opts, history);
    int iterations = base.iterations;

    if (opts.deferred_correction) {
        // defect = (h^2/12)(w_uuuu + w_vvvv) from the converged iterate;
        // re-solving with it raises the scheme to fourth order
        for (int i = 1; i < m.n - 1; ++i)
            for (int j = 1; j < m.n - 1; ++j)
                defect[m.node(i, j)] =
                    -(m.hu * m.hu / 12.0) * fourth_diff(w, m, i, j, true) -
                    (m.hv * m.hv / 12.0) * fourth_diff(w, m, i, j, false);
        NewtonResult corrected = newton_solve(m, w, defect, opts, history);
        iterations += corrected.iterations;
    }

    LiouvilleSolution sol;
    sol.n = n;
    sol.u0 = u0;
    sol.u1 = u1;
    sol.v0 = v0;
    sol.v1 = v1;
    sol.newton_iterations = iterations;
    sol.residual_history = history;
    sol.w.resize(static_cast<std::size_t>(n) * n);
    sol.residual.resize(sol.w.size(), 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int fi = i * refine, fj = j * refine;
            sol.w[static_cast<std::size_t>(i) * n + j] = w[m.node(fi, fj)];
            if (m.interior(fi, fj))
                sol.residual[static_cast<std::size_t>(i) * n + j] =
                    laplace5(m, w, fi, fj) + std::exp(2.0 * w[m.node(fi, fj)]) +
                    defect[m.node(fi, fj)];
        }
    return sol;
}

ExprPtr stereographic_mu(double alpha) {
    // 2 alpha / (1 + alpha^2 (u^2 + v^2))
    const ExprPtr u = make_var_u(), v = make_var_v();
    const ExprPtr r2 = make_binary(ExprOp::Add, make_pow_int(u, 2), make_pow_int(v, 2));
    const ExprPtr denom = make_binary(
        ExprOp::Add, make_constant(1.0),
        make_binary(ExprOp::Mul, make_constant(alpha * alpha), r2));
    return make_binary(ExprOp::Div, make_constant(2.0 * alpha), denom);
}

}  // namespace psgauss
