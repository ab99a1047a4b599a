#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "psgauss/vec.hpp"

namespace psgauss {

template <class T>
struct OrthoFrame {
    std::vector<Vec<T>> frame;
    std::vector<double> signs;   // <e_i, e_i> in {-1, +1}
    std::vector<int> pivots;     // source index consumed at each step
};

namespace detail {

inline double inv_norm(double q) { return 1.0 / std::sqrt(q); }
inline Jet inv_norm(const Jet& q) { return recip(sqrt(q)); }

inline const AmbientVector& base_of(const AmbientVector& v) { return v; }
inline AmbientVector base_of(const JetVector& v) { return base_point(v); }

/// Component of w orthogonal to an orthonormal set built so far.
template <class T>
Vec<T> project_out(Vec<T> w, const std::vector<Vec<T>>& frame,
                   const std::vector<double>& signs) {
    for (std::size_t j = 0; j < frame.size(); ++j)
        w -= frame[j] * (signs[j] * inner(w, frame[j]));
    return w;
}

/// One pivoted Gram-Schmidt step over `cand`.  All candidates are assumed
/// already orthogonal to `frame`.  Consumes the chosen candidate (erases it)
/// and appends the normalized vector.  When every single candidate is null,
/// falls back to pairwise sums/differences, which recover a usable pivot
/// whenever the candidate span is non-degenerate.
template <class T>
bool gs_step(std::vector<Vec<T>>& cand, std::vector<int>& cand_index,
             std::vector<Vec<T>>& frame, std::vector<double>& signs,
             std::vector<int>& pivots, double tol_sq) {
    int best = -1;
    double best_q = tol_sq;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        const double q = std::abs(base_value(inner(cand[i], cand[i])));
        if (q > best_q) {
            best_q = q;
            best = static_cast<int>(i);
        }
    }
    Vec<T> w;
    int consume = -1;
    if (best >= 0) {
        w = cand[best];
        consume = best;
    } else {
        // Null-pair fallback: w_i + w_j has self-product ~ 2<w_i, w_j>
        // when both candidates are null, so a non-degenerate candidate
        // span always yields a usable pivot here.
        double best_pq = tol_sq;
        int pi = -1;
        for (std::size_t i = 0; i < cand.size(); ++i)
            for (std::size_t j = i + 1; j < cand.size(); ++j) {
                const double cross = base_value(inner(cand[i], cand[j]));
                if (2.0 * std::abs(cross) > best_pq) {
                    best_pq = 2.0 * std::abs(cross);
                    pi = static_cast<int>(i);
                    w = cand[i] + cand[j];
                }
            }
        if (pi < 0) return false;
        consume = pi;
    }
    const T q = inner(w, w);
    const double qb = base_value(q);
    const double sign = qb > 0 ? 1.0 : -1.0;
    const T norm_sq = sign > 0 ? q : -q;
    frame.push_back(w * inv_norm(norm_sq));
    signs.push_back(sign);
    pivots.push_back(cand_index[consume]);
    cand.erase(cand.begin() + consume);
    cand_index.erase(cand_index.begin() + consume);
    return true;
}

template <class T>
double candidate_scale(const std::vector<Vec<T>>& vs) {
    double m = 0.0;
    for (const auto& v : vs) m = std::max(m, max_abs_coord(base_of(v)));
    return m > 0.0 ? m : 1.0;
}

}  // namespace detail

/// Pivoted indefinite Gram-Schmidt.  Produces an orthonormal frame with
/// signs +-1 spanning the same subspace; pivot and sign decisions are taken
/// from base-point values only, so jet-valued input yields frames that are
/// differentiable at the base point.  tol is relative to the largest
/// candidate coordinate.
template <class T>
OrthoFrame<T> orthonormalize(const std::vector<Vec<T>>& vs, double tol = 1e-9) {
    if (vs.empty()) return {};
    std::vector<Vec<T>> cand = vs;
    std::vector<int> cand_index(vs.size());
    for (std::size_t i = 0; i < vs.size(); ++i) cand_index[i] = static_cast<int>(i);

    const double scale = detail::candidate_scale(vs);
    const double tol_sq = tol * scale * scale;

    OrthoFrame<T> out;
    for (std::size_t step = 0; step < vs.size(); ++step) {
        for (auto& w : cand) w = detail::project_out(w, out.frame, out.signs);
        if (!detail::gs_step(cand, cand_index, out.frame, out.signs, out.pivots, tol_sq))
            throw DegenerateSpan("degenerate span: no usable Gram-Schmidt pivot");
    }
    return out;
}

/// Extend an orthonormal set to a full orthonormal basis of the ambient
/// space by pivoted Gram-Schmidt over the standard basis.  The input
/// vectors are returned first, followed by the completion.
template <class T>
OrthoFrame<T> complete_frame(const std::vector<Vec<T>>& partial,
                             const std::vector<double>& partial_signs,
                             double tol = 1e-9) {
    if (partial.empty()) throw Error("complete_frame requires a non-empty partial frame");
    const Signature sig = partial.front().sig;
    OrthoFrame<T> out;
    out.frame = partial;
    out.signs = partial_signs;
    out.pivots.assign(partial.size(), -1);

    std::vector<Vec<T>> cand;
    std::vector<int> cand_index;
    for (int i = 0; i < sig.dimension; ++i) {
        Vec<T> e = Vec<T>::zero(sig);
        e.c[i] = T{} + 1.0;
        cand.push_back(std::move(e));
        cand_index.push_back(i);
    }
    const double tol_sq = tol;  // standard basis has unit scale

    while (static_cast<int>(out.frame.size()) < sig.dimension) {
        for (auto& w : cand) w = detail::project_out(w, out.frame, out.signs);
        if (!detail::gs_step(cand, cand_index, out.frame, out.signs, out.pivots, tol_sq))
            throw DegenerateSpan("degenerate span while completing frame");
    }
    return out;
}

}  // namespace psgauss
