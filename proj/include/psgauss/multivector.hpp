#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "psgauss/vec.hpp"

namespace psgauss {

/// Binomial coefficient; the dimension of grade-k multivectors over an
/// n-dimensional ambient space.
inline int grade_dimension(int n, int k) {
    if (k < 0 || k > n) throw Error("grade out of range");
    long long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return static_cast<int>(r);
}

/// Strictly increasing index tuples of length k into {0,...,n-1},
/// in lexicographic order.
inline std::vector<std::vector<int>> enumerate_blades(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i;
    if (k == 0) {
        out.push_back({});
        return out;
    }
    while (true) {
        out.push_back(cur);
        int j = k - 1;
        while (j >= 0 && cur[j] == n - k + j) --j;
        if (j < 0) break;
        ++cur[j];
        for (int i = j + 1; i < k; ++i) cur[i] = cur[i - 1] + 1;
    }
    return out;
}

/// Lexicographic rank of a strictly increasing tuple.
inline int blade_rank(const std::vector<int>& blade, int n) {
    const int k = static_cast<int>(blade.size());
    int rank = 0, prev = -1;
    for (int j = 0; j < k; ++j) {
        for (int x = prev + 1; x < blade[j]; ++x)
            rank += grade_dimension(n - 1 - x, k - 1 - j);
        prev = blade[j];
    }
    return rank;
}

/// Self inner product of an orthonormal-basis blade: the product of the
/// metric signs of its indices.
inline double blade_metric_sign(const std::vector<int>& blade, const Signature& sig) {
    double s = 1.0;
    for (int i : blade) s *= sig.sign(i);
    return s;
}

/// Element of the grade-k exterior power, stored densely over the
/// lexicographic blade basis.
template <class T>
struct MultiVector {
    Signature sig;
    int grade = 0;
    std::vector<T> c;

    MultiVector() = default;
    MultiVector(Signature s, int k)
        : sig(s), grade(k), c(static_cast<std::size_t>(grade_dimension(s.dimension, k))) {}

    static MultiVector from_vector(const Vec<T>& v) {
        MultiVector m(v.sig, 1);
        m.c = v.c;
        return m;
    }

    MultiVector& operator+=(const MultiVector& o) {
        require_same(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    MultiVector& operator-=(const MultiVector& o) {
        require_same(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend MultiVector operator+(MultiVector a, const MultiVector& b) { return a += b; }
    friend MultiVector operator-(MultiVector a, const MultiVector& b) { return a -= b; }
    friend MultiVector operator-(const MultiVector& a) {
        MultiVector r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }
    template <class S>
    friend MultiVector operator*(const MultiVector& a, const S& s) {
        MultiVector r = a;
        for (auto& x : r.c) x = x * s;
        return r;
    }
    template <class S>
    friend MultiVector operator*(const S& s, const MultiVector& a) {
        return a * s;
    }

    void require_same(const MultiVector& o) const {
        if (sig != o.sig) throw SignatureMismatch("signature mismatch");
        if (grade != o.grade) throw Error("grade mismatch");
    }
};

/// Graded-antisymmetric wedge product.  Blade merge signs are computed by
/// counting inversions between the two sorted index tuples.
template <class T>
MultiVector<T> wedge(const MultiVector<T>& a, const MultiVector<T>& b) {
    if (a.sig != b.sig) throw SignatureMismatch("signature mismatch");
    const int n = a.sig.dimension;
    if (a.grade + b.grade > n) throw Error("wedge grade overflow");
    MultiVector<T> out(a.sig, a.grade + b.grade);
    const auto blades_a = enumerate_blades(n, a.grade);
    const auto blades_b = enumerate_blades(n, b.grade);

    std::vector<int> merged(a.grade + b.grade);
    for (std::size_t ia = 0; ia < blades_a.size(); ++ia) {
        for (std::size_t ib = 0; ib < blades_b.size(); ++ib) {
            const auto& A = blades_a[ia];
            const auto& B = blades_b[ib];
            // inversions between tuples = pairs (x in A, y in B) with y < x
            int inversions = 0;
            bool duplicate = false;
            for (int x : A)
                for (int y : B) {
                    if (y == x) duplicate = true;
                    if (y < x) ++inversions;
                }
            if (duplicate) continue;
            std::merge(A.begin(), A.end(), B.begin(), B.end(), merged.begin());
            const double sign = (inversions % 2 == 0) ? 1.0 : -1.0;
            out.c[blade_rank(merged, n)] += (a.c[ia] * b.c[ib]) * sign;
        }
    }
    return out;
}

template <class T>
MultiVector<T> wedge(const Vec<T>& a, const Vec<T>& b) {
    return wedge(MultiVector<T>::from_vector(a), MultiVector<T>::from_vector(b));
}

/// v1 ^ ... ^ vk; the zero multivector when the list is linearly dependent.
template <class T>
MultiVector<T> decomposable_from_vectors(const std::vector<Vec<T>>& vs) {
    if (vs.empty()) throw Error("empty vector list");
    MultiVector<T> m = MultiVector<T>::from_vector(vs[0]);
    for (std::size_t i = 1; i < vs.size(); ++i)
        m = wedge(m, MultiVector<T>::from_vector(vs[i]));
    return m;
}

/// Induced indefinite inner product on the exterior power.  On the
/// orthonormal blade basis it is diagonal with signs +-1, extended
/// bilinearly; for decomposables it equals the Gram determinant.
template <class T>
T wedge_inner(const MultiVector<T>& a, const MultiVector<T>& b) {
    a.require_same(b);
    const auto blades = enumerate_blades(a.sig.dimension, a.grade);
    T acc{};
    for (std::size_t i = 0; i < blades.size(); ++i)
        acc += (a.c[i] * b.c[i]) * blade_metric_sign(blades[i], a.sig);
    return acc;
}

inline double euclid_norm(const MultiVector<double>& m) {
    double s = 0.0;
    for (double x : m.c) s += x * x;
    return std::sqrt(s);
}

inline double max_abs_coeff(const MultiVector<double>& m) {
    double s = 0.0;
    for (double x : m.c) s = std::max(s, std::abs(x));
    return s;
}

inline MultiVector<double> base_point(const MultiVector<Jet>& m) {
    MultiVector<double> r(m.sig, m.grade);
    for (std::size_t i = 0; i < m.c.size(); ++i) r.c[i] = m.c[i].value();
    return r;
}

}  // namespace psgauss
