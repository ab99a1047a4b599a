#pragma once

#include <cmath>
#include <initializer_list>
#include <vector>

#include "psgauss/jet.hpp"
#include "psgauss/signature.hpp"

namespace psgauss {

inline double base_value(double x) { return x; }
inline double base_value(const Jet& x) { return x.value(); }

/// A vector of the pseudo-Euclidean ambient space, with scalar type T
/// (double for plain vectors, Jet for vector fields over a chart).
template <class T>
struct Vec {
    Signature sig;
    std::vector<T> c;

    Vec() = default;
    Vec(Signature s, std::vector<T> coords) : sig(s), c(std::move(coords)) {
        if (static_cast<int>(c.size()) != sig.dimension)
            throw Error("coordinate count does not match signature dimension");
    }
    static Vec zero(Signature s) { return Vec(s, std::vector<T>(s.dimension, T{})); }

    int dim() const { return sig.dimension; }

    Vec& operator+=(const Vec& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        check(o);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator-(const Vec& a) {
        Vec r = a;
        for (auto& x : r.c) x = -x;
        return r;
    }
    template <class S>
    friend Vec operator*(const Vec& a, const S& s) {
        Vec r = a;
        for (auto& x : r.c) x = x * s;
        return r;
    }
    template <class S>
    friend Vec operator*(const S& s, const Vec& a) {
        return a * s;
    }

    void check(const Vec& o) const {
        if (sig != o.sig) throw SignatureMismatch("signature mismatch");
    }
};

using AmbientVector = Vec<double>;
using JetVector = Vec<Jet>;

/// Indefinite inner product: spacelike coordinates add, timelike subtract.
template <class T>
T inner(const Vec<T>& u, const Vec<T>& v) {
    u.check(v);
    T acc{};
    const int split = u.sig.dimension - u.sig.index;
    for (int i = 0; i < split; ++i) acc += u.c[i] * v.c[i];
    for (int i = split; i < u.sig.dimension; ++i) acc -= u.c[i] * v.c[i];
    return acc;
}

/// Euclidean norm of the coordinate array (used for residuals, where the
/// indefinite norm could vanish on nonzero errors).
inline double euclid_norm(const AmbientVector& v) {
    double s = 0.0;
    for (double x : v.c) s += x * x;
    return std::sqrt(s);
}

inline double max_abs_coord(const AmbientVector& v) {
    double m = 0.0;
    for (double x : v.c) m = std::max(m, std::abs(x));
    return m;
}

/// Causal character with the zero vector classified spacelike.
inline CausalClass causal_character(const AmbientVector& v, double tol = 1e-9) {
    if (max_abs_coord(v) < tol) return CausalClass::Spacelike;
    const double q = inner(v, v);
    if (q > tol) return CausalClass::Spacelike;
    if (q < -tol) return CausalClass::Timelike;
    return CausalClass::Lightlike;
}

/// Base-point values of a jet-valued vector.
inline AmbientVector base_point(const JetVector& v) {
    std::vector<double> r(v.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = v.c[i].value();
    return AmbientVector(v.sig, std::move(r));
}

inline JetVector derivative_u(const JetVector& v) {
    JetVector r = v;
    for (auto& x : r.c) x = derivative_u(x);
    return r;
}

inline JetVector derivative_v(const JetVector& v) {
    JetVector r = v;
    for (auto& x : r.c) x = derivative_v(x);
    return r;
}

inline JetVector promote(const AmbientVector& v) {
    std::vector<Jet> r(v.c.size());
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = Jet(v.c[i]);
    return JetVector(v.sig, std::move(r));
}

/// Embed into a larger ambient space: `extra_space` zero spacelike
/// coordinates appended before the timelike block, `extra_time` zero
/// timelike coordinates appended after it.
template <class T>
Vec<T> pad(const Vec<T>& v, int extra_space, int extra_time) {
    Signature s(v.sig.dimension + extra_space + extra_time, v.sig.index + extra_time);
    std::vector<T> c(s.dimension, T{});
    const int old_split = v.sig.dimension - v.sig.index;
    for (int i = 0; i < old_split; ++i) c[i] = v.c[i];
    for (int i = old_split; i < v.sig.dimension; ++i) c[i + extra_space] = v.c[i];
    return Vec<T>(s, std::move(c));
}

}  // namespace psgauss
