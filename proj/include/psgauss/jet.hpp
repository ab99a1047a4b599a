#pragma once

#include <array>
#include <cmath>

#include "psgauss/error.hpp"

namespace psgauss {

/// Truncated bivariate Taylor expansion of a scalar function of (u,v)
/// around a base point, up to total order 3.  Coefficient c(a,b) multiplies
/// du^a dv^b, so the partial d^{a+b}f / du^a dv^b equals a! b! c(a,b).
///
/// All arithmetic is filtration-preserving: coefficients of total order k
/// in a result depend only on coefficients of order <= k in the operands,
/// so an operand whose top-order terms are unknown (e.g. the derivative of
/// another jet) still yields exact lower-order output.
struct Jet {
    static constexpr int kOrder = 3;
    static constexpr int kTerms = 10;

    std::array<double, kTerms> c{};

    Jet() = default;
    explicit Jet(double value) { c[idx(0, 0)] = value; }

    /// Rank of monomial du^a dv^b in the coefficient array.
    static constexpr int idx(int a, int b) {
        constexpr int off[4] = {0, 4, 7, 9};
        return off[a] + b;
    }

    static Jet constant(double value) { return Jet(value); }

    /// Seed for the chart coordinate u at base value u0.
    static Jet variable_u(double u0) {
        Jet j(u0);
        j.c[idx(1, 0)] = 1.0;
        return j;
    }

    /// Seed for the chart coordinate v at base value v0.
    static Jet variable_v(double v0) {
        Jet j(v0);
        j.c[idx(0, 1)] = 1.0;
        return j;
    }

    double value() const { return c[idx(0, 0)]; }

    /// a! b! c(a,b); the mixed partial of the represented function.
    double partial(int a, int b) const {
        if (a < 0 || b < 0 || a + b > kOrder)
            throw Error("jet partial order out of range");
        static constexpr double fact[4] = {1.0, 1.0, 2.0, 6.0};
        return fact[a] * fact[b] * c[idx(a, b)];
    }

    Jet operator-() const {
        Jet r;
        for (int i = 0; i < kTerms; ++i) r.c[i] = -c[i];
        return r;
    }

    Jet& operator+=(const Jet& o) {
        for (int i = 0; i < kTerms; ++i) c[i] += o.c[i];
        return *this;
    }
    Jet& operator-=(const Jet& o) {
        for (int i = 0; i < kTerms; ++i) c[i] -= o.c[i];
        return *this;
    }
    Jet& operator*=(double s) {
        for (int i = 0; i < kTerms; ++i) c[i] *= s;
        return *this;
    }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double b) { a.c[0] += b; return a; }
    friend Jet operator+(double a, Jet b) { b.c[0] += a; return b; }
    friend Jet operator-(Jet a, double b) { a.c[0] -= b; return a; }
    friend Jet operator-(double a, const Jet& b) { Jet r = -b; r.c[0] += a; return r; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

    /// Truncated Cauchy product.
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet r;
        for (int a1 = 0; a1 <= kOrder; ++a1)
            for (int b1 = 0; a1 + b1 <= kOrder; ++b1) {
                const double x = a.c[idx(a1, b1)];
                if (x == 0.0) continue;
                for (int a2 = 0; a1 + a2 + b1 <= kOrder; ++a2)
                    for (int b2 = 0; a1 + a2 + b1 + b2 <= kOrder; ++b2)
                        r.c[idx(a1 + a2, b1 + b2)] += x * b.c[idx(a2, b2)];
            }
        return r;
    }

    friend Jet operator/(const Jet& a, const Jet& b);
};

/// f(a) for an elementary f given its derivatives at the constant term of a.
/// Exact at the truncation order since (a - a0)^4 vanishes in the algebra.
inline Jet jet_compose(double f0, double f1, double f2, double f3, const Jet& a) {
    Jet w = a;
    w.c[0] = 0.0;
    const Jet w2 = w * w;
    const Jet w3 = w2 * w;
    Jet r = f1 * w + (f2 / 2.0) * w2 + (f3 / 6.0) * w3;
    r.c[0] += f0;
    return r;
}

inline Jet sin(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return jet_compose(s, c, -s, -c, a);
}
inline Jet cos(const Jet& a) {
    const double s = std::sin(a.value()), c = std::cos(a.value());
    return jet_compose(c, -s, -c, s, a);
}
inline Jet sinh(const Jet& a) {
    const double s = std::sinh(a.value()), c = std::cosh(a.value());
    return jet_compose(s, c, s, c, a);
}
inline Jet cosh(const Jet& a) {
    const double s = std::sinh(a.value()), c = std::cosh(a.value());
    return jet_compose(c, s, c, s, a);
}
inline Jet exp(const Jet& a) {
    const double e = std::exp(a.value());
    return jet_compose(e, e, e, e, a);
}
inline Jet log(const Jet& a) {
    const double x = a.value();
    if (!(x > 0.0)) throw FunctionDomainError("log of non-positive jet");
    return jet_compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), a);
}
inline Jet sqrt(const Jet& a) {
    const double x = a.value();
    if (!(x > 0.0)) throw FunctionDomainError("sqrt of non-positive jet");
    const double s = std::sqrt(x);
    return jet_compose(s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x), a);
}

/// Reciprocal 1/a; requires a nonzero constant term.
inline Jet recip(const Jet& a) {
    const double x = a.value();
    if (x == 0.0) throw FunctionDomainError("division by jet with zero constant term");
    const double i = 1.0 / x;
    return jet_compose(i, -i * i, 2.0 * i * i * i, -6.0 * i * i * i * i, a);
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }
inline Jet operator/(double a, const Jet& b) { return a * recip(b); }

/// a^n for integer n (repeated multiplication; negative n via reciprocal).
inline Jet pow_int(const Jet& a, int n) {
    if (n < 0) return recip(pow_int(a, -n));
    Jet r(1.0);
    Jet base = a;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r = r * base;
        base = base * base;
    }
    return r;
}

/// Jet of the u-partial.  The result's top-order coefficients are unknown
/// and set to zero; see the filtration note on Jet.
inline Jet derivative_u(const Jet& a) {
    Jet r;
    for (int p = 0; p < Jet::kOrder; ++p)
        for (int b = 0; p + b < Jet::kOrder; ++b)
            r.c[Jet::idx(p, b)] = (p + 1) * a.c[Jet::idx(p + 1, b)];
    return r;
}

inline Jet derivative_v(const Jet& a) {
    Jet r;
    for (int a1 = 0; a1 < Jet::kOrder; ++a1)
        for (int b = 0; a1 + b < Jet::kOrder; ++b)
            r.c[Jet::idx(a1, b)] = (b + 1) * a.c[Jet::idx(a1, b + 1)];
    return r;
}

/// Exchange the roles of u and v (jet of f(v,u)).
inline Jet swap_uv(const Jet& a) {
    Jet r;
    for (int p = 0; p <= Jet::kOrder; ++p)
        for (int q = 0; p + q <= Jet::kOrder; ++q)
            r.c[Jet::idx(q, p)] = a.c[Jet::idx(p, q)];
    return r;
}

inline Jet abs_base(const Jet& a) { return a.value() < 0.0 ? -a : a; }

}  // namespace psgauss
