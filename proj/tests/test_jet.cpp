#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "doctest.h"
#include "psgauss/jet.hpp"

using namespace psgauss;

namespace {

Jet poly_from_coeffs(const std::map<std::pair<int, int>, double>& coeffs) {
    Jet j;
    for (const auto& [ab, value] : coeffs)
        if (ab.first + ab.second <= Jet::kOrder) j.c[Jet::idx(ab.first, ab.second)] = value;
    return j;
}

/// Central finite differences of a scalar function, for cross-checking
/// jet-extracted partials.  Nested first central stencils, evaluated in
/// extended precision so the stencil's rounding floor stays far below the
/// comparison tolerance at h = 1e-4.
long double fd_partial(const std::function<long double(long double, long double)>& f,
                       long double u, long double v, int a, int b, long double h) {
    if (a > 0) {
        auto g = [&](long double uu, long double vv) {
            return fd_partial(f, uu, vv, a - 1, b, h);
        };
        return (g(u + h, v) - g(u - h, v)) / (2 * h);
    }
    if (b > 0) {
        auto g = [&](long double uu, long double vv) {
            return fd_partial(f, uu, vv, a, b - 1, h);
        };
        return (g(u, v + h) - g(u, v - h)) / (2 * h);
    }
    return f(u, v);
}

}  // namespace

TEST_CASE("jet arithmetic on the spec examples") {
    const Jet u = Jet::variable_u(0.0);
    const Jet v = Jet::variable_v(0.0);

    SUBCASE("u*v has a single mixed coefficient") {
        const Jet p = u * v;
        for (int a = 0; a + 0 <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b)
                CHECK(p.c[Jet::idx(a, b)] == (a == 1 && b == 1 ? 1.0 : 0.0));
    }

    SUBCASE("(1+u)/(1+u) is the constant jet 1") {
        const Jet q = (1.0 + u) / (1.0 + u);
        CHECK(q.c[Jet::idx(0, 0)] == doctest::Approx(1.0).epsilon(1e-15));
        for (int i = 1; i < Jet::kTerms; ++i) CHECK(q.c[i] == doctest::Approx(0.0).epsilon(1e-15));
    }

    SUBCASE("(1+u)(1-u+u^2-u^3) truncates to 1") {
        const Jet p = (1.0 + u) * (1.0 - u + u * u - u * u * u);
        CHECK(p.c[Jet::idx(0, 0)] == 1.0);
        for (int a = 1; a <= 3; ++a) CHECK(p.c[Jet::idx(a, 0)] == 0.0);
    }
}

TEST_CASE("jet composition of elementary functions") {
    const Jet u = Jet::variable_u(0.0);

    SUBCASE("sin at u, base 0") {
        const Jet s = sin(u);
        CHECK(s.c[Jet::idx(0, 0)] == 0.0);
        CHECK(s.c[Jet::idx(1, 0)] == 1.0);
        CHECK(s.c[Jet::idx(2, 0)] == 0.0);
        CHECK(s.c[Jet::idx(3, 0)] == doctest::Approx(-1.0 / 6.0));
    }
    SUBCASE("exp of the zero jet") {
        const Jet e = exp(Jet(0.0));
        CHECK(e.value() == 1.0);
        for (int i = 1; i < Jet::kTerms; ++i) CHECK(e.c[i] == 0.0);
    }
    SUBCASE("cosh at u, base 0") {
        const Jet ch = cosh(u);
        CHECK(ch.c[Jet::idx(0, 0)] == 1.0);
        CHECK(ch.c[Jet::idx(1, 0)] == 0.0);
        CHECK(ch.c[Jet::idx(2, 0)] == doctest::Approx(0.5));
        CHECK(ch.c[Jet::idx(3, 0)] == 0.0);
    }
    SUBCASE("domain violations") {
        CHECK_THROWS_AS(log(Jet(0.0)), FunctionDomainError);
        CHECK_THROWS_AS(sqrt(Jet(-1.0)), FunctionDomainError);
        CHECK_THROWS_AS(Jet(1.0) / Jet(0.0), FunctionDomainError);
    }
}

TEST_CASE("extract_partial") {
    SUBCASE("u^2 v, order (2,1)") {
        const Jet u = Jet::variable_u(0.0);
        const Jet v = Jet::variable_v(0.0);
        const Jet p = u * u * v;
        CHECK(p.partial(2, 1) == 2.0);
    }
    SUBCASE("order (0,0) is the constant term") {
        const Jet s = sin(Jet::variable_u(0.7)) * cosh(Jet::variable_v(0.2));
        CHECK(s.partial(0, 0) == s.value());
    }
    SUBCASE("second derivative of sin at pi/2") {
        const Jet s = sin(Jet::variable_u(M_PI / 2));
        CHECK(s.partial(2, 0) == doctest::Approx(-1.0).epsilon(1e-14));
    }
    SUBCASE("order overflow") {
        CHECK_THROWS_AS(Jet(1.0).partial(2, 2), Error);
    }
}

TEST_CASE("jet arithmetic reproduces truncated polynomial algebra exactly") {
    std::mt19937 rng(20240811);
    std::uniform_int_distribution<int> coeff(-4, 4);
    for (int iter = 0; iter < 200; ++iter) {
        std::map<std::pair<int, int>, double> p, q, sum, prod;
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b) {
                p[{a, b}] = coeff(rng);
                q[{a, b}] = coeff(rng);
            }
        for (const auto& [ab, x] : p) sum[ab] = x + q[ab];
        for (const auto& [ab1, x1] : p)
            for (const auto& [ab2, x2] : q) {
                const int a = ab1.first + ab2.first, b = ab1.second + ab2.second;
                if (a + b <= 3) prod[{a, b}] += x1 * x2;
            }
        const Jet jp = poly_from_coeffs(p), jq = poly_from_coeffs(q);
        const Jet js = jp + jq, jm = jp * jq;
        for (int a = 0; a <= 3; ++a)
            for (int b = 0; a + b <= 3; ++b) {
                CHECK(js.c[Jet::idx(a, b)] == sum[{a, b}]);
                CHECK(jm.c[Jet::idx(a, b)] == prod[{a, b}]);
            }
    }
}

TEST_CASE("jet partials agree with central finite differences") {
    struct Case {
        std::function<Jet(Jet, Jet)> jet_f;
        std::function<long double(long double, long double)> val_f;
    };
    const std::vector<Case> cases = {
        {[](Jet u, Jet v) { return sin(u * v + 0.3) * cosh(v) + exp(0.2 * u); },
         [](long double u, long double v) {
             return std::sin(u * v + 0.3L) * std::cosh(v) + std::exp(0.2L * u);
         }},
        {[](Jet u, Jet v) { return log(2.0 + u * u + v) / sqrt(1.0 + v * v); },
         [](long double u, long double v) {
             return std::log(2.0L + u * u + v) / std::sqrt(1.0L + v * v);
         }},
        {[](Jet u, Jet v) { return sinh(u - 0.5 * v) * cos(v) + pow_int(1.0 + u * v, 3); },
         [](long double u, long double v) {
             return std::sinh(u - 0.5L * v) * std::cos(v) + std::pow(1.0L + u * v, 3.0L);
         }},
    };
    const long double h = 1e-4L;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pt(-0.4, 0.4);
    for (const auto& cs : cases) {
        for (int rep = 0; rep < 5; ++rep) {
            const double u0 = pt(rng), v0 = pt(rng);
            const Jet j = cs.jet_f(Jet::variable_u(u0), Jet::variable_v(v0));
            for (int a = 0; a <= 3; ++a)
                for (int b = 0; a + b <= 3; ++b) {
                    if (a + b == 0) continue;
                    const double exact = j.partial(a, b);
                    const double approx =
                        static_cast<double>(fd_partial(cs.val_f, u0, v0, a, b, h));
                    const double scale = std::max(1.0, std::abs(exact));
                    const double tol = (a + b <= 2) ? 1e-6 : 1e-4;
                    CHECK(std::abs(exact - approx) / scale <= tol);
                }
        }
    }
}

TEST_CASE("Leibniz rule is exact on integer jets") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> coeff(-3, 3);
    for (int iter = 0; iter < 100; ++iter) {
        Jet f, g;
        for (int i = 0; i < Jet::kTerms; ++i) {
            f.c[i] = coeff(rng);
            g.c[i] = coeff(rng);
        }
        const Jet lhs_u = derivative_u(f * g);
        const Jet rhs_u = derivative_u(f) * g + f * derivative_u(g);
        const Jet lhs_v = derivative_v(f * g);
        const Jet rhs_v = derivative_v(f) * g + f * derivative_v(g);
        // only orders <= 2 survive one differentiation
        for (int a = 0; a <= 2; ++a)
            for (int b = 0; a + b <= 2; ++b) {
                CHECK(lhs_u.partial(a, b) == rhs_u.partial(a, b));
                CHECK(lhs_v.partial(a, b) == rhs_v.partial(a, b));
            }
    }
}

TEST_CASE("derivative and swap helpers") {
    const Jet u = Jet::variable_u(0.3);
    const Jet v = Jet::variable_v(-0.2);
    const Jet f = sin(u) * cosh(v);
    const Jet fu = derivative_u(f);
    CHECK(fu.value() == doctest::Approx(std::cos(0.3) * std::cosh(-0.2)).epsilon(1e-14));
    const Jet fs = swap_uv(f);
    CHECK(fs.partial(1, 0) == f.partial(0, 1));
    CHECK(fs.partial(2, 1) == f.partial(1, 2));
}
