#include "psgauss/catalog.hpp"

#include <cmath>

namespace psgauss {

namespace {

std::vector<CatalogEntry> build_entries() {
    std::vector<CatalogEntry> out;
    const double nan = std::nan("");

    {
        CatalogEntry e;
        e.name = "clifford";
        e.provenance = "flat minimal torus in a totally geodesic S^3, radius 1/sqrt(2) factors";
        e.source =
            "# Clifford torus in S^3 < E^4\n"
            "dim = 4\n"
            "index = 0\n"
            "surface_index = 0\n"
            "domain = u in [0, 2*pi], v in [0, 2*pi]\n"
            "x1 = cos(u)/sqrt(2)\n"
            "x2 = sin(u)/sqrt(2)\n"
            "x3 = cos(v)/sqrt(2)\n"
            "x4 = sin(v)/sqrt(2)\n";
        e.expected_verdict = Verdict::OneType;
        e.expected_lambda = 2.0;
        e.expected_K = 0.0;
        e.expected_S_h = 2.0;
        e.expected_H_norm = 0.0;
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "lorentz_clifford";
        e.provenance = "flat Lorentzian minimal surface in the de Sitter space S^3_1";
        e.source =
            "# Lorentzian counterpart of the Clifford torus, in S^3_1 < E^4_1\n"
            "dim = 4\n"
            "index = 1\n"
            "surface_index = 1\n"
            "domain = u in [0, 2*pi], v in [-1, 1]\n"
            "x1 = cos(u)/sqrt(2)\n"
            "x2 = sin(u)/sqrt(2)\n"
            "x3 = cosh(v)/sqrt(2)\n"
            "x4 = sinh(v)/sqrt(2)\n";
        e.expected_verdict = Verdict::OneType;
        e.expected_lambda = 2.0;
        e.expected_K = 0.0;
        e.expected_S_h = 2.0;
        e.expected_H_norm = 0.0;
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "tensor_product";
        e.provenance =
            "tensor product of a Euclidean and a Minkowski unit circle, flat Lorentzian "
            "surface in S^3_2";
        e.source =
            "# tensor product surface in S^3_2 < E^4_2\n"
            "dim = 4\n"
            "index = 2\n"
            "surface_index = 1\n"
            "domain = u in [-1, 1], v in [0, 2*pi]\n"
            "x1 = cosh(u)*cos(v)\n"
            "x2 = cosh(u)*sin(v)\n"
            "x3 = sinh(u)*cos(v)\n"
            "x4 = sinh(u)*sin(v)\n";
        e.expected_verdict = Verdict::OneType;
        e.expected_lambda = 2.0;
        e.expected_K = 0.0;
        e.expected_S_h = 2.0;
        e.expected_H_norm = 0.0;
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "lightcone_example";
        e.provenance =
            "ruled Lorentzian surface x = z(u)/(u+v) - z'(u)/2 over a constant speed-2 "
            "curve in the light cone of E^4_1";
        e.source =
            "# light-cone construction over (cos, sin, sinh, cosh)(sqrt(2) u)\n"
            "dim = 4\n"
            "index = 1\n"
            "surface_index = 1\n"
            "domain = u in [0.1, 1], v in [0.1, 1]\n"
            "exclude = u + v = 0\n"
            "x1 = cos(sqrt(2)*u)/(u+v) + sqrt(2)/2*sin(sqrt(2)*u)\n"
            "x2 = sin(sqrt(2)*u)/(u+v) - sqrt(2)/2*cos(sqrt(2)*u)\n"
            "x3 = sinh(sqrt(2)*u)/(u+v) - sqrt(2)/2*cosh(sqrt(2)*u)\n"
            "x4 = cosh(sqrt(2)*u)/(u+v) - sqrt(2)/2*sinh(sqrt(2)*u)\n";
        e.expected_verdict = Verdict::Harmonic;
        e.expected_lambda = 0.0;
        e.expected_K = 1.0;
        e.expected_S_h = 0.0;
        e.expected_H_norm = 0.0;
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "geodesic_sphere";
        e.provenance = "totally geodesic S^2 inside S^4_1";
        e.source =
            "# great 2-sphere in S^4_1 < E^5_1\n"
            "dim = 5\n"
            "index = 1\n"
            "surface_index = 0\n"
            "domain = u in [0, 2*pi], v in [-1.2, 1.2]\n"
            "x1 = cos(u)*cos(v)\n"
            "x2 = sin(u)*cos(v)\n"
            "x3 = sin(v)\n"
            "x4 = 0\n"
            "x5 = 0\n";
        e.expected_verdict = Verdict::Harmonic;
        e.expected_lambda = 0.0;
        e.expected_K = 1.0;
        e.expected_S_h = 0.0;
        e.expected_H_norm = 0.0;
        out.push_back(e);
    }
    {
        CatalogEntry e;
        e.name = "small_sphere";
        e.provenance =
            "round sphere of radius 1/sqrt(2) in S^3: nonzero mean curvature, negative "
            "control for the classifier";
        e.source =
            "# small sphere in S^3 < E^4\n"
            "dim = 4\n"
            "index = 0\n"
            "surface_index = 0\n"
            "domain = u in [0, 2*pi], v in [-1.2, 1.2]\n"
            "x1 = cos(u)*cos(v)/sqrt(2)\n"
            "x2 = sin(u)*cos(v)/sqrt(2)\n"
            "x3 = sin(v)/sqrt(2)\n"
            "x4 = 1/sqrt(2)\n";
        e.expected_verdict = Verdict::Inconclusive;
        e.expected_lambda = nan;
        e.expected_K = 2.0;
        e.expected_S_h = 2.0;
        e.expected_H_norm = 1.0;
        out.push_back(e);
    }
    return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_entries() {
    static const std::vector<CatalogEntry> entries = build_entries();
    return entries;
}

std::vector<std::string> catalog_list() {
    std::vector<std::string> names;
    for (const auto& e : catalog_entries()) names.push_back(e.name);
    return names;
}

bool catalog_has(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return true;
    return false;
}

const CatalogEntry& catalog_get(const std::string& name) {
    for (const auto& e : catalog_entries())
        if (e.name == name) return e;
    throw Error("unknown catalog surface '" + name + "'");
}

}  // namespace psgauss
