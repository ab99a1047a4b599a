#pragma once

#include <string>
#include <vector>

#include "psgauss/gaussmap.hpp"
#include "psgauss/immersion.hpp"

namespace psgauss {

/// Built-in surface with its expected classification, used by the test
/// suites and the CLI.  `expected_lambda` is NaN when the entry is not
/// 1-type (or harmonic, where it is 0).
struct CatalogEntry {
    std::string name;
    std::string provenance;
    std::string source;  // surface definition text
    Verdict expected_verdict = Verdict::Inconclusive;
    double expected_lambda = 0.0;
    double expected_K = 0.0;
    double expected_S_h = 0.0;
    double expected_H_norm = 0.0;  // Euclidean norm of the mean curvature

    ImmersionSpec spec() const { return parse_surface(source); }
};

const std::vector<CatalogEntry>& catalog_entries();
std::vector<std::string> catalog_list();
const CatalogEntry& catalog_get(const std::string& name);
bool catalog_has(const std::string& name);

}  // namespace psgauss
