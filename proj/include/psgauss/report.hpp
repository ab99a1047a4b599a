#pragma once

#include <ostream>
#include <string>

#include "psgauss/constructors.hpp"
#include "psgauss/gaussmap.hpp"

namespace psgauss {

struct GridSpec {
    int nu = 21, nv = 21;
    double u0 = 0, u1 = 1, v0 = 0, v1 = 1;
};

/// Grid-aggregated verification outcome of one surface, serialized as a
/// schema-versioned JSON document.  Two runs with identical inputs produce
/// byte-identical bodies except for the wall_time_ms field.
struct VerificationReport {
    std::string surface;
    std::string provenance;
    int dimension = 0;
    int index = 0;
    int surface_index = 0;
    GridSpec grid;
    double tol_predicate = 1e-7;
    double tol_identity = 1e-8;
    Classification cls;
    std::string expected_verdict;  // empty when no expectation applies
    bool matched = true;
    int threads = 1;
    double wall_time_ms = 0.0;
    // set by the construct commands: constructor name and its stats
    std::string constructor;
    std::vector<std::pair<std::string, double>> constructor_stats;
};

std::string report_to_json(const VerificationReport& report);

VerificationReport verify_surface(const SurfaceSampler& sampler, const GridSpec& grid,
                                  double tol_predicate, double tol_identity,
                                  const std::string& expected_verdict, int threads);

/// CSV with header u,v,x1,...,x{m+1}.
void write_surface_csv(std::ostream& os, const SurfaceSampler& sampler,
                       const std::vector<std::pair<double, double>>& points);

/// CSV with header u,v,x1,... from integrated Frobenius states.
void write_frobenius_csv(std::ostream& os, const FrobeniusSurface& surface);

/// CSV with header u,v,w,residual.
void write_liouville_csv(std::ostream& os, const LiouvilleSolution& solution);

}  // namespace psgauss
