#pragma once

#include <cstdlib>

#include "psgauss/error.hpp"

namespace psgauss {

/// Metric signature of a pseudo-Euclidean space: `dimension` coordinates,
/// of which the last `index` are timelike.  Spacelike coordinates come
/// first, timelike last.
struct Signature {
    int dimension = 0;
    int index = 0;

    Signature() = default;
    Signature(int dim, int idx) : dimension(dim), index(idx) {
        if (dim <= 0 || idx < 0 || idx > dim)
            throw Error("invalid signature (" + std::to_string(dim) + "," +
                        std::to_string(idx) + ")");
    }

    /// +1 for spacelike coordinate i, -1 for timelike (0-based).
    double sign(int i) const { return i < dimension - index ? 1.0 : -1.0; }

    bool operator==(const Signature& o) const {
        return dimension == o.dimension && index == o.index;
    }
    bool operator!=(const Signature& o) const { return !(*this == o); }
};

enum class CausalClass { Spacelike, Timelike, Lightlike };

inline const char* to_string(CausalClass c) {
    switch (c) {
        case CausalClass::Spacelike: return "spacelike";
        case CausalClass::Timelike: return "timelike";
        default: return "lightlike";
    }
}

}  // namespace psgauss
