#pragma once

// Shared surface sources for the test suites (the library catalog is
// exercised separately; these keep unit tests self-contained).

namespace test_surfaces {

inline const char* kClifford =
    "dim = 4\n"
    "index = 0\n"
    "surface_index = 0\n"
    "domain = u in [0, 2*pi], v in [0, 2*pi]\n"
    "x1 = cos(u)/sqrt(2)\n"
    "x2 = sin(u)/sqrt(2)\n"
    "x3 = cos(v)/sqrt(2)\n"
    "x4 = sin(v)/sqrt(2)\n";

inline const char* kLorentzClifford =
    "dim = 4\n"
    "index = 1\n"
    "surface_index = 1\n"
    "domain = u in [0, 2*pi], v in [-1, 1]\n"
    "x1 = cos(u)/sqrt(2)\n"
    "x2 = sin(u)/sqrt(2)\n"
    "x3 = cosh(v)/sqrt(2)\n"
    "x4 = sinh(v)/sqrt(2)\n";

inline const char* kTensorProduct =
    "dim = 4\n"
    "index = 2\n"
    "surface_index = 1\n"
    "domain = u in [-1, 1], v in [0, 2*pi]\n"
    "x1 = cosh(u)*cos(v)\n"
    "x2 = cosh(u)*sin(v)\n"
    "x3 = sinh(u)*cos(v)\n"
    "x4 = sinh(u)*sin(v)\n";

inline const char* kLightconeExample =
    "dim = 4\n"
    "index = 1\n"
    "surface_index = 1\n"
    "domain = u in [0.1, 1], v in [0.1, 1]\n"
    "exclude = u + v = 0\n"
    "x1 = cos(sqrt(2)*u)/(u+v) + sqrt(2)/2*sin(sqrt(2)*u)\n"
    "x2 = sin(sqrt(2)*u)/(u+v) - sqrt(2)/2*cos(sqrt(2)*u)\n"
    "x3 = sinh(sqrt(2)*u)/(u+v) - sqrt(2)/2*cosh(sqrt(2)*u)\n"
    "x4 = cosh(sqrt(2)*u)/(u+v) - sqrt(2)/2*sinh(sqrt(2)*u)\n";

inline const char* kGeodesicSphere =
    "dim = 5\n"
    "index = 1\n"
    "surface_index = 0\n"
    "domain = u in [0, 2*pi], v in [-1.2, 1.2]\n"
    "x1 = cos(u)*cos(v)\n"
    "x2 = sin(u)*cos(v)\n"
    "x3 = sin(v)\n"
    "x4 = 0\n"
    "x5 = 0\n";

inline const char* kSmallSphere =
    "dim = 4\n"
    "index = 0\n"
    "surface_index = 0\n"
    "domain = u in [0, 2*pi], v in [-1.2, 1.2]\n"
    "x1 = cos(u)*cos(v)/sqrt(2)\n"
    "x2 = sin(u)*cos(v)/sqrt(2)\n"
    "x3 = sin(v)/sqrt(2)\n"
    "x4 = 1/sqrt(2)\n";

}  // namespace test_surfaces
