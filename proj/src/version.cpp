#include "psgauss/version.hpp"

namespace psgauss {

const char* version() { return "0.1.0"; }

}  // namespace psgauss
