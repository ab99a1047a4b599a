#pragma once

namespace psgauss {

const char* version();

}  // namespace psgauss
