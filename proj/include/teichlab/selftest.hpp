#pragma once

#include <cstdint>

#include "teichlab/json_io.hpp"

namespace teichlab {

// Quick invariant checks for every module. The report lists each property with its
// residual and tolerance; "passed" is true when all of them hold.
Json runSelftest(std::uint64_t seed);

}  // namespace teichlab
