#pragma once

#include <cstddef>

#include "stoptime/bitstring.hpp"

namespace stoptime {

inline constexpr std::size_t kDefaultDepthMax = 16;

/// Global bound on vertex depth. Starts at kDefaultDepthMax, or at the value
/// of the STOPTIME_DEPTH_MAX environment variable when that is set.
std::size_t depth_max();

/// Overrides the bound for the rest of the process.
void set_depth_max(std::size_t bound);

/// Throws DepthExceeded if `depth` is above depth_max().
void check_depth_bound(std::size_t depth);

/// Throws DepthExceeded if `v` is longer than `depth` (or than depth_max()).
void check_vertex(const BitString& v, std::size_t depth);

}  // namespace stoptime
