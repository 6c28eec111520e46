#pragma once

#include <kgon/geometry.hpp>

namespace kgon {

struct SmootherConfig {
  int window = 3;  ///< odd, >= 3
  int passes = 4;  ///< >= 0
};

/// Circular moving average of `window` points, applied `passes` times.
/// Throws Error{BadConfig} for an invalid config and Error{WindowTooLarge}
/// when window >= K.
Contour smooth(const Contour& c, const SmootherConfig& cfg);

}  // namespace kgon
