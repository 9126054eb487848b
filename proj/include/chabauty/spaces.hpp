#pragma once

// Metric-engine views of closed subgroups of R and C.

#include <memory>

#include "chabauty/metric.hpp"
#include "chabauty/subgroups.hpp"

namespace chabauty {

std::shared_ptr<const SetView> real_view(const ClosedSubgroupR& g);
std::shared_ptr<const SetView> complex_view(const ClosedSubgroupC& c);

/// True if the real direction d lies in the identity component of C.
bool continuous_direction(const ClosedSubgroupC& c, Complex d);

inline Vec3 embed(Complex z, double t = 0) { return {z.real(), z.imag(), t}; }

}  // namespace chabauty
