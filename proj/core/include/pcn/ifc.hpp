#pragma once

#include "pcn/channel.hpp"
#include "pcn/error.hpp"
#include "pcn/rate_region.hpp"

namespace pcn {

/// Capacity region of the non-collaborating interference channel under
/// strong interference: r1 ≤ bound_r1, r2 ≤ bound_r2, r1 + r2 ≤ bound_sum.
struct IfcRegion {
  double bound_r1 = 0, bound_r2 = 0, bound_sum = 0;
};

class StrongInterferenceError : public ComputationError {
 public:
  using ComputationError::ComputationError;
};

/// Requires h14 ≤ h24 and h23 ≤ h13; throws StrongInterferenceError
/// otherwise, since the formula is not the capacity region there.
IfcRegion ifc_region(const ChannelConfig& cfg);

RateRegion ifc_frontier(const IfcRegion& region);

}  // namespace pcn
