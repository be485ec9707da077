#include "pcn/ifc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pcn {

IfcRegion ifc_region(const ChannelConfig& cfg) {
  validate_config(cfg);
  const double h13 = cfg.gain(1, 3), h14 = cfg.gain(1, 4);
  const double h23 = cfg.gain(2, 3), h24 = cfg.gain(2, 4);
  if (!(h14 <= h24) || !(h23 <= h13)) {
    throw StrongInterferenceError("outside strong-interference regime: need h14 <= h24 and h23 <= h13 (h14=" +
                                  std::to_string(h14) + ", h24=" + std::to_string(h24) +
                                  ", h23=" + std::to_string(h23) + ", h13=" + std::to_string(h13) + ")");
  }
  const double p1 = cfg.power(1), p2 = cfg.power(2);
  const double n3 = cfg.noise(3), n4 = cfg.noise(4);
  IfcRegion r;
  r.bound_r1 = capacity(h14 * p1 / n4);
  r.bound_r2 = capacity(h23 * p2 / n3);
  r.bound_sum = std::min(capacity((h14 * p1 + h24 * p2) / n4), capacity((h23 * p2 + h13 * p1) / n3));
  return r;
}

RateRegion ifc_frontier(const IfcRegion& region) {
  for (double v : {region.bound_r1, region.bound_r2, region.bound_sum}) {
    if (!std::isfinite(v) || v < 0) throw ValidationError({"IFC bounds must be finite and >= 0"});
  }
  const auto corners = polygon_corners(region.bound_r1, region.bound_r2, region.bound_sum);
  return pareto_extract(corners, Provenance::ifc);
}

}  // namespace pcn
