#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pcn/channel.hpp"

namespace pcn {

enum class Provenance { pdf, ifc, custom };

std::string_view to_string(Provenance p);
/// Throws ValidationError for anything but "pdf", "ifc" or "custom".
Provenance provenance_from_string(std::string_view s);

/// A rate pair plus, for swept regions, the split that achieves it.
struct TaggedPoint {
  RatePair rate;
  std::optional<SplitParams> witness;
};

/// Achievable (R1, R2) region described by its Pareto frontier.
///
/// The frontier is sorted by r1 ascending with r2 strictly decreasing, and no
/// point dominates another. The region is everything on or below the piecewise
/// linear interpolation of the frontier (time sharing between achievable
/// points is achievable), clipped to r1 ≤ max r1 and r ≥ 0.
class RateRegion {
 public:
  RateRegion() = default;

  /// Adopts an already-reduced frontier. Throws ValidationError if the
  /// ordering or non-domination invariants do not hold.
  static RateRegion from_frontier(std::vector<RatePair> frontier, Provenance provenance,
                                  std::vector<std::optional<SplitParams>> witnesses = {});

  const std::vector<RatePair>& frontier() const { return frontier_; }
  /// Same length as frontier(); entries are empty for non-swept regions.
  const std::vector<std::optional<SplitParams>>& witnesses() const { return witnesses_; }
  Provenance provenance() const { return provenance_; }
  bool empty() const { return frontier_.empty(); }

  /// Frontier plus the two axis intercepts (0, max r2) and (max r1, 0),
  /// without duplicates. This is the polyline a plot draws.
  std::vector<RatePair> boundary() const;

  double max_r1() const;
  double max_r2() const;

  /// Largest r2 with (r1, r2) in the region; -inf when r1 lies beyond max r1.
  double upper_r2(double r1) const;
  /// Largest r1 with (r1, r2) in the region; -inf when r2 lies above max r2.
  double upper_r1(double r2) const;

  bool contains(RatePair p, double tol = 1e-12) const;

  /// How far `p` sits outside the region: the smaller of the distances it must
  /// move along r1 alone or along r2 alone to enter. Zero for contained points.
  double excess(RatePair p) const;

 private:
  std::vector<RatePair> frontier_;
  std::vector<std::optional<SplitParams>> witnesses_;
  Provenance provenance_ = Provenance::custom;
};

/// Absolute tolerance used for de-duplication and domination.
inline constexpr double kFrontierTol = 1e-12;

/// Removes dominated points, sorts by r1 ascending and merges points equal
/// within kFrontierTol. Empty input gives an empty region. Throws
/// ValidationError for negative or non-finite points.
RateRegion pareto_extract(std::span<const RatePair> points, Provenance provenance = Provenance::custom);
RateRegion pareto_extract(std::span<const TaggedPoint> points, Provenance provenance = Provenance::custom);

/// Drops frontier points that lie on or below the chord between their
/// neighbours, leaving the upper concave hull reachable by time sharing.
RateRegion time_sharing_hull(const RateRegion& region);

/// Largest r with (r, r) in the region, by bisection. Throws ValidationError
/// for an empty region.
double equal_rate_point(const RateRegion& region);

/// Non-dominated vertices of {r1 ≤ b1, r2 ≤ b2, r1 + r2 ≤ bsum, r ≥ 0}
/// together with the axis intercepts: (min(b1,bs), 0), the two sum-face
/// corners, and (0, min(b2,bs)). Negative bounds are clamped to zero.
std::vector<RatePair> polygon_corners(double b1, double b2, double bsum);

}  // namespace pcn
