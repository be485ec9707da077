#include "pcn/rate_region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pcn/error.hpp"

namespace pcn {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_point(const RatePair& p) {
  if (!std::isfinite(p.r1) || !std::isfinite(p.r2) || p.r1 < 0 || p.r2 < 0) {
    throw ValidationError({"rate point (" + std::to_string(p.r1) + ", " + std::to_string(p.r2) +
                           ") must be finite and >= 0"});
  }
}

// Linear interpolation along a polyline sorted by x ascending.
double interpolate(const std::vector<RatePair>& pts, double x, bool swap) {
  auto xs = [swap](const RatePair& p) { return swap ? p.r2 : p.r1; };
  auto ys = [swap](const RatePair& p) { return swap ? p.r1 : p.r2; };
  if (pts.empty() || x > xs(pts.back())) return kNegInf;
  if (x <= xs(pts.front())) return ys(pts.front());
  auto hi = std::lower_bound(pts.begin(), pts.end(), x,
                             [&](const RatePair& p, double v) { return xs(p) < v; });
  auto lo = std::prev(hi);
  const double x0 = xs(*lo), x1 = xs(*hi);
  if (x1 <= x0) return std::max(ys(*lo), ys(*hi));
  const double t = (x - x0) / (x1 - x0);
  return ys(*lo) + t * (ys(*hi) - ys(*lo));
}

}  // namespace

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::pdf: return "pdf";
    case Provenance::ifc: return "ifc";
    case Provenance::custom: return "custom";
  }
  return "custom";
}

Provenance provenance_from_string(std::string_view s) {
  if (s == "pdf") return Provenance::pdf;
  if (s == "ifc") return Provenance::ifc;
  if (s == "custom") return Provenance::custom;
  throw ValidationError({"unknown provenance '" + std::string(s) + "'"});
}

RateRegion RateRegion::from_frontier(std::vector<RatePair> frontier, Provenance provenance,
                                     std::vector<std::optional<SplitParams>> witnesses) {
  for (const auto& p : frontier) check_point(p);
  for (std::size_t i = 1; i < frontier.size(); ++i) {
    if (!(frontier[i].r1 > frontier[i - 1].r1) || !(frontier[i].r2 < frontier[i - 1].r2)) {
      throw ValidationError({"frontier point " + std::to_string(i) +
                             " breaks the r1-ascending / r2-descending order"});
    }
  }
  if (witnesses.empty()) witnesses.resize(frontier.size());
  if (witnesses.size() != frontier.size()) {
    throw ValidationError({"witness list length does not match frontier"});
  }
  RateRegion r;
  r.frontier_ = std::move(frontier);
  r.witnesses_ = std::move(witnesses);
  r.provenance_ = provenance;
  return r;
}

std::vector<RatePair> RateRegion::boundary() const {
  std::vector<RatePair> out;
  if (frontier_.empty()) return out;
  if (frontier_.front().r1 > 0) out.push_back({0.0, frontier_.front().r2});
  out.insert(out.end(), frontier_.begin(), frontier_.end());
  if (frontier_.back().r2 > 0) out.push_back({frontier_.back().r1, 0.0});
  return out;
}

double RateRegion::max_r1() const { return frontier_.empty() ? 0.0 : frontier_.back().r1; }
double RateRegion::max_r2() const { return frontier_.empty() ? 0.0 : frontier_.front().r2; }

double RateRegion::upper_r2(double r1) const { return interpolate(frontier_, r1, false); }

double RateRegion::upper_r1(double r2) const {
  std::vector<RatePair> rev(frontier_.rbegin(), frontier_.rend());
  return interpolate(rev, r2, true);
}

bool RateRegion::contains(RatePair p, double tol) const {
  if (frontier_.empty()) return false;
  if (p.r1 < -tol || p.r2 < -tol) return false;
  const double r1 = std::max(p.r1, 0.0);
  if (r1 > max_r1() + tol) return false;
  return p.r2 <= interpolate(frontier_, std::min(r1, max_r1()), false) + tol;
}

double RateRegion::excess(RatePair p) const {
  if (contains(p, 0.0)) return 0.0;
  const double up2 = upper_r2(std::max(p.r1, 0.0));
  const double up1 = upper_r1(std::max(p.r2, 0.0));
  const double e2 = std::isfinite(up2) ? p.r2 - up2 : std::numeric_limits<double>::infinity();
  const double e1 = std::isfinite(up1) ? p.r1 - up1 : std::numeric_limits<double>::infinity();
  return std::max(0.0, std::min(e1, e2));
}

RateRegion pareto_extract(std::span<const RatePair> points, Provenance provenance) {
  std::vector<TaggedPoint> tagged;
  tagged.reserve(points.size());
  for (const auto& p : points) tagged.push_back({p, std::nullopt});
  return pareto_extract(tagged, provenance);
}

RateRegion pareto_extract(std::span<const TaggedPoint> points, Provenance provenance) {
  for (const auto& p : points) check_point(p.rate);
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& pa = points[a].rate;
    const auto& pb = points[b].rate;
    if (pa.r1 != pb.r1) return pa.r1 > pb.r1;
    return pa.r2 > pb.r2;
  });

  // Sweep from the right: keep a point only if it beats every r2 seen so far.
  std::vector<TaggedPoint> kept;
  double best_r2 = kNegInf;
  for (std::size_t idx : order) {
    const auto& p = points[idx];
    if (p.rate.r2 <= best_r2 + kFrontierTol) continue;
    if (!kept.empty() && kept.back().rate.r1 - p.rate.r1 <= kFrontierTol) {
      kept.back() = p;  // same r1 within tolerance, higher r2 wins
    } else {
      kept.push_back(p);
    }
    best_r2 = p.rate.r2;
  }
  std::reverse(kept.begin(), kept.end());

  std::vector<RatePair> frontier;
  std::vector<std::optional<SplitParams>> witnesses;
  frontier.reserve(kept.size());
  witnesses.reserve(kept.size());
  for (const auto& k : kept) {
    frontier.push_back(k.rate);
    witnesses.push_back(k.witness);
  }
  return RateRegion::from_frontier(std::move(frontier), provenance, std::move(witnesses));
}

RateRegion time_sharing_hull(const RateRegion& region) {
  const auto& f = region.frontier();
  const auto& w = region.witnesses();
  std::vector<std::size_t> hull;
  for (std::size_t i = 0; i < f.size(); ++i) {
    while (hull.size() >= 2) {
      const RatePair& a = f[hull[hull.size() - 2]];
      const RatePair& b = f[hull.back()];
      const double cross = (b.r1 - a.r1) * (f[i].r2 - a.r2) - (b.r2 - a.r2) * (f[i].r1 - a.r1);
      if (cross >= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(i);
  }
  std::vector<RatePair> pts;
  std::vector<std::optional<SplitParams>> wit;
  for (std::size_t i : hull) {
    pts.push_back(f[i]);
    wit.push_back(w[i]);
  }
  return RateRegion::from_frontier(std::move(pts), region.provenance(), std::move(wit));
}

double equal_rate_point(const RateRegion& region) {
  if (region.empty()) throw ValidationError({"equal-rate point of an empty region"});
  double lo = 0.0;
  double hi = std::min(region.max_r1(), region.max_r2());
  if (hi <= 0.0) return 0.0;
  auto feasible = [&](double r) { return region.upper_r2(r) >= r; };
  if (feasible(hi)) return hi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (feasible(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::vector<RatePair> polygon_corners(double b1, double b2, double bsum) {
  b1 = std::max(b1, 0.0);
  b2 = std::max(b2, 0.0);
  bsum = std::max(bsum, 0.0);
  const double c1 = std::min(b1, bsum);
  const double c2 = std::min(b2, bsum);
  return {
      {c1, 0.0},
      {c1, std::max(0.0, std::min(b2, bsum - c1))},
      {std::max(0.0, std::min(b1, bsum - c2)), c2},
      {0.0, c2},
  };
}

}  // namespace pcn
