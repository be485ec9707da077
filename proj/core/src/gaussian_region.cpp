#include "pcn/gaussian_region.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "pcn/error.hpp"

namespace pcn {

namespace {

ClosedFormTerms terms_unchecked(const ChannelConfig& cfg, const SplitParams& s) {
  const double p1 = cfg.power(1), p2 = cfg.power(2), p3 = cfg.power(3);
  const double n2 = cfg.noise(2), n3 = cfg.noise(3), n4 = cfg.noise(4);
  const double h12 = cfg.gain(1, 2), h13 = cfg.gain(1, 3), h14 = cfg.gain(1, 4);
  const double h23 = cfg.gain(2, 3), h24 = cfg.gain(2, 4), h34 = cfg.gain(3, 4);
  const double a = s.alpha, b = s.beta, g = s.gamma, d = s.delta;

  const double direct = bar(a) * p1;  // V_a, heard only as X1's private layer
  const double relayed = a * bar(b) * p1;
  const double private2 = bar(d) * p2;

  ClosedFormTerms t;
  t.relay = capacity(relayed * h12 / (bar(a) * h12 * p1 + n2));
  t.phi1_y3 = capacity(direct * h13 / n3);
  t.phi1_y4 = capacity(direct * h14 / n4);

  // Coherent amplitudes of the common layers V_c (cooperative) and V_d (forwarded).
  const double c4 = std::sqrt(h14 * a * b * bar(g) * p1) + std::sqrt(h24 * d * bar(g) * p2);
  const double d4 = std::sqrt(h14 * a * b * g * p1) + std::sqrt(h24 * d * g * p2) + std::sqrt(h34 * p3);
  const double c3 = std::sqrt(h13 * a * b * bar(g) * p1) + std::sqrt(h23 * d * bar(g) * p2);
  t.phi2_y4 = capacity((h14 * direct + h14 * relayed + c4 * c4 + d4 * d4 + h24 * private2) / n4);
  t.phi2_y3 = capacity((h13 * direct + h13 * relayed + c3 * c3 + h23 * private2) / n3);

  t.phi3_y3 = capacity((h13 * direct + h23 * private2) / n3);
  t.phi3_y4 = capacity((h14 * direct + h24 * private2) / n4);
  t.r2_y3 = capacity(h23 * private2 / n3);
  t.r2_y4 = capacity(h24 * private2 / n4);
  return t;
}

PdfRegionSlice slice_from_terms(const ClosedFormTerms& t) {
  const double phi1 = std::min(t.phi1_y3, t.phi1_y4);
  const double phi2 = std::min(t.phi2_y4, t.phi2_y3);
  const double phi3 = std::min(t.phi3_y3, t.phi3_y4);
  PdfRegionSlice out;
  out.bound_r1 = t.relay + phi1;
  out.bound_r2 = std::min(t.r2_y3, t.r2_y4);
  out.bound_sum = std::min(phi2, t.relay + phi3);
  return out;
}

}  // namespace

ClosedFormTerms closed_form_terms(const ChannelConfig& cfg, const SplitParams& s) {
  validate_config(cfg);
  validate_split(s);
  return terms_unchecked(cfg, s);
}

PhiTriple compute_phis(const ChannelConfig& cfg, const SplitParams& s) {
  const ClosedFormTerms t = closed_form_terms(cfg, s);
  return {std::min(t.phi1_y3, t.phi1_y4), std::min(t.phi2_y4, t.phi2_y3), std::min(t.phi3_y3, t.phi3_y4)};
}

double relay_link_rate(const ChannelConfig& cfg, const SplitParams& s) { return closed_form_terms(cfg, s).relay; }

PdfRegionSlice pdf_region_slice(const ChannelConfig& cfg, const SplitParams& s) {
  return slice_from_terms(closed_form_terms(cfg, s));
}

GridSpec GridSpec::refined() const {
  GridSpec out = *this;
  for (auto& n : out.points) n = 2 * n - 1;
  return out;
}

double GridSpec::value(int axis, int k) const {
  const int n = points.at(static_cast<std::size_t>(axis));
  return static_cast<double>(k) / static_cast<double>(n - 1);
}

void GridSpec::validate() const {
  std::vector<std::string> issues;
  static constexpr const char* names[] = {"alpha", "beta", "gamma", "delta"};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i] < 2) issues.push_back(std::string("grid resolution for ") + names[i] + " must be >= 2");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

RateRegion sweep_region(const ChannelConfig& cfg, const GridSpec& grid, unsigned threads) {
  validate_config(cfg);
  grid.validate();
  const int na = grid.points[0];
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(na));

  // One partial frontier per alpha index; merged in index order afterwards.
  std::vector<std::vector<TaggedPoint>> partial(static_cast<std::size_t>(na));
  auto work = [&](unsigned worker) {
    std::vector<TaggedPoint> pts;
    for (int ia = static_cast<int>(worker); ia < na; ia += static_cast<int>(threads)) {
      pts.clear();
      SplitParams s;
      s.alpha = grid.value(0, ia);
      for (int ib = 0; ib < grid.points[1]; ++ib) {
        s.beta = grid.value(1, ib);
        for (int ig = 0; ig < grid.points[2]; ++ig) {
          s.gamma = grid.value(2, ig);
          for (int id = 0; id < grid.points[3]; ++id) {
            s.delta = grid.value(3, id);
            const PdfRegionSlice sl = slice_from_terms(terms_unchecked(cfg, s));
            for (const RatePair& p : polygon_corners(sl.bound_r1, sl.bound_r2, sl.bound_sum)) {
              pts.push_back({p, s});
            }
          }
        }
      }
      const RateRegion r = pareto_extract(pts, Provenance::pdf);
      auto& out = partial[static_cast<std::size_t>(ia)];
      for (std::size_t k = 0; k < r.frontier().size(); ++k) out.push_back({r.frontier()[k], r.witnesses()[k]});
    }
  };

  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }

  std::vector<TaggedPoint> merged;
  for (const auto& p : partial) merged.insert(merged.end(), p.begin(), p.end());
  return time_sharing_hull(pareto_extract(merged, Provenance::pdf));
}

}  // namespace pcn
