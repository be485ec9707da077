#pragma once

#include <array>

#include "pcn/channel.hpp"
#include "pcn/rate_region.hpp"

namespace pcn {

struct PhiTriple {
  double phi1 = 0, phi2 = 0, phi3 = 0;
};

/// Right-hand sides of the AWGN partial decode-and-forward region for one split.
struct PdfRegionSlice {
  double bound_r1 = 0, bound_r2 = 0, bound_sum = 0;
};

/// Every closed-form mutual-information term of the AWGN region, kept apart
/// so each can be checked against the oracle on its own.
struct ClosedFormTerms {
  double relay = 0;    ///< I(Y2; U2 | U1, X2, X3)
  double phi1_y3 = 0;  ///< I(Y3; X1 | U1, U2, X2, X3)
  double phi1_y4 = 0;  ///< I(Y4; X1 | U1, U2, X2, X3)
  double phi2_y4 = 0;  ///< I(Y4; U1, U2, X1, X2, X3)
  double phi2_y3 = 0;  ///< I(Y3; U1, U2, X1, X2 | X3)
  double phi3_y3 = 0;  ///< I(Y3; X1, X2 | U1, U2, X3)
  double phi3_y4 = 0;  ///< I(Y4; X1, X2 | U1, U2, X3)
  double r2_y3 = 0;    ///< I(Y3; X2 | U1, U2, X1, X3)
  double r2_y4 = 0;    ///< I(Y4; X2 | U1, U2, X1, X3)
};

/// Closed forms under the superposition signaling. The coherent-combining
/// terms are written on the latent amplitudes, so no division by αβP1 or
/// αβγP1 occurs and the degenerate splits need no special casing.
ClosedFormTerms closed_form_terms(const ChannelConfig& cfg, const SplitParams& s);

PhiTriple compute_phis(const ChannelConfig& cfg, const SplitParams& s);

/// C(αβ̄ h12 P1 / (ᾱ h12 P1 + N2)), the rate the relay transmitter decodes.
double relay_link_rate(const ChannelConfig& cfg, const SplitParams& s);

PdfRegionSlice pdf_region_slice(const ChannelConfig& cfg, const SplitParams& s);

/// Points per split parameter; parameter k of an axis with n points is k/(n−1).
struct GridSpec {
  std::array<int, 4> points{33, 33, 33, 33};  ///< alpha, beta, gamma, delta

  static GridSpec uniform(int n) { return GridSpec{{n, n, n, n}}; }
  /// Halves the step on every axis (n → 2n−1), so the new grid contains the old one.
  GridSpec refined() const;
  double value(int axis, int k) const;
  /// Throws ValidationError if any axis has fewer than two points.
  void validate() const;
};

/// Pareto frontier, reduced to its time-sharing hull, of the corner points of
/// every slice on the grid. Deterministic for a given grid regardless of the
/// number of worker threads (0 picks the hardware concurrency).
RateRegion sweep_region(const ChannelConfig& cfg, const GridSpec& grid = {}, unsigned threads = 0);

}  // namespace pcn
