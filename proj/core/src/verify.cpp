#include "pcn/verify.hpp"

#include <cfloat>
#include <cmath>

#include "pcn/discrete_info.hpp"
#include "pcn/gaussian_oracle.hpp"
#include "pcn/gaussian_region.hpp"

namespace pcn {

double relative_error(double value, double reference) {
  const double diff = std::abs(value - reference);
  if (diff == 0.0) return 0.0;
  return diff / std::max(std::abs(reference), DBL_MIN);
}

std::vector<TermComparison> compare_with_oracle(const ChannelConfig& cfg, const SplitParams& s) {
  using enum Var;
  const ClosedFormTerms t = closed_form_terms(cfg, s);
  const NetworkCovariance cov = build_covariance(cfg, s);
  auto mi = [&](VarSet a, VarSet b, VarSet c) { return conditional_mi(cov, a, b, c); };
  return {
      {"relay", t.relay, mi({Y2}, {U2}, {U1, X2, X3})},
      {"phi1_y3", t.phi1_y3, mi({Y3}, {X1}, {U1, U2, X2, X3})},
      {"phi1_y4", t.phi1_y4, mi({Y4}, {X1}, {U1, U2, X2, X3})},
      {"phi2_y4", t.phi2_y4, mi({Y4}, {U1, U2, X1, X2, X3}, {})},
      {"phi2_y3", t.phi2_y3, mi({Y3}, {U1, U2, X1, X2}, {X3})},
      {"phi3_y3", t.phi3_y3, mi({Y3}, {X1, X2}, {U1, U2, X3})},
      {"phi3_y4", t.phi3_y4, mi({Y4}, {X1, X2}, {U1, U2, X3})},
      {"r2_y3", t.r2_y3, mi({Y3}, {X2}, {U1, U2, X1, X3})},
      {"r2_y4", t.r2_y4, mi({Y4}, {X2}, {U1, U2, X1, X3})},
  };
}

ChannelConfig random_config(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  ChannelConfig cfg;
  for (int tx = 1; tx <= 3; ++tx) {
    for (int rx = 2; rx <= 4; ++rx) {
      if (is_link(tx, rx)) cfg = cfg.with_gain(tx, rx, u(rng));
    }
  }
  for (int k = 1; k <= 3; ++k) cfg = cfg.with_power(k, u(rng));
  for (int k = 2; k <= 4; ++k) cfg = cfg.with_noise(k, u(rng));
  return cfg;
}

SplitParams random_interior_split(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(std::nextafter(0.0, 1.0), 1.0);
  SplitParams s;
  s.alpha = u(rng);
  s.beta = u(rng);
  s.gamma = u(rng);
  s.delta = u(rng);
  return s;
}

OracleAgreement oracle_agreement(std::uint64_t seed, std::size_t draws) {
  std::mt19937_64 rng(seed);
  OracleAgreement out;
  for (std::size_t i = 0; i < draws; ++i) {
    const ChannelConfig cfg = random_config(rng);
    const SplitParams s = random_interior_split(rng);
    for (const auto& t : compare_with_oracle(cfg, s)) {
      const double e = relative_error(t.closed_form, t.oracle);
      if (e > out.max_rel_error || out.worst_term.empty()) {
        out.max_rel_error = std::max(out.max_rel_error, e);
        out.worst_term = t.name;
      }
    }
    ++out.draws;
  }
  return out;
}

RationalBounds random_rational_bounds(std::mt19937_64& rng, bool ordered) {
  std::uniform_int_distribution<int> num(0, 40);
  std::uniform_int_distribution<int> den(1, 8);
  auto draw = [&] { return Rational(num(rng), den(rng)); };
  while (true) {
    RationalBounds k{draw(), draw(), draw(), draw(), draw(), draw(), draw(), draw(), draw()};
    if (!ordered) return k;
    const Rational c = k.c1 < k.c2 ? k.c1 : k.c2;
    const Rational d = k.d1 < k.d2 ? k.d1 : k.d2;
    if (c <= d) return k;
  }
}

bool projection_matches_reduced(const RationalBounds& k, std::string* why) {
  const std::vector<std::string> eliminate_vars{"R11", "R12"};
  const Projection proj = project(split_rate_system(k), eliminate_vars);
  const RegionComparison cmp = regions_equal(proj.system, reduced_rate_system(k));
  if (!cmp.equal && why) {
    std::string w = "witness (";
    for (std::size_t i = 0; i < cmp.witness->size(); ++i) w += (i ? ", " : "") + to_string((*cmp.witness)[i]);
    *why = w + ") lies only in the " + (cmp.witness_in == 1 ? "projection" : "reduced system");
  }
  return cmp.equal;
}

FmEquivalence fm_equivalence_random(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  FmEquivalence out;
  for (std::size_t i = 0; i < cases; ++i) {
    std::string why;
    const bool eq = projection_matches_reduced(random_rational_bounds(rng, true), &why);
    ++out.cases;
    if (eq) {
      ++out.equal;
    } else if (out.first_failure.empty()) {
      out.first_failure = "case " + std::to_string(i) + ": " + why;
    }
  }
  return out;
}

FmEquivalence fm_equivalence_pmf(std::uint64_t seed, std::size_t cases) {
  std::mt19937_64 rng(seed);
  FmEquivalence out;
  for (std::size_t i = 0; i < cases; ++i) {
    const JointPmf p = make_network_pmf(random_network_factors(rng));
    double err = 0;
    const RationalBounds k = snap_bounds(eval_region1(p), 1e-12, &err);
    out.max_snap_error = std::max(out.max_snap_error, err);
    std::string why;
    const bool eq = projection_matches_reduced(k, &why);
    ++out.cases;
    if (eq) {
      ++out.equal;
    } else if (out.first_failure.empty()) {
      out.first_failure = "case " + std::to_string(i) + ": " + why;
    }
  }
  return out;
}

}  // namespace pcn
