#pragma once

// Randomised cross-checks shared by the `verify` command and the tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcn/channel.hpp"
#include "pcn/polyhedra.hpp"

namespace pcn {

double relative_error(double value, double reference);

struct TermComparison {
  std::string name;
  double closed_form = 0;
  double oracle = 0;
};

/// Every closed-form term of the AWGN region next to its log-det value.
std::vector<TermComparison> compare_with_oracle(const ChannelConfig& cfg, const SplitParams& s);

/// Gains, powers and noises uniform in [lo, hi].
ChannelConfig random_config(std::mt19937_64& rng, double lo = 0.1, double hi = 10.0);
/// Each fraction uniform in the open interval (0, 1).
SplitParams random_interior_split(std::mt19937_64& rng);

struct OracleAgreement {
  std::size_t draws = 0;
  double max_rel_error = 0;
  std::string worst_term;
};

OracleAgreement oracle_agreement(std::uint64_t seed, std::size_t draws);

/// Random constants with small denominators; with `ordered`, resampled until
/// min(c1, c2) ≤ min(d1, d2).
RationalBounds random_rational_bounds(std::mt19937_64& rng, bool ordered);

struct FmEquivalence {
  std::size_t cases = 0;
  std::size_t equal = 0;
  double max_snap_error = 0;
  std::string first_failure;
};

/// Projection of the split-rate system versus the reduced system.
bool projection_matches_reduced(const RationalBounds& k, std::string* why = nullptr);

FmEquivalence fm_equivalence_random(std::uint64_t seed, std::size_t cases);
/// Constants taken from random factored binary-alphabet PMFs.
FmEquivalence fm_equivalence_pmf(std::uint64_t seed, std::size_t cases);

}  // namespace pcn
