#pragma once

// Physical parameters of the two-pair collaborative network.
//
// Users: 1 = source transmitter, 2 = relay transmitter (also receives Y2),
// 3 = relay receiver (also transmits X3), 4 = source receiver.
// Inputs X1, X2, X3; outputs Y2, Y3, Y4. A node never hears its own input.

#include <array>
#include <string>

namespace pcn {

/// ½·log₂(1+x), bits per channel use. Throws ValidationError for x < 0 or non-finite x.
double capacity(double snr);

/// The six undirected gains used by the scenario presets.
struct SymmetricGains {
  double h12 = 0, h13 = 0, h14 = 0, h23 = 0, h24 = 0, h34 = 0;
};

/// Directed power gains, transmit powers and receiver noise variances.
///
/// gain(tx, rx) is the power gain from transmitter `tx` to receiver `rx`
/// (1-based). The links that exist are 1→2, 1→3, 1→4, 2→3, 2→4, 3→2, 3→4;
/// every other entry is unused and reads as 0.
class ChannelConfig {
 public:
  using GainMatrix = std::array<std::array<double, 5>, 5>;

  ChannelConfig();
  ChannelConfig(const GainMatrix& gains, const std::array<double, 3>& powers,
                const std::array<double, 3>& noises);

  /// h_ij used for both directions of each pair; 3→2 takes h23.
  static ChannelConfig symmetric(const SymmetricGains& g, const std::array<double, 3>& powers = {1, 1, 1},
                                 const std::array<double, 3>& noises = {1, 1, 1});

  double gain(int tx, int rx) const;
  double power(int user) const;  // user ∈ {1,2,3}
  double noise(int user) const;  // user ∈ {2,3,4}

  const GainMatrix& gains() const { return gains_; }
  const std::array<double, 3>& powers() const { return powers_; }
  const std::array<double, 3>& noises() const { return noises_; }

  ChannelConfig with_gain(int tx, int rx, double h) const;
  ChannelConfig with_power(int user, double p) const;
  ChannelConfig with_noise(int user, double n) const;
  /// Multiplies every power and every noise variance by `k`.
  ChannelConfig scaled(double k) const;

  friend bool operator==(const ChannelConfig&, const ChannelConfig&) = default;

 private:
  GainMatrix gains_{};
  std::array<double, 3> powers_{};
  std::array<double, 3> noises_{};
};

/// True for the seven physical links listed above.
bool is_link(int tx, int rx);

/// Field name as used in error reports and config files, e.g. "h14", "P1", "N3".
std::string gain_name(int tx, int rx);

/// Returns `cfg` unchanged when all gains are finite and ≥ 0 and all powers
/// and noises are finite and > 0; otherwise throws ValidationError listing
/// every offending field.
const ChannelConfig& validate_config(const ChannelConfig& cfg);

/// Power-split fractions. bar(x) = 1 − x is used throughout.
struct SplitParams {
  double alpha = 0, beta = 0, gamma = 0, delta = 0;
  friend bool operator==(const SplitParams&, const SplitParams&) = default;
};

inline double bar(double x) { return 1.0 - x; }

/// Throws ValidationError unless every fraction lies in [0, 1].
const SplitParams& validate_split(const SplitParams& s);

struct RatePair {
  double r1 = 0, r2 = 0;
  friend bool operator==(const RatePair&, const RatePair&) = default;
};

/// Split source rate: R1 = r11 (direct part) + r12 (relayed part).
struct RateTriple {
  double r11 = 0, r12 = 0, r2 = 0;
  double r1() const { return r11 + r12; }
};

}  // namespace pcn
