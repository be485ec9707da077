#include "pcn/channel.hpp"

#include <cmath>
#include <numbers>

#include "pcn/error.hpp"

namespace pcn {

namespace {

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out;
  for (const auto& s : issues) {
    if (!out.empty()) out += "; ";
    out += s;
  }
  return out;
}

void check_user(int user, int lo, int hi, const char* what) {
  if (user < lo || user > hi) {
    throw ValidationError({std::string(what) + " index " + std::to_string(user) + " out of range"});
  }
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> issues)
    : Error(ErrorKind::validation, join_issues(issues)), issues_(std::move(issues)) {}

double capacity(double snr) {
  if (!std::isfinite(snr) || snr < 0.0) {
    throw ValidationError({"capacity: snr must be finite and >= 0, got " + std::to_string(snr)});
  }
  // log1p keeps relative accuracy for tiny SNR; log2 is exact at powers of two.
  if (snr < 0.5) return 0.5 * std::log1p(snr) / std::numbers::ln2;
  return 0.5 * std::log2(1.0 + snr);
}

bool is_link(int tx, int rx) {
  return tx >= 1 && tx <= 3 && rx >= 2 && rx <= 4 && tx != rx;
}

std::string gain_name(int tx, int rx) { return "h" + std::to_string(tx) + std::to_string(rx); }

ChannelConfig::ChannelConfig() : powers_{1, 1, 1}, noises_{1, 1, 1} {}

ChannelConfig::ChannelConfig(const GainMatrix& gains, const std::array<double, 3>& powers,
                             const std::array<double, 3>& noises)
    : powers_(powers), noises_(noises) {
  for (int tx = 1; tx <= 4; ++tx) {
    for (int rx = 1; rx <= 4; ++rx) {
      if (is_link(tx, rx)) gains_[tx][rx] = gains[tx][rx];
    }
  }
}

ChannelConfig ChannelConfig::symmetric(const SymmetricGains& g, const std::array<double, 3>& powers,
                                       const std::array<double, 3>& noises) {
  GainMatrix m{};
  m[1][2] = g.h12;
  m[1][3] = g.h13;
  m[1][4] = g.h14;
  m[2][3] = g.h23;
  m[3][2] = g.h23;
  m[2][4] = g.h24;
  m[3][4] = g.h34;
  return ChannelConfig(m, powers, noises);
}

double ChannelConfig::gain(int tx, int rx) const {
  check_user(tx, 1, 4, "transmitter");
  check_user(rx, 1, 4, "receiver");
  return gains_[tx][rx];
}

double ChannelConfig::power(int user) const {
  check_user(user, 1, 3, "power");
  return powers_[user - 1];
}

double ChannelConfig::noise(int user) const {
  check_user(user, 2, 4, "noise");
  return noises_[user - 2];
}

ChannelConfig ChannelConfig::with_gain(int tx, int rx, double h) const {
  if (!is_link(tx, rx)) throw ValidationError({"no physical link " + gain_name(tx, rx)});
  ChannelConfig out = *this;
  out.gains_[tx][rx] = h;
  return out;
}

ChannelConfig ChannelConfig::with_power(int user, double p) const {
  check_user(user, 1, 3, "power");
  ChannelConfig out = *this;
  out.powers_[user - 1] = p;
  return out;
}

ChannelConfig ChannelConfig::with_noise(int user, double n) const {
  check_user(user, 2, 4, "noise");
  ChannelConfig out = *this;
  out.noises_[user - 2] = n;
  return out;
}

ChannelConfig ChannelConfig::scaled(double k) const {
  ChannelConfig out = *this;
  for (auto& p : out.powers_) p *= k;
  for (auto& n : out.noises_) n *= k;
  return out;
}

const ChannelConfig& validate_config(const ChannelConfig& cfg) {
  std::vector<std::string> issues;
  for (int tx = 1; tx <= 3; ++tx) {
    for (int rx = 2; rx <= 4; ++rx) {
      if (!is_link(tx, rx)) continue;
      const double h = cfg.gain(tx, rx);
      if (!std::isfinite(h)) {
        issues.push_back(gain_name(tx, rx) + " is not finite");
      } else if (h < 0) {
        issues.push_back(gain_name(tx, rx) + " must be >= 0, got " + std::to_string(h));
      }
    }
  }
  for (int u = 1; u <= 3; ++u) {
    const double p = cfg.power(u);
    if (!std::isfinite(p) || p <= 0) issues.push_back("P" + std::to_string(u) + " must be finite and > 0");
  }
  for (int u = 2; u <= 4; ++u) {
    const double n = cfg.noise(u);
    if (!std::isfinite(n) || n <= 0) issues.push_back("N" + std::to_string(u) + " must be finite and > 0");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return cfg;
}

const SplitParams& validate_split(const SplitParams& s) {
  std::vector<std::string> issues;
  auto check = [&](double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) issues.push_back(std::string(name) + " must lie in [0,1]");
  };
  check(s.alpha, "alpha");
  check(s.beta, "beta");
  check(s.gamma, "gamma");
  check(s.delta, "delta");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return s;
}

}  // namespace pcn
