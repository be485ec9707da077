#pragma once

// Exact mutual information for the jointly Gaussian superposition signaling.
//
// Five independent unit-variance latents V_a..V_e carry the codeword layers:
//   X1 = √(ᾱP1)V_a + √(αβ̄P1)V_b + √(αβγ̄P1)V_c + √(αβγP1)V_d
//   X2 = √(δ̄P2)V_e + √(δγ̄P2)V_c + √(δγP2)V_d
//   X3 = √(P3)V_d
//   U1 = √(αβγ̄P1)V_c + √(αβγP1)V_d
//   U2 = X1 − √(ᾱP1)V_a
// and Y_j = Σ_{i≠j} √(h_ij) X_i + Z_j with Z_j ~ N(0, N_j).

#include <array>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcn/channel.hpp"
#include "pcn/error.hpp"

namespace pcn {

/// Network variables, in the fixed covariance order.
enum class Var : std::uint8_t { X1, X2, X3, U1, U2, Y2, Y3, Y4 };
inline constexpr std::size_t kNumVars = 8;

std::string_view to_string(Var v);

/// Small set of network variables.
class VarSet {
 public:
  constexpr VarSet() = default;
  constexpr VarSet(std::initializer_list<Var> vars) {
    for (Var v : vars) bits_ |= bit(v);
  }
  constexpr bool contains(Var v) const { return (bits_ & bit(v)) != 0; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr bool disjoint(VarSet o) const { return (bits_ & o.bits_) == 0; }
  constexpr VarSet operator|(VarSet o) const { return from_bits(bits_ | o.bits_); }
  std::vector<std::size_t> indices() const;
  std::string str() const;
  friend constexpr bool operator==(VarSet, VarSet) = default;

 private:
  static constexpr std::uint16_t bit(Var v) { return static_cast<std::uint16_t>(1u << static_cast<unsigned>(v)); }
  static constexpr VarSet from_bits(std::uint16_t b) {
    VarSet s;
    s.bits_ = b;
    return s;
  }
  std::uint16_t bits_ = 0;
};

/// Latent amplitudes of (X1, X2, X3, U1, U2) on (V_a, V_b, V_c, V_d, V_e).
struct GaussianSignaling {
  std::array<std::array<double, 5>, 5> loading{};
};

GaussianSignaling make_signaling(const ChannelConfig& cfg, const SplitParams& s);

/// Dense symmetric covariance over an arbitrary ordered set of scalars.
class Covariance {
 public:
  Covariance() = default;
  explicit Covariance(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  double min_eigenvalue() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Covariance of (X1, X2, X3, U1, U2, Y2, Y3, Y4).
class NetworkCovariance {
 public:
  explicit NetworkCovariance(Covariance cov) : cov_(std::move(cov)) {}
  double operator()(Var a, Var b) const {
    return cov_(static_cast<std::size_t>(a), static_cast<std::size_t>(b));
  }
  const Covariance& matrix() const { return cov_; }

 private:
  Covariance cov_;
};

/// Accumulates the loading outer products plus receiver noise. Validates
/// inputs and throws ComputationError if the result is not PSD to −1e−10.
NetworkCovariance build_covariance(const ChannelConfig& cfg, const SplitParams& s);

/// Raised when a conditional MI is infinite (one set is a deterministic
/// function of the other given the conditioning set).
class DegenerateCovarianceError : public ComputationError {
 public:
  DegenerateCovarianceError(const std::string& what, std::vector<double> direction)
      : ComputationError(what), direction_(std::move(direction)) {}
  /// Unit vector over the first argument set along which the variance vanishes.
  const std::vector<double>& direction() const { return direction_; }

 private:
  std::vector<double> direction_;
};

/// I(A; B | C) in bits for a zero-mean Gaussian vector, from the ratio of
/// conditioned covariance determinants. Index sets must be pairwise disjoint
/// (ValidationError otherwise). Zero-variance directions are projected out.
double conditional_mi(const Covariance& cov, std::span<const std::size_t> a, std::span<const std::size_t> b,
                      std::span<const std::size_t> c = {});

double conditional_mi(const NetworkCovariance& cov, VarSet a, VarSet b, VarSet c = {});

}  // namespace pcn
