#pragma once

// Finite-alphabet information measures for the collaborative network.

#include <array>
#include <cstddef>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcn/rate_region.hpp"

namespace pcn {

struct PmfLimits {
  std::size_t max_alphabet = 4;
  std::size_t max_entries = 1'000'000;
};

/// Probability table over the product of named finite alphabets, stored
/// row-major with the last variable varying fastest.
class JointPmf {
 public:
  /// Throws ValidationError for duplicate names, alphabets outside
  /// [1, max_alphabet], tables above max_entries, negative entries or a total
  /// mass more than 1e−12 away from 1.
  JointPmf(std::vector<std::string> names, std::vector<std::size_t> alphabet, std::vector<double> table,
           PmfLimits limits = {});

  const std::vector<std::string>& names() const { return names_; }
  const std::vector<std::size_t>& alphabet() const { return alphabet_; }
  std::span<const double> table() const { return table_; }

  /// Position of a variable; ValidationError for unknown names.
  std::size_t index_of(std::string_view name) const;
  double prob(std::span<const std::size_t> symbols) const;

  /// Marginal over `keep`, in the order given.
  JointPmf marginal(std::span<const std::string> keep) const;
  /// Shannon entropy in bits.
  double entropy() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> alphabet_;
  std::vector<double> table_;
  PmfLimits limits_;
};

using NameList = std::vector<std::string>;

/// I(A; B | C) in bits by direct summation over the table. Values below
/// 1e−15 are reported as 0. ValidationError for overlapping or unknown names.
double conditional_mi_pmf(const JointPmf& p, const NameList& a, const NameList& b, const NameList& c = {});

/// Largest |p(a,b,c)p(c) − p(a,c)p(b,c)| over the table; zero iff A ⊥ B | C.
double independence_defect(const JointPmf& p, const NameList& a, const NameList& b, const NameList& c);

/// The nine constants of the split-rate region.
struct BoundSet {
  double a1 = 0;  ///< I(Y4; X1 | U1, U2, X2, X3)
  double a2 = 0;  ///< I(Y3; X1 | X2, X3, U1, U2)
  double b = 0;   ///< I(Y2; U2 | U1, X2, X3)
  double c1 = 0;  ///< I(Y3; X2 | X1, X3, U1, U2)
  double c2 = 0;  ///< I(Y4; X2 | U1, U2, X1, X3)
  double d1 = 0;  ///< I(Y3; X1, X2 | X3, U1, U2)
  double d2 = 0;  ///< I(Y4; X1, X2 | U1, U2, X3)
  double e1 = 0;  ///< I(Y3; X1, X2, U1, U2 | X3)
  double e2 = 0;  ///< I(Y4; U1, U2, X1, X2, X3)
};

/// Names of the eight network variables, in table order.
inline const std::array<std::string, 8> kNetworkNames{"X1", "X2", "X3", "U1", "U2", "Y2", "Y3", "Y4"};

/// Evaluates every constant on a PMF over the eight network variables.
/// The input law must factor as p(x3)p(u1|x3)p(u2|u1,x3)p(x2|u1,x3)p(x1|u1,u2,x3)
/// and the outputs may depend on (U1, U2) only through (X1, X2, X3); any
/// violation above 1e−10 throws ValidationError naming the conditional.
BoundSet eval_region1(const JointPmf& p);

/// {R1 ≤ b + min(a), R2 ≤ min(c), R1 + R2 ≤ min(min(e), b + min(d))}.
RateRegion eval_region2(const BoundSet& bounds);

struct NetworkAlphabet {
  std::size_t x1 = 2, x2 = 2, x3 = 2, u1 = 2, u2 = 2, y2 = 2, y3 = 2, y4 = 2;
};

/// Channel law p(y2, y3, y4 | x1, x2, x3), indexed [x1][x2][x3][y2][y3][y4].
using ChannelTable = std::vector<double>;

/// Factors of the network law. Conditional tables are indexed with the
/// conditioning variables first, in the order written in the field name.
struct NetworkFactors {
  NetworkAlphabet alphabet;
  std::vector<double> p_x3;         ///< [x3]
  std::vector<double> p_u1_x3;      ///< [x3][u1]
  std::vector<double> p_u2_u1x3;    ///< [u1][x3][u2]
  std::vector<double> p_x2_u1x3;    ///< [u1][x3][x2]
  std::vector<double> p_x1_u1u2x3;  ///< [u1][u2][x3][x1]
  ChannelTable channel;
};

JointPmf make_network_pmf(const NetworkFactors& f, PmfLimits limits = {});

using OutputMap = std::function<std::array<std::size_t, 3>(std::size_t x1, std::size_t x2, std::size_t x3)>;

/// Noiseless channel: (y2, y3, y4) = f(x1, x2, x3).
ChannelTable deterministic_channel(const NetworkAlphabet& a, const OutputMap& f);

/// Each receiver independently sees its noiseless symbol with probability
/// 1 − eps and each other symbol of its alphabet with eps / (|Y| − 1).
ChannelTable symmetric_noise_channel(const NetworkAlphabet& a, const OutputMap& f, double eps);

/// Random factored law with Dirichlet(1) conditionals and a random channel.
NetworkFactors random_network_factors(std::mt19937_64& rng, const NetworkAlphabet& a = {});

}  // namespace pcn
