#include "pcn/gaussian_oracle.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pcn {

namespace {

using Real = long double;
using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

constexpr Real kRelThreshold = 1e-12L;

Mat submatrix(const Covariance& cov, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = cov(rows[i], cols[j]);
    }
  }
  return m;
}

Real scale_of(const Eigen::Matrix<Real, Eigen::Dynamic, 1>& eig) {
  Real s = 0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) s = std::max(s, std::abs(eig(i)));
  return s;
}

// Σ_AA − Σ_AS Σ_SS⁺ Σ_SA. Eigenvalues of Σ_SS below the relative threshold
// are treated as exact zeros.
Mat conditioned(const Covariance& cov, std::span<const std::size_t> a, std::span<const std::size_t> s) {
  Mat saa = submatrix(cov, a, a);
  if (s.empty()) return saa;
  Mat sss = submatrix(cov, s, s);
  Mat sas = submatrix(cov, a, s);
  Eigen::SelfAdjointEigenSolver<Mat> es(sss);
  const auto& ev = es.eigenvalues();
  const Real thr = kRelThreshold * std::max<Real>(scale_of(ev), 1e-300L);
  Mat inv = Mat::Zero(sss.rows(), sss.cols());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > thr) inv += es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose() / ev(k);
  }
  Mat out = saa - sas * inv * sas.transpose();
  return (out + out.transpose()) / 2;
}

std::vector<std::size_t> concat(std::span<const std::size_t> x, std::span<const std::size_t> y) {
  std::vector<std::size_t> out(x.begin(), x.end());
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

void require_disjoint(std::span<const std::size_t> a, std::span<const std::size_t> b, std::size_t n,
                      const char* what, std::vector<std::string>& issues) {
  for (std::size_t i : a) {
    if (i >= n) issues.push_back(std::string("index out of range in ") + what);
    for (std::size_t j : b) {
      if (i == j) issues.push_back(std::string("overlapping variable sets: ") + what);
    }
  }
}

}  // namespace

std::string_view to_string(Var v) {
  static constexpr std::array<std::string_view, kNumVars> names{"X1", "X2", "X3", "U1",
                                                                "U2", "Y2", "Y3", "Y4"};
  return names[static_cast<std::size_t>(v)];
}

std::vector<std::size_t> VarSet::indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < kNumVars; ++i) {
    if (bits_ & (1u << i)) out.push_back(i);
  }
  return out;
}

std::string VarSet::str() const {
  std::string out = "{";
  for (std::size_t i : indices()) {
    if (out.size() > 1) out += ",";
    out += to_string(static_cast<Var>(i));
  }
  return out + "}";
}

GaussianSignaling make_signaling(const ChannelConfig& cfg, const SplitParams& s) {
  validate_config(cfg);
  validate_split(s);
  const double p1 = cfg.power(1), p2 = cfg.power(2), p3 = cfg.power(3);
  const double a = s.alpha, b = s.beta, g = s.gamma, d = s.delta;
  enum { Va, Vb, Vc, Vd, Ve };
  enum { X1, X2, X3, U1, U2 };
  GaussianSignaling sig;
  auto& L = sig.loading;
  L[X1][Va] = std::sqrt(bar(a) * p1);
  L[X1][Vb] = std::sqrt(a * bar(b) * p1);
  L[X1][Vc] = std::sqrt(a * b * bar(g) * p1);
  L[X1][Vd] = std::sqrt(a * b * g * p1);
  L[X2][Ve] = std::sqrt(bar(d) * p2);
  L[X2][Vc] = std::sqrt(d * bar(g) * p2);
  L[X2][Vd] = std::sqrt(d * g * p2);
  L[X3][Vd] = std::sqrt(p3);
  L[U1][Vc] = L[X1][Vc];
  L[U1][Vd] = L[X1][Vd];
  L[U2] = L[X1];
  L[U2][Va] = 0.0;
  return sig;
}

double Covariance::min_eigenvalue() const {
  if (n_ == 0) return 0.0;
  std::vector<std::size_t> all(n_);
  for (std::size_t i = 0; i < n_; ++i) all[i] = i;
  Eigen::SelfAdjointEigenSolver<Mat> es(submatrix(*this, all, all), Eigen::EigenvaluesOnly);
  return static_cast<double>(es.eigenvalues().minCoeff());
}

NetworkCovariance build_covariance(const ChannelConfig& cfg, const SplitParams& s) {
  const GaussianSignaling sig = make_signaling(cfg, s);

  // Rows: the eight network variables; columns: V_a..V_e, Z2, Z3, Z4.
  constexpr std::size_t kSources = 8;
  std::array<std::array<double, kSources>, kNumVars> load{};
  for (std::size_t v = 0; v < 5; ++v) {
    for (std::size_t k = 0; k < 5; ++k) load[v][k] = sig.loading[v][k];
  }
  const std::array<Var, 3> inputs{Var::X1, Var::X2, Var::X3};
  const std::array<Var, 3> outputs{Var::Y2, Var::Y3, Var::Y4};
  for (std::size_t o = 0; o < outputs.size(); ++o) {
    const int rx = static_cast<int>(o) + 2;
    auto& row = load[static_cast<std::size_t>(outputs[o])];
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      const int tx = static_cast<int>(i) + 1;
      if (!is_link(tx, rx)) continue;
      const double amp = std::sqrt(cfg.gain(tx, rx));
      const auto& xrow = load[static_cast<std::size_t>(inputs[i])];
      for (std::size_t k = 0; k < 5; ++k) row[k] += amp * xrow[k];
    }
    row[5 + o] = std::sqrt(cfg.noise(rx));
  }

  Covariance cov(kNumVars);
  for (std::size_t k = 0; k < kSources; ++k) {
    for (std::size_t i = 0; i < kNumVars; ++i) {
      if (load[i][k] == 0.0) continue;
      for (std::size_t j = 0; j < kNumVars; ++j) cov(i, j) += load[i][k] * load[j][k];
    }
  }
  if (cov.min_eigenvalue() < -1e-10) throw ComputationError("network covariance is not positive semidefinite");
  return NetworkCovariance(std::move(cov));
}

double conditional_mi(const Covariance& cov, std::span<const std::size_t> a, std::span<const std::size_t> b,
                      std::span<const std::size_t> c) {
  std::vector<std::string> issues;
  const std::size_t n = cov.size();
  require_disjoint(a, b, n, "A and B", issues);
  require_disjoint(a, c, n, "A and C", issues);
  require_disjoint(b, c, n, "B and C", issues);
  for (std::size_t j : c) {
    if (j >= n) issues.push_back("index out of range in C");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  if (a.empty() || b.empty()) return 0.0;

  const Mat given_c = conditioned(cov, a, c);
  const std::vector<std::size_t> bc = concat(b, c);
  const Mat given_bc = conditioned(cov, a, bc);

  // Restrict A to the directions that still carry variance given C.
  Eigen::SelfAdjointEigenSolver<Mat> es(given_c);
  const auto& ev = es.eigenvalues();
  const Real thr = kRelThreshold * std::max<Real>(scale_of(ev), 1e-300L);
  std::vector<Eigen::Index> live;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > thr) live.push_back(k);
  }
  if (live.empty()) return 0.0;
  Mat q(given_c.rows(), static_cast<Eigen::Index>(live.size()));
  Real logdet_c = 0;
  for (std::size_t k = 0; k < live.size(); ++k) {
    q.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(live[k]);
    logdet_c += std::log(ev(live[k]));
  }
  const Mat reduced = q.transpose() * given_bc * q;
  Eigen::SelfAdjointEigenSolver<Mat> es2(reduced);
  const auto& ev2 = es2.eigenvalues();
  if (ev2.minCoeff() <= thr) {
    const Eigen::Matrix<Real, Eigen::Dynamic, 1> dir = q * es2.eigenvectors().col(0);
    std::vector<double> direction(static_cast<std::size_t>(dir.size()));
    std::ostringstream msg;
    msg << "conditional MI is unbounded: variance vanishes along (";
    for (Eigen::Index k = 0; k < dir.size(); ++k) {
      direction[static_cast<std::size_t>(k)] = static_cast<double>(dir(k));
      msg << (k ? ", " : "") << static_cast<double>(dir(k));
    }
    msg << ") of the first set";
    throw DegenerateCovarianceError(msg.str(), std::move(direction));
  }
  Real logdet_bc = 0;
  for (Eigen::Index k = 0; k < ev2.size(); ++k) logdet_bc += std::log(ev2(k));
  const Real mi = 0.5L * (logdet_c - logdet_bc) / std::numbers::ln2_v<Real>;
  return static_cast<double>(mi);
}

double conditional_mi(const NetworkCovariance& cov, VarSet a, VarSet b, VarSet c) {
  if (!a.disjoint(b) || !a.disjoint(c) || !b.disjoint(c)) {
    throw ValidationError({"variable sets must be disjoint: A=" + a.str() + " B=" + b.str() + " C=" + c.str()});
  }
  const auto ia = a.indices(), ib = b.indices(), ic = c.indices();
  return conditional_mi(cov.matrix(), ia, ib, ic);
}

}  // namespace pcn
