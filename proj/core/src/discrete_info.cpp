#include "pcn/discrete_info.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "pcn/error.hpp"

namespace pcn {

namespace {

constexpr double kMassTol = 1e-12;
constexpr double kFactorTol = 1e-10;

// Mixed-radix counter over a list of alphabet sizes, last digit fastest.
class Odometer {
 public:
  explicit Odometer(std::vector<std::size_t> radix) : radix_(std::move(radix)), digits_(radix_.size(), 0) {}
  const std::vector<std::size_t>& digits() const { return digits_; }
  void next() {
    for (std::size_t i = radix_.size(); i-- > 0;) {
      if (++digits_[i] < radix_[i]) return;
      digits_[i] = 0;
    }
  }

 private:
  std::vector<std::size_t> radix_;
  std::vector<std::size_t> digits_;
};

std::size_t flat_index(std::span<const std::size_t> radix, std::span<const std::size_t> digits) {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < radix.size(); ++i) idx = idx * radix[i] + digits[i];
  return idx;
}

NameList concat(const NameList& x, const NameList& y) {
  NameList out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

void check_sets(const JointPmf& p, const NameList& a, const NameList& b, const NameList& c) {
  std::vector<std::string> issues;
  std::set<std::string> seen;
  for (const NameList* set : {&a, &b, &c}) {
    for (const auto& n : *set) {
      if (std::find(p.names().begin(), p.names().end(), n) == p.names().end()) {
        issues.push_back("unknown variable '" + n + "'");
      } else if (!seen.insert(n).second) {
        issues.push_back("variable '" + n + "' appears in more than one set");
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

double entropy_of(const JointPmf& p, const NameList& vars) {
  if (vars.empty()) return 0.0;
  return p.marginal(vars).entropy();
}

double dirichlet_fill(std::mt19937_64& rng, std::span<double> row) {
  std::exponential_distribution<double> expo(1.0);
  double sum = 0;
  for (auto& v : row) {
    v = expo(rng);
    sum += v;
  }
  for (auto& v : row) v /= sum;
  return sum;
}

void check_factor(const std::vector<double>& t, std::size_t expected, const char* name,
                  std::vector<std::string>& issues) {
  if (t.size() != expected) {
    issues.push_back(std::string(name) + " has " + std::to_string(t.size()) + " entries, expected " +
                     std::to_string(expected));
    return;
  }
  for (double v : t) {
    if (!std::isfinite(v) || v < 0) {
      issues.push_back(std::string(name) + " has a negative or non-finite entry");
      return;
    }
  }
}

}  // namespace

JointPmf::JointPmf(std::vector<std::string> names, std::vector<std::size_t> alphabet, std::vector<double> table,
                   PmfLimits limits)
    : names_(std::move(names)), alphabet_(std::move(alphabet)), table_(std::move(table)), limits_(limits) {
  std::vector<std::string> issues;
  if (names_.size() != alphabet_.size()) issues.push_back("names and alphabet sizes differ in length");
  std::set<std::string> unique(names_.begin(), names_.end());
  if (unique.size() != names_.size()) issues.push_back("duplicate variable names");
  std::size_t entries = 1;
  for (std::size_t i = 0; i < alphabet_.size(); ++i) {
    if (alphabet_[i] < 1 || alphabet_[i] > limits_.max_alphabet) {
      issues.push_back("alphabet of '" + (i < names_.size() ? names_[i] : std::string("?")) + "' must be in [1, " +
                       std::to_string(limits_.max_alphabet) + "]");
    }
    entries *= std::max<std::size_t>(alphabet_[i], 1);
    if (entries > limits_.max_entries) {
      issues.push_back("joint table exceeds " + std::to_string(limits_.max_entries) + " entries");
      break;
    }
  }
  if (issues.empty() && table_.size() != entries) {
    issues.push_back("table has " + std::to_string(table_.size()) + " entries, expected " + std::to_string(entries));
  }
  double mass = 0;
  for (double v : table_) {
    if (!std::isfinite(v) || v < 0) {
      issues.push_back("probabilities must be finite and >= 0");
      break;
    }
    mass += v;
  }
  if (issues.empty() && std::abs(mass - 1.0) > kMassTol) {
    issues.push_back("total mass " + std::to_string(mass) + " differs from 1");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::size_t JointPmf::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ValidationError({"unknown variable '" + std::string(name) + "'"});
  return static_cast<std::size_t>(it - names_.begin());
}

double JointPmf::prob(std::span<const std::size_t> symbols) const {
  if (symbols.size() != alphabet_.size()) throw ValidationError({"symbol tuple has the wrong length"});
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] >= alphabet_[i]) throw ValidationError({"symbol out of range for '" + names_[i] + "'"});
  }
  return table_[flat_index(alphabet_, symbols)];
}

JointPmf JointPmf::marginal(std::span<const std::string> keep) const {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> radix;
  for (const auto& n : keep) {
    pos.push_back(index_of(n));
    radix.push_back(alphabet_[pos.back()]);
  }
  std::size_t entries = 1;
  for (std::size_t r : radix) entries *= r;
  std::vector<double> out(entries, 0.0);
  Odometer odo(alphabet_);
  std::vector<std::size_t> sub(pos.size());
  for (double v : table_) {
    const auto& d = odo.digits();
    for (std::size_t k = 0; k < pos.size(); ++k) sub[k] = d[pos[k]];
    out[flat_index(radix, sub)] += v;
    odo.next();
  }
  return JointPmf(NameList(keep.begin(), keep.end()), std::move(radix), std::move(out), limits_);
}

double JointPmf::entropy() const {
  double h = 0;
  for (double v : table_) {
    if (v > 0) h -= v * std::log2(v);
  }
  return h;
}

double conditional_mi_pmf(const JointPmf& p, const NameList& a, const NameList& b, const NameList& c) {
  check_sets(p, a, b, c);
  if (a.empty() || b.empty()) return 0.0;
  const NameList ac = concat(a, c);
  const NameList bc = concat(b, c);
  const NameList abc = concat(a, bc);
  const double mi = entropy_of(p, ac) + entropy_of(p, bc) - entropy_of(p, abc) - entropy_of(p, c);
  return mi < 1e-15 ? 0.0 : mi;
}

double independence_defect(const JointPmf& p, const NameList& a, const NameList& b, const NameList& c) {
  check_sets(p, a, b, c);
  const NameList abc = concat(concat(a, b), c);
  const JointPmf pabc = p.marginal(abc);
  const JointPmf pac = p.marginal(concat(a, c));
  const JointPmf pbc = p.marginal(concat(b, c));
  const JointPmf pc = c.empty() ? JointPmf({}, {}, {1.0}) : p.marginal(c);

  const std::size_t na = a.size(), nb = b.size();
  std::vector<std::size_t> dac, dbc, dc;
  double worst = 0;
  Odometer odo(pabc.alphabet());
  for (double v : pabc.table()) {
    const auto& d = odo.digits();
    dac.assign(d.begin(), d.begin() + static_cast<std::ptrdiff_t>(na));
    dac.insert(dac.end(), d.begin() + static_cast<std::ptrdiff_t>(na + nb), d.end());
    dbc.assign(d.begin() + static_cast<std::ptrdiff_t>(na), d.end());
    dc.assign(d.begin() + static_cast<std::ptrdiff_t>(na + nb), d.end());
    const double lhs = v * pc.prob(dc);
    const double rhs = pac.prob(dac) * pbc.prob(dbc);
    worst = std::max(worst, std::abs(lhs - rhs));
    odo.next();
  }
  return worst;
}

BoundSet eval_region1(const JointPmf& p) {
  for (const auto& n : kNetworkNames) p.index_of(n);

  struct Check {
    NameList a, b, c;
    const char* conditional;
  };
  const Check checks[] = {
      {{"X2"}, {"U2"}, {"U1", "X3"}, "p(x2|u1,x3): X2 must not depend on U2 given (U1, X3)"},
      {{"X1"}, {"X2"}, {"U1", "U2", "X3"}, "p(x1|u1,u2,x3): X1 must not depend on X2 given (U1, U2, X3)"},
      {{"Y2", "Y3", "Y4"}, {"U1", "U2"}, {"X1", "X2", "X3"},
       "p(y2,y3,y4|x1,x2,x3): outputs must not depend on (U1, U2) given the inputs"},
  };
  std::vector<std::string> issues;
  for (const auto& ck : checks) {
    const double defect = independence_defect(p, ck.a, ck.b, ck.c);
    if (defect > kFactorTol) {
      issues.push_back(std::string("factorization violated at ") + ck.conditional + " (defect " +
                       std::to_string(defect) + ")");
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  BoundSet s;
  s.a1 = conditional_mi_pmf(p, {"Y4"}, {"X1"}, {"U1", "U2", "X2", "X3"});
  s.a2 = conditional_mi_pmf(p, {"Y3"}, {"X1"}, {"X2", "X3", "U1", "U2"});
  s.b = conditional_mi_pmf(p, {"Y2"}, {"U2"}, {"U1", "X2", "X3"});
  s.c1 = conditional_mi_pmf(p, {"Y3"}, {"X2"}, {"X1", "X3", "U1", "U2"});
  s.c2 = conditional_mi_pmf(p, {"Y4"}, {"X2"}, {"U1", "U2", "X1", "X3"});
  s.d1 = conditional_mi_pmf(p, {"Y3"}, {"X1", "X2"}, {"X3", "U1", "U2"});
  s.d2 = conditional_mi_pmf(p, {"Y4"}, {"X1", "X2"}, {"U1", "U2", "X3"});
  s.e1 = conditional_mi_pmf(p, {"Y3"}, {"X1", "X2", "U1", "U2"}, {"X3"});
  s.e2 = conditional_mi_pmf(p, {"Y4"}, {"U1", "U2", "X1", "X2", "X3"});
  return s;
}

RateRegion eval_region2(const BoundSet& k) {
  for (double v : {k.a1, k.a2, k.b, k.c1, k.c2, k.d1, k.d2, k.e1, k.e2}) {
    if (!std::isfinite(v) || v < 0) throw ValidationError({"bound constants must be finite and >= 0"});
  }
  const double r1 = k.b + std::min(k.a1, k.a2);
  const double r2 = std::min(k.c1, k.c2);
  const double sum = std::min(std::min(k.e1, k.e2), k.b + std::min(k.d1, k.d2));
  return pareto_extract(polygon_corners(r1, r2, sum), Provenance::custom);
}

JointPmf make_network_pmf(const NetworkFactors& f, PmfLimits limits) {
  const auto& A = f.alphabet;
  std::vector<std::string> issues;
  check_factor(f.p_x3, A.x3, "p_x3", issues);
  check_factor(f.p_u1_x3, A.x3 * A.u1, "p_u1_x3", issues);
  check_factor(f.p_u2_u1x3, A.u1 * A.x3 * A.u2, "p_u2_u1x3", issues);
  check_factor(f.p_x2_u1x3, A.u1 * A.x3 * A.x2, "p_x2_u1x3", issues);
  check_factor(f.p_x1_u1u2x3, A.u1 * A.u2 * A.x3 * A.x1, "p_x1_u1u2x3", issues);
  check_factor(f.channel, A.x1 * A.x2 * A.x3 * A.y2 * A.y3 * A.y4, "channel", issues);
  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::vector<std::size_t> radix{A.x1, A.x2, A.x3, A.u1, A.u2, A.y2, A.y3, A.y4};
  std::size_t entries = 1;
  for (std::size_t r : radix) {
    entries *= r;
    if (entries > limits.max_entries) throw ValidationError({"joint table exceeds the entry budget"});
  }
  std::vector<double> table(entries);
  Odometer odo(radix);
  for (auto& v : table) {
    const auto& d = odo.digits();
    const std::size_t x1 = d[0], x2 = d[1], x3 = d[2], u1 = d[3], u2 = d[4], y2 = d[5], y3 = d[6], y4 = d[7];
    v = f.p_x3[x3] * f.p_u1_x3[x3 * A.u1 + u1] * f.p_u2_u1x3[(u1 * A.x3 + x3) * A.u2 + u2] *
        f.p_x2_u1x3[(u1 * A.x3 + x3) * A.x2 + x2] * f.p_x1_u1u2x3[((u1 * A.u2 + u2) * A.x3 + x3) * A.x1 + x1] *
        f.channel[((((x1 * A.x2 + x2) * A.x3 + x3) * A.y2 + y2) * A.y3 + y3) * A.y4 + y4];
    odo.next();
  }
  return JointPmf(NameList(kNetworkNames.begin(), kNetworkNames.end()), std::move(radix), std::move(table), limits);
}

ChannelTable deterministic_channel(const NetworkAlphabet& a, const OutputMap& f) {
  return symmetric_noise_channel(a, f, 0.0);
}

ChannelTable symmetric_noise_channel(const NetworkAlphabet& a, const OutputMap& f, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw ValidationError({"noise probability must lie in [0,1]"});
  const std::array<std::size_t, 3> ny{a.y2, a.y3, a.y4};
  ChannelTable t(a.x1 * a.x2 * a.x3 * a.y2 * a.y3 * a.y4, 0.0);
  auto marginal = [&](std::size_t j, std::size_t clean, std::size_t y) {
    if (ny[j] == 1) return 1.0;
    return y == clean ? 1.0 - eps : eps / static_cast<double>(ny[j] - 1);
  };
  for (std::size_t x1 = 0; x1 < a.x1; ++x1) {
    for (std::size_t x2 = 0; x2 < a.x2; ++x2) {
      for (std::size_t x3 = 0; x3 < a.x3; ++x3) {
        const auto clean = f(x1, x2, x3);
        for (std::size_t j = 0; j < 3; ++j) {
          if (clean[j] >= ny[j]) throw ValidationError({"output map produced an out-of-range symbol"});
        }
        const std::size_t base = ((x1 * a.x2 + x2) * a.x3 + x3) * a.y2 * a.y3 * a.y4;
        for (std::size_t y2 = 0; y2 < a.y2; ++y2) {
          for (std::size_t y3 = 0; y3 < a.y3; ++y3) {
            for (std::size_t y4 = 0; y4 < a.y4; ++y4) {
              t[base + (y2 * a.y3 + y3) * a.y4 + y4] =
                  marginal(0, clean[0], y2) * marginal(1, clean[1], y3) * marginal(2, clean[2], y4);
            }
          }
        }
      }
    }
  }
  return t;
}

NetworkFactors random_network_factors(std::mt19937_64& rng, const NetworkAlphabet& a) {
  NetworkFactors f;
  f.alphabet = a;
  auto fill_rows = [&](std::vector<double>& t, std::size_t rows, std::size_t width) {
    t.assign(rows * width, 0.0);
    for (std::size_t r = 0; r < rows; ++r) {
      dirichlet_fill(rng, std::span<double>(t).subspan(r * width, width));
    }
  };
  fill_rows(f.p_x3, 1, a.x3);
  fill_rows(f.p_u1_x3, a.x3, a.u1);
  fill_rows(f.p_u2_u1x3, a.u1 * a.x3, a.u2);
  fill_rows(f.p_x2_u1x3, a.u1 * a.x3, a.x2);
  fill_rows(f.p_x1_u1u2x3, a.u1 * a.u2 * a.x3, a.x1);
  fill_rows(f.channel, a.x1 * a.x2 * a.x3, a.y2 * a.y3 * a.y4);
  return f;
}

}  // namespace pcn
