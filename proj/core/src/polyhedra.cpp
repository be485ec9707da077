#include "pcn/polyhedra.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "pcn/error.hpp"

namespace pcn {

namespace {

using Integer = boost::multiprecision::mpz_int;
using Matrix = std::vector<std::vector<Rational>>;

Integer floor_of(const Rational& q) {
  const Integer n = boost::multiprecision::numerator(q);
  const Integer d = boost::multiprecision::denominator(q);
  if (n >= 0) return n / d;
  return -((-n + d - 1) / d);
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
  }
  return s;
}

// Row-reduces `m` in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const Rational inv = 1 / m[r][c];
    for (auto& v : m[r]) v *= inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < m[i].size(); ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Basis of {x : rows·x = 0}.
std::vector<Point> nullspace(const std::vector<const Inequality*>& rows, std::size_t dim) {
  Matrix m;
  for (const auto* row : rows) m.push_back(row->coeffs);
  const auto pivots = row_reduce(m, dim);
  std::vector<bool> is_pivot(dim, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<Point> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    Point v(dim, Rational(0));
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Unique solution of rows·x = rhs, or nullopt if singular.
std::optional<Point> solve(const std::vector<const Inequality*>& rows, std::size_t dim) {
  Matrix m;
  for (const auto* row : rows) {
    auto r = row->coeffs;
    r.push_back(row->rhs);
    m.push_back(std::move(r));
  }
  const auto pivots = row_reduce(m, dim);
  if (pivots.size() != dim) return std::nullopt;
  Point x(dim);
  for (std::size_t i = 0; i < dim; ++i) x[pivots[i]] = m[i][dim];
  return x;
}

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

std::vector<const Inequality*> nonconstant_rows(const LinearSystem& sys) {
  std::vector<const Inequality*> out;
  for (const auto& r : sys.rows()) {
    if (!r.is_constant()) out.push_back(&r);
  }
  return out;
}

bool constants_hold(const LinearSystem& sys) {
  for (const auto& r : sys.rows()) {
    if (r.is_constant() && r.rhs < 0) return false;
  }
  return true;
}

LinearSystem with_rows(const std::vector<std::string>& vars, const std::vector<Inequality>& rows) {
  LinearSystem out(vars);
  for (const auto& r : rows) out.add_row(r);
  return out;
}

// Adds n·x = 0 for every lineality direction n, making the polyhedron pointed
// without changing any LP optimum over directions orthogonal to the lineality.
LinearSystem pointed_closure(const LinearSystem& sys, std::vector<Point>* lineality = nullptr) {
  const auto basis = nullspace(nonconstant_rows(sys), sys.dimension());
  if (lineality) *lineality = basis;
  if (basis.empty()) return sys;
  LinearSystem out = sys;
  for (const auto& n : basis) {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < n.size(); ++i) {
      if (n[i] != 0) terms.push_back({sys.variables()[i], n[i]});
    }
    out.add_eq(terms, 0);
  }
  return out;
}

std::vector<Point> rays_of_pointed(const LinearSystem& sys) {
  const std::size_t d = sys.dimension();
  const auto rows = nonconstant_rows(sys);
  std::vector<Point> rays;
  if (d == 0) return rays;
  for_each_subset(rows.size(), d - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<const Inequality*> sub;
    for (std::size_t i : idx) sub.push_back(rows[i]);
    const auto ns = nullspace(sub, d);
    if (ns.size() != 1) return;
    for (int sign : {1, -1}) {
      Point r = ns[0];
      if (sign < 0) {
        for (auto& v : r) v = -v;
      }
      bool ok = true;
      for (const auto* row : rows) {
        if (dot(row->coeffs, r) > 0) {
          ok = false;
          break;
        }
      }
      if (ok) rays.push_back(r);
    }
  });
  return rays;
}

std::vector<Point> feasible_vertices(const LinearSystem& sys) { return vertices(pointed_closure(sys)); }

std::string point_str(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + to_string(p[i]);
  return s + ")";
}

}  // namespace

std::string to_string(const Rational& q) { return q.str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw ValidationError({"empty rational"});
  s = s.substr(first, last - first + 1);
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  bool digits = false, slash = false, denom_digits = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      (slash ? denom_digits : digits) = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
    } else {
      throw ValidationError({"malformed rational '" + s + "'"});
    }
  }
  if (!digits || (slash && !denom_digits)) throw ValidationError({"malformed rational '" + s + "'"});
  if (s[0] == '+') s.erase(0, 1);
  Rational q(s);
  if (boost::multiprecision::denominator(q) == 0) throw ValidationError({"zero denominator in '" + s + "'"});
  return q;
}

SnappedValue snap_to_rational(double x, double tol) {
  if (!std::isfinite(x)) throw ValidationError({"cannot snap a non-finite value"});
  const Rational exact(x);
  Integer h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  Rational r = exact;
  SnappedValue best{exact, 0.0};
  for (int it = 0; it < 128; ++it) {
    const Integer a = floor_of(r);
    const Integer h = a * h1 + h2;
    const Integer k = a * k1 + k2;
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = k;
    const Rational q(h, k);
    const Rational diff = abs(exact - q);
    if (diff <= Rational(tol)) return {q, diff.convert_to<double>()};
    const Rational frac = r - Rational(a);
    if (frac == 0) break;
    r = 1 / frac;
  }
  return best;
}

bool Inequality::is_constant() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& c) { return c == 0; });
}

LinearSystem::LinearSystem(std::vector<std::string> variables) : variables_(std::move(variables)) {
  std::sort(variables_.begin(), variables_.end());
  if (std::adjacent_find(variables_.begin(), variables_.end()) != variables_.end()) {
    throw ValidationError({"duplicate variable names in linear system"});
  }
}

std::optional<std::size_t> LinearSystem::position(std::string_view var) const {
  auto it = std::lower_bound(variables_.begin(), variables_.end(), var);
  if (it == variables_.end() || *it != var) return std::nullopt;
  return static_cast<std::size_t>(it - variables_.begin());
}

std::optional<Rational> LinearSystem::add_row(Inequality row) {
  if (row.coeffs.size() != variables_.size()) throw ValidationError({"row width does not match variables"});
  Rational factor = 1;
  if (!row.is_constant()) {
    Integer l = 1, g = 0;
    for (const auto& c : row.coeffs) {
      if (c != 0) l = boost::multiprecision::lcm(l, Integer(boost::multiprecision::denominator(c)));
    }
    for (const auto& c : row.coeffs) {
      if (c == 0) continue;
      const Integer n = abs(boost::multiprecision::numerator(c) * (l / boost::multiprecision::denominator(c)));
      g = g == 0 ? n : boost::multiprecision::gcd(g, n);
    }
    factor = Rational(l, g);
    for (auto& c : row.coeffs) c *= factor;
    row.rhs *= factor;
  }
  if (std::find(rows_.begin(), rows_.end(), row) != rows_.end()) return std::nullopt;
  rows_.push_back(std::move(row));
  return factor;
}

std::optional<Rational> LinearSystem::add_le(const std::vector<Term>& terms, const Rational& rhs) {
  Inequality row{std::vector<Rational>(variables_.size(), Rational(0)), rhs};
  for (const auto& t : terms) {
    const auto pos = position(t.var);
    if (!pos) throw ValidationError({"unknown variable '" + t.var + "'"});
    row.coeffs[*pos] += t.coeff;
  }
  return add_row(std::move(row));
}

std::optional<Rational> LinearSystem::add_ge(const std::vector<Term>& terms, const Rational& rhs) {
  std::vector<Term> neg = terms;
  for (auto& t : neg) t.coeff = -t.coeff;
  return add_le(neg, -rhs);
}

void LinearSystem::add_eq(const std::vector<Term>& terms, const Rational& rhs) {
  add_le(terms, rhs);
  add_ge(terms, rhs);
}

bool LinearSystem::satisfies(std::span<const Rational> point) const {
  if (point.size() != variables_.size()) throw ValidationError({"point dimension does not match system"});
  for (const auto& r : rows_) {
    if (dot(r.coeffs, point) > r.rhs) return false;
  }
  return true;
}

std::string LinearSystem::str() const {
  std::ostringstream os;
  for (const auto& r : rows_) {
    bool any = false;
    for (std::size_t i = 0; i < r.coeffs.size(); ++i) {
      if (r.coeffs[i] == 0) continue;
      os << (any ? " + " : "") << to_string(r.coeffs[i]) << "*" << variables_[i];
      any = true;
    }
    if (!any) os << "0";
    os << " <= " << to_string(r.rhs) << "\n";
  }
  return os.str();
}

Projection eliminate(const LinearSystem& sys, std::string_view var) {
  const auto pos = sys.position(var);
  Projection out;
  if (!pos) {
    out.system = sys;
    for (std::size_t k = 0; k < sys.rows().size(); ++k) {
      out.derivation.push_back({{{k, Rational(1)}}});
      out.combined.emplace_back(k, k);
    }
    return out;
  }
  std::vector<std::string> vars;
  for (const auto& v : sys.variables()) {
    if (v != var) vars.push_back(v);
  }
  out.system = LinearSystem(vars);
  auto drop = [&](const std::vector<Rational>& c) {
    std::vector<Rational> r;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i != *pos) r.push_back(c[i]);
    }
    return r;
  };

  std::vector<std::size_t> upper, lower;
  const auto& rows = sys.rows();
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const Rational& c = rows[k].coeffs[*pos];
    if (c > 0) {
      upper.push_back(k);
    } else if (c < 0) {
      lower.push_back(k);
    } else if (auto f = out.system.add_row({drop(rows[k].coeffs), rows[k].rhs})) {
      out.derivation.push_back({{{k, *f}}});
      out.combined.emplace_back(k, k);
    }
  }
  for (std::size_t u : upper) {
    for (std::size_t l : lower) {
      const Rational cu = rows[u].coeffs[*pos];
      const Rational cl = -rows[l].coeffs[*pos];
      std::vector<Rational> coeffs(rows[u].coeffs.size());
      for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = cl * rows[u].coeffs[i] + cu * rows[l].coeffs[i];
      const Rational rhs = cl * rows[u].rhs + cu * rows[l].rhs;
      if (auto f = out.system.add_row({drop(coeffs), rhs})) {
        out.derivation.push_back({{{u, cl * *f}, {l, cu * *f}}});
        out.combined.emplace_back(u, l);
      }
    }
  }
  return out;
}

Projection project(const LinearSystem& sys, std::span<const std::string> vars) {
  Projection acc = eliminate(sys, "");  // identity
  for (const auto& v : vars) {
    Projection step = eliminate(acc.system, v);
    std::vector<Derivation> composed;
    for (const auto& d : step.derivation) {
      std::map<std::size_t, Rational> sum;
      for (const auto& [j, m] : d.terms) {
        for (const auto& [root, m0] : acc.derivation[j].terms) sum[root] += m * m0;
      }
      Derivation c;
      for (auto& [root, m] : sum) {
        if (m != 0) c.terms.emplace_back(root, m);
      }
      composed.push_back(std::move(c));
    }
    acc.system = std::move(step.system);
    acc.derivation = std::move(composed);
    acc.combined = std::move(step.combined);
  }
  return acc;
}

bool replays(const LinearSystem& source, const Projection& proj) {
  const auto& rows = proj.system.rows();
  if (proj.derivation.size() != rows.size()) return false;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::vector<Rational> coeffs(source.dimension(), Rational(0));
    Rational rhs = 0;
    for (const auto& [j, m] : proj.derivation[k].terms) {
      if (m < 0 || j >= source.rows().size()) return false;
      const auto& src = source.rows()[j];
      for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += m * src.coeffs[i];
      rhs += m * src.rhs;
    }
    if (rhs != rows[k].rhs) return false;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const auto pos = proj.system.position(source.variables()[i]);
      const Rational expect = pos ? rows[k].coeffs[*pos] : Rational(0);
      if (coeffs[i] != expect) return false;
    }
  }
  return true;
}

std::vector<Point> vertices(const LinearSystem& sys) {
  const std::size_t d = sys.dimension();
  if (!constants_hold(sys)) return {};
  if (d == 0) return {Point{}};
  const auto rows = nonconstant_rows(sys);
  if (!nullspace(rows, d).empty()) {
    throw ValidationError({"vertex enumeration needs a pointed polyhedron (constraint matrix is rank deficient)"});
  }
  std::vector<Point> out;
  for_each_subset(rows.size(), d, [&](const std::vector<std::size_t>& idx) {
    std::vector<const Inequality*> sub;
    for (std::size_t i : idx) sub.push_back(rows[i]);
    auto x = solve(sub, d);
    if (x && sys.satisfies(*x)) out.push_back(std::move(*x));
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Point> unbounded_direction(const LinearSystem& sys) {
  std::vector<Point> lineality;
  const LinearSystem closed = pointed_closure(sys, &lineality);
  if (!lineality.empty()) return lineality.front();
  auto rays = rays_of_pointed(closed);
  if (rays.empty()) return std::nullopt;
  return rays.front();
}

LpResult maximize(const LinearSystem& sys, std::span<const Rational> objective) {
  if (objective.size() != sys.dimension()) throw ValidationError({"objective dimension does not match system"});
  std::vector<Point> lineality;
  const LinearSystem closed = pointed_closure(sys, &lineality);
  const auto verts = vertices(closed);
  LpResult res;
  if (verts.empty()) return res;  // infeasible
  for (const auto& n : lineality) {
    if (dot(objective, n) != 0) {
      res.status = LpStatus::unbounded;
      return res;
    }
  }
  for (const auto& r : rays_of_pointed(closed)) {
    if (dot(objective, r) > 0) {
      res.status = LpStatus::unbounded;
      return res;
    }
  }
  res.status = LpStatus::optimal;
  res.argmax = verts.front();
  res.value = dot(objective, verts.front());
  for (const auto& v : verts) {
    const Rational val = dot(objective, v);
    if (val > res.value) {
      res.value = val;
      res.argmax = v;
    }
  }
  return res;
}

LinearSystem remove_redundant(const LinearSystem& sys) {
  if (sys.dimension() > 3) throw ValidationError({"redundancy removal supports at most 3 variables"});
  const auto infeasible = [&] {
    LinearSystem out(sys.variables());
    out.add_row({std::vector<Rational>(sys.dimension(), Rational(0)), Rational(-1)});
    return out;
  };
  if (feasible_vertices(sys).empty()) return infeasible();
  if (auto ray = unbounded_direction(sys)) {
    throw ComputationError("system is unbounded along " + point_str(*ray));
  }
  std::vector<Inequality> current;
  for (const auto* r : nonconstant_rows(sys)) current.push_back(*r);
  for (std::size_t i = 0; i < current.size();) {
    std::vector<Inequality> others = current;
    others.erase(others.begin() + static_cast<std::ptrdiff_t>(i));
    const LpResult lp = maximize(with_rows(sys.variables(), others), current[i].coeffs);
    if (lp.status == LpStatus::optimal && lp.value <= current[i].rhs) {
      current = std::move(others);
    } else {
      ++i;
    }
  }
  return with_rows(sys.variables(), current);
}

RegionComparison regions_equal(const LinearSystem& s1, const LinearSystem& s2) {
  if (s1.variables() != s2.variables()) throw ValidationError({"systems are over different variables"});
  const auto v1 = feasible_vertices(s1);
  const auto v2 = feasible_vertices(s2);
  if (!v1.empty() && unbounded_direction(s1)) throw ValidationError({"first system is unbounded"});
  if (!v2.empty() && unbounded_direction(s2)) throw ValidationError({"second system is unbounded"});
  RegionComparison out;
  if (v1 == v2) {
    out.equal = true;
    return out;
  }
  // A vertex of one region outside the other exists whenever the vertex sets
  // differ. Step from that region's vertex centroid towards the vertex and
  // report the midpoint between the exit from the other region and the vertex.
  auto search = [](const std::vector<Point>& verts, const LinearSystem& other) -> std::optional<Point> {
    if (verts.empty()) return std::nullopt;
    const std::size_t d = verts.front().size();
    Point centroid(d, Rational(0));
    for (const auto& v : verts) {
      for (std::size_t i = 0; i < d; ++i) centroid[i] += v[i];
    }
    for (auto& c : centroid) c /= static_cast<long>(verts.size());
    if (!other.satisfies(centroid)) return centroid;
    for (const auto& v : verts) {
      if (other.satisfies(v)) continue;
      Point dir(d);
      for (std::size_t i = 0; i < d; ++i) dir[i] = v[i] - centroid[i];
      Rational t_exit = 1;
      for (const auto& r : other.rows()) {
        const Rational slope = dot(r.coeffs, dir);
        if (slope > 0) t_exit = std::min(t_exit, (r.rhs - dot(r.coeffs, centroid)) / slope);
      }
      const Rational t = (t_exit + 1) / 2;
      Point w(d);
      for (std::size_t i = 0; i < d; ++i) w[i] = centroid[i] + t * dir[i];
      return w;
    }
    return std::nullopt;
  };
  if (auto w = search(v1, s2)) {
    out.witness = std::move(w);
    out.witness_in = 1;
  } else if (auto w2 = search(v2, s1)) {
    out.witness = std::move(w2);
    out.witness_in = 2;
  }
  return out;
}

RationalBounds snap_bounds(const BoundSet& k, double tol, double* max_error) {
  double worst = 0;
  auto snap = [&](double v) {
    const auto s = snap_to_rational(v, tol);
    worst = std::max(worst, s.error);
    return s.value;
  };
  RationalBounds r{snap(k.a1), snap(k.a2), snap(k.b),  snap(k.c1), snap(k.c2),
                   snap(k.d1), snap(k.d2), snap(k.e1), snap(k.e2)};
  if (max_error) *max_error = worst;
  return r;
}

LinearSystem split_rate_system(const RationalBounds& k) {
  LinearSystem s({"R1", "R11", "R12", "R2"});
  s.add_le({{"R11", 1}}, k.a1);
  s.add_le({{"R11", 1}}, k.a2);
  s.add_le({{"R12", 1}}, k.b);
  s.add_le({{"R2", 1}}, k.c1);
  s.add_le({{"R2", 1}}, k.c2);
  s.add_le({{"R2", 1}, {"R11", 1}}, k.d1);
  s.add_le({{"R2", 1}, {"R11", 1}}, k.d2);
  s.add_le({{"R2", 1}, {"R11", 1}, {"R12", 1}}, k.e1);
  s.add_le({{"R2", 1}, {"R11", 1}, {"R12", 1}}, k.e2);
  s.add_eq({{"R1", 1}, {"R11", -1}, {"R12", -1}}, 0);
  s.add_ge({{"R11", 1}}, 0);
  s.add_ge({{"R12", 1}}, 0);
  s.add_ge({{"R2", 1}}, 0);
  return s;
}

LinearSystem reduced_rate_system(const RationalBounds& k) {
  LinearSystem s({"R1", "R2"});
  s.add_le({{"R1", 1}}, k.b + k.a1);
  s.add_le({{"R1", 1}}, k.b + k.a2);
  s.add_le({{"R2", 1}}, k.c1);
  s.add_le({{"R2", 1}}, k.c2);
  s.add_le({{"R1", 1}, {"R2", 1}}, k.e1);
  s.add_le({{"R1", 1}, {"R2", 1}}, k.e2);
  s.add_le({{"R1", 1}, {"R2", 1}}, k.b + k.d1);
  s.add_le({{"R1", 1}, {"R2", 1}}, k.b + k.d2);
  s.add_ge({{"R1", 1}}, 0);
  s.add_ge({{"R2", 1}}, 0);
  return s;
}

}  // namespace pcn
