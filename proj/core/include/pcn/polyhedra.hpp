#pragma once

// Exact-rational linear inequality systems and Fourier–Motzkin projection.

#include <boost/multiprecision/gmp.hpp>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pcn/discrete_info.hpp"

namespace pcn {

using Rational = boost::multiprecision::mpq_rational;
using Point = std::vector<Rational>;

std::string to_string(const Rational& q);
/// Accepts "p", "-p" or "p/q". ValidationError otherwise.
Rational parse_rational(std::string_view text);

struct SnappedValue {
  Rational value;
  double error = 0;  ///< |x − value|
};

/// Continued-fraction approximation: the first convergent within `tol` of x.
SnappedValue snap_to_rational(double x, double tol = 1e-12);

/// Σ coeffs[k]·x_k ≤ rhs, coefficients aligned with the owning system's variables.
struct Inequality {
  std::vector<Rational> coeffs;
  Rational rhs;
  bool is_constant() const;
  friend bool operator==(const Inequality&, const Inequality&) = default;
};

struct Term {
  std::string var;
  Rational coeff;
};

/// Canonical set of inequalities over named variables. Variables are kept
/// sorted by name; each non-constant row is scaled so its coefficients are
/// coprime integers; exact duplicates are dropped on insertion.
class LinearSystem {
 public:
  LinearSystem() = default;
  explicit LinearSystem(std::vector<std::string> variables);

  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<Inequality>& rows() const { return rows_; }
  std::size_t dimension() const { return variables_.size(); }
  std::optional<std::size_t> position(std::string_view var) const;

  /// Adds Σ terms ≤ rhs. Returns the positive factor the row was scaled by
  /// during canonicalisation, or nullopt when it duplicated an existing row.
  std::optional<Rational> add_le(const std::vector<Term>& terms, const Rational& rhs);
  std::optional<Rational> add_ge(const std::vector<Term>& terms, const Rational& rhs);
  /// Stored as the pair ≤ and ≥.
  void add_eq(const std::vector<Term>& terms, const Rational& rhs);
  std::optional<Rational> add_row(Inequality row);

  bool satisfies(std::span<const Rational> point) const;

  std::string str() const;

 private:
  std::vector<std::string> variables_;
  std::vector<Inequality> rows_;
};

/// One output row expressed as a nonnegative combination of input rows.
struct Derivation {
  std::vector<std::pair<std::size_t, Rational>> terms;
};

struct Projection {
  LinearSystem system;
  /// derivation[k] rebuilds system.rows()[k] from the rows of the system
  /// that was projected (not any intermediate one).
  std::vector<Derivation> derivation;
  /// Pairs (upper, lower) of input rows combined by the last elimination
  /// step, or (row, row) for rows passed through.
  std::vector<std::pair<std::size_t, std::size_t>> combined;
};

/// One Fourier–Motzkin step. Eliminating an absent variable is the identity.
Projection eliminate(const LinearSystem& sys, std::string_view var);

/// Eliminates `vars` in order, composing the derivations.
Projection project(const LinearSystem& sys, std::span<const std::string> vars);

/// True if every derivation has nonnegative multipliers and reproduces its
/// row exactly from `source`.
bool replays(const LinearSystem& source, const Projection& proj);

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  Rational value;
  Point argmax;
};

/// Exact max of objective·x by vertex and extreme-ray enumeration. Meant for
/// small dimensions; cost grows with C(rows, dimension).
LpResult maximize(const LinearSystem& sys, std::span<const Rational> objective);

/// Distinct vertices in lexicographic order. Requires a pointed polyhedron
/// (full-rank constraint matrix); ValidationError otherwise.
std::vector<Point> vertices(const LinearSystem& sys);

/// nullopt for bounded systems, otherwise a recession direction.
std::optional<Point> unbounded_direction(const LinearSystem& sys);

/// Minimal system with the same solution set. Dimension must be ≤ 3. Throws
/// ComputationError if the feasible set is unbounded; an infeasible system
/// becomes the single row 0 ≤ −1.
LinearSystem remove_redundant(const LinearSystem& sys);

struct RegionComparison {
  bool equal = false;
  /// Rational point in exactly one region when !equal.
  std::optional<Point> witness;
  /// 1 or 2: which system contains the witness.
  int witness_in = 0;
};

/// Compares two bounded systems over the same variables by their vertex sets.
RegionComparison regions_equal(const LinearSystem& s1, const LinearSystem& s2);

/// Exact counterpart of BoundSet.
struct RationalBounds {
  Rational a1, a2, b, c1, c2, d1, d2, e1, e2;
};

/// Snaps every constant; `max_error` (if given) receives the largest snap error.
RationalBounds snap_bounds(const BoundSet& bounds, double tol = 1e-12, double* max_error = nullptr);

/// The split-rate system over R1, R11, R12, R2, including R1 = R11 + R12
/// and nonnegativity of R11, R12, R2.
LinearSystem split_rate_system(const RationalBounds& k);

/// The reduced system over R1, R2 (the eval_region2 polygon).
LinearSystem reduced_rate_system(const RationalBounds& k);

}  // namespace pcn
