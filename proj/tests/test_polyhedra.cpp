#include <doctest.h>

#include <algorithm>
#include <random>

#include "pcn/error.hpp"
#include "pcn/polyhedra.hpp"
#include "pcn/verify.hpp"

using namespace pcn;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

RationalBounds all(const Rational& v) { return {v, v, v, v, v, v, v, v, v}; }

std::vector<Inequality> sorted_rows(const LinearSystem& s) {
  auto rows = s.rows();
  std::sort(rows.begin(), rows.end(), [](const Inequality& a, const Inequality& b) {
    if (a.coeffs != b.coeffs) return a.coeffs < b.coeffs;
    return a.rhs < b.rhs;
  });
  return rows;
}

/// Whether some value of variable `k` extends `p` to a point of `sys`,
/// decided from the interval the rows leave for that coordinate.
bool extendable(const LinearSystem& sys, Point p, std::size_t k) {
  std::optional<Rational> lo, hi;
  for (const auto& row : sys.rows()) {
    Rational rest = row.rhs;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i != k) rest -= row.coeffs[i] * p[i];
    }
    const Rational& a = row.coeffs[k];
    if (a == 0) {
      if (rest < 0) return false;
    } else if (a > 0) {
      const Rational bound = rest / a;
      if (!hi || bound < *hi) hi = bound;
    } else {
      const Rational bound = rest / a;
      if (!lo || bound > *lo) lo = bound;
    }
  }
  return !lo || !hi || *lo <= *hi;
}

}  // namespace

TEST_SUITE("polyhedra") {
  TEST_CASE("rational text round trip") {
    CHECK(parse_rational("3/6") == q(1, 2));
    CHECK(parse_rational("-7") == q(-7));
    CHECK(to_string(q(-4, 6)) == "-2/3");
    CHECK_THROWS_AS(parse_rational("1.5"), ValidationError);
    CHECK_THROWS_AS(parse_rational("1/0"), ValidationError);
    CHECK_THROWS_AS(parse_rational(""), ValidationError);
  }

  TEST_CASE("continued-fraction snapping") {
    CHECK(snap_to_rational(0.5).value == q(1, 2));
    CHECK(snap_to_rational(0.5).error == 0.0);
    const auto third = snap_to_rational(1.0 / 3.0);
    CHECK(third.value == q(1, 3));
    CHECK(third.error <= 1e-12);
    CHECK(snap_to_rational(3.14159265358979, 1e-3).value == q(333, 106));
    CHECK(snap_to_rational(-2.25).value == q(-9, 4));
    CHECK_THROWS_AS(snap_to_rational(std::nan("")), ValidationError);
  }

  TEST_CASE("rows are canonicalised and deduplicated") {
    LinearSystem s({"y", "x"});
    CHECK(s.variables() == std::vector<std::string>{"x", "y"});
    const auto f = s.add_le({{"x", q(2, 3)}, {"y", q(4, 3)}}, q(2));
    REQUIRE(f.has_value());
    CHECK(*f == q(3, 2));
    CHECK(s.rows()[0].coeffs == std::vector<Rational>{q(1), q(2)});
    CHECK(s.rows()[0].rhs == q(3));
    CHECK_FALSE(s.add_le({{"x", q(1)}, {"y", q(2)}}, q(3)).has_value());
    CHECK(s.rows().size() == 1);
    CHECK_THROWS_AS(s.add_le({{"z", q(1)}}, q(0)), ValidationError);
  }

  TEST_CASE("eliminating y from a small system") {
    LinearSystem s({"x", "y"});
    s.add_le({{"y", q(1)}}, q(2));
    s.add_le({{"x", q(1)}, {"y", q(1)}}, q(3));
    s.add_ge({{"y", q(1)}}, q(0));
    s.add_ge({{"x", q(1)}}, q(0));
    const auto p = eliminate(s, "y");
    CHECK(p.system.variables() == std::vector<std::string>{"x"});
    LinearSystem want({"x"});
    want.add_le({{"x", q(1)}}, q(3));
    want.add_ge({{"x", q(1)}}, q(0));
    want.add_row({{q(0)}, q(2)});
    CHECK(sorted_rows(p.system) == sorted_rows(want));
    CHECK(replays(s, p));
  }

  TEST_CASE("eliminating an absent variable is the identity") {
    LinearSystem s({"x"});
    s.add_le({{"x", q(1)}}, q(1));
    const auto p = eliminate(s, "z");
    CHECK(p.system.variables() == s.variables());
    CHECK(p.system.rows() == s.rows());
    CHECK(replays(s, p));
  }

  TEST_CASE("projecting the split-rate system with unit constants") {
    const std::vector<std::string> vars{"R11", "R12"};
    const auto p = project(split_rate_system(all(q(1))), vars);
    CHECK(p.system.variables() == std::vector<std::string>{"R1", "R2"});
    LinearSystem hand({"R1", "R2"});
    hand.add_le({{"R2", q(1)}}, q(1));
    hand.add_le({{"R1", q(1)}, {"R2", q(1)}}, q(1));
    hand.add_le({{"R1", q(1)}}, q(2));
    hand.add_ge({{"R1", q(1)}}, q(0));
    hand.add_ge({{"R2", q(1)}}, q(0));
    CHECK(regions_equal(p.system, hand).equal);

    const auto minimal = remove_redundant(p.system);
    LinearSystem want({"R1", "R2"});
    want.add_le({{"R1", q(1)}, {"R2", q(1)}}, q(1));
    want.add_ge({{"R1", q(1)}}, q(0));
    want.add_ge({{"R2", q(1)}}, q(0));
    CHECK(sorted_rows(minimal) == sorted_rows(want));
  }

  TEST_CASE("redundancy removal") {
    LinearSystem s({"x"});
    s.add_le({{"x", q(1)}}, q(1));
    s.add_le({{"x", q(1)}}, q(2));
    s.add_ge({{"x", q(1)}}, q(0));
    LinearSystem want({"x"});
    want.add_le({{"x", q(1)}}, q(1));
    want.add_ge({{"x", q(1)}}, q(0));
    CHECK(sorted_rows(remove_redundant(s)) == sorted_rows(want));

    LinearSystem pent({"a", "b"});
    pent.add_le({{"a", q(1)}}, q(1));
    pent.add_le({{"b", q(1)}}, q(1));
    pent.add_le({{"a", q(1)}, {"b", q(1)}}, q(3));
    pent.add_ge({{"a", q(1)}}, q(0));
    pent.add_ge({{"b", q(1)}}, q(0));
    CHECK(remove_redundant(pent).rows().size() == 4);

    LinearSystem open({"x"});
    open.add_ge({{"x", q(1)}}, q(0));
    CHECK_THROWS_AS(remove_redundant(open), ComputationError);

    LinearSystem empty({"x"});
    empty.add_le({{"x", q(1)}}, q(-1));
    empty.add_ge({{"x", q(1)}}, q(0));
    const auto e = remove_redundant(empty);
    REQUIRE(e.rows().size() == 1);
    CHECK(e.rows()[0].is_constant());
    CHECK(e.rows()[0].rhs == q(-1));
  }

  TEST_CASE("regions_equal with witness") {
    LinearSystem a({"x"});
    a.add_le({{"x", q(1)}}, q(1));
    a.add_ge({{"x", q(1)}}, q(0));
    LinearSystem b({"x"});
    b.add_le({{"x", q(1)}}, q(2));
    b.add_ge({{"x", q(1)}}, q(0));
    CHECK(regions_equal(a, a).equal);
    const auto cmp = regions_equal(a, b);
    CHECK_FALSE(cmp.equal);
    REQUIRE(cmp.witness.has_value());
    CHECK(*cmp.witness == Point{q(3, 2)});
    CHECK(cmp.witness_in == 2);
    CHECK_FALSE(a.satisfies(*cmp.witness));
    CHECK(b.satisfies(*cmp.witness));
  }

  TEST_CASE("exact LP and vertices") {
    const auto sys = reduced_rate_system(all(q(1)));
    const Rational obj[] = {q(1), q(1)};
    const auto lp = maximize(sys, obj);
    CHECK(lp.status == LpStatus::optimal);
    CHECK(lp.value == q(1));
    CHECK(vertices(sys) == std::vector<Point>{{q(0), q(0)}, {q(0), q(1)}, {q(1), q(0)}});
    CHECK_FALSE(unbounded_direction(sys).has_value());

    LinearSystem half({"x", "y"});
    half.add_ge({{"x", q(1)}}, q(0));
    half.add_ge({{"y", q(1)}}, q(0));
    CHECK(maximize(half, obj).status == LpStatus::unbounded);
    CHECK(unbounded_direction(half).has_value());

    LinearSystem none({"x", "y"});
    none.add_le({{"x", q(1)}, {"y", q(1)}}, q(-1));
    none.add_ge({{"x", q(1)}}, q(0));
    none.add_ge({{"y", q(1)}}, q(0));
    CHECK(maximize(none, obj).status == LpStatus::infeasible);
  }

  TEST_CASE("elimination is sound on random points") {
    std::mt19937_64 rng(81);
    std::uniform_int_distribution<int> num(-10, 60);
    std::uniform_int_distribution<int> den(1, 6);
    for (int trial = 0; trial < 5; ++trial) {
      const auto sys = split_rate_system(random_rational_bounds(rng, false));
      const auto proj = eliminate(sys, "R11");
      const auto k = *sys.position("R11");
      for (int i = 0; i < 1000; ++i) {
        // Projection variables are R1, R12, R2; the source adds R11.
        const Point p{Rational(num(rng), den(rng) * 10), Rational(num(rng), den(rng) * 10),
                      Rational(num(rng), den(rng) * 10)};
        Point lifted{p[0], q(0), p[1], p[2]};
        CHECK(proj.system.satisfies(p) == extendable(sys, lifted, k));
      }
    }
  }

  TEST_CASE("elimination order does not matter") {
    std::mt19937_64 rng(83);
    for (int trial = 0; trial < 50; ++trial) {
      const auto sys = split_rate_system(random_rational_bounds(rng, false));
      const std::vector<std::string> fwd{"R11", "R12"}, rev{"R12", "R11"};
      CHECK(regions_equal(project(sys, fwd).system, project(sys, rev).system).equal);
    }
  }

  TEST_CASE("derivations replay and tampering is caught") {
    std::mt19937_64 rng(85);
    const auto sys = split_rate_system(random_rational_bounds(rng, true));
    const std::vector<std::string> vars{"R11", "R12"};
    auto p = project(sys, vars);
    CHECK(replays(sys, p));
    REQUIRE_FALSE(p.derivation.empty());
    auto& first = p.derivation.front().terms;
    REQUIRE_FALSE(first.empty());
    first.front().second += 1;
    CHECK_FALSE(replays(sys, p));
  }

  TEST_CASE("projection equals the reduced system when min(c) <= min(d)") {
    CHECK(fm_equivalence_random(87, 100).equal == 100);
  }

  TEST_CASE("projection is strictly smaller when min(c) > min(d)") {
    // c = 2 exceeds d = 1 while e and b leave the extra facet R2 <= min(d) binding.
    RationalBounds k = all(q(1));
    k.c1 = k.c2 = q(2);
    k.d1 = q(1);
    k.d2 = q(3, 2);
    k.e1 = k.e2 = q(4);
    k.b = q(1, 2);
    std::string why;
    CHECK_FALSE(projection_matches_reduced(k, &why));
    const std::vector<std::string> vars{"R11", "R12"};
    const auto proj = project(split_rate_system(k), vars).system;
    const auto red = reduced_rate_system(k);
    const auto cmp = regions_equal(proj, red);
    REQUIRE(cmp.witness.has_value());
    CHECK(cmp.witness_in == 2);
    // The reduced polygon contains the projection.
    for (const auto& v : vertices(proj)) CHECK(red.satisfies(v));
    CHECK((*cmp.witness)[1] > q(1));
  }

  TEST_CASE("snapped bounds carry their error") {
    BoundSet b{0.5, 1.0 / 3.0, 0.25, 0.1, 0.2, 0.3, 0.4, 0.6, 0.7};
    double err = -1;
    const auto k = snap_bounds(b, 1e-12, &err);
    CHECK(k.a2 == q(1, 3));
    CHECK(k.c1 == q(1, 10));
    CHECK(err >= 0);
    CHECK(err <= 1e-12);
  }
}
