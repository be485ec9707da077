#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "pcn/error.hpp"
#include "pcn/ifc.hpp"

using namespace pcn;

TEST_SUITE("ifc") {
  TEST_CASE("worked example") {
    const auto cfg = ChannelConfig::symmetric({0, 10, 1, 10, 10, 0});
    const auto r = ifc_region(cfg);
    CHECK(std::abs(r.bound_r1 - 0.5) <= 1e-12);
    CHECK(std::abs(r.bound_r2 - 0.5 * std::log2(11.0)) <= 1e-12);
    CHECK(std::abs(r.bound_sum - 0.5 * std::log2(12.0)) <= 1e-12);
  }

  TEST_CASE("disconnected channel satisfies the precondition with equality") {
    const auto r = ifc_region(ChannelConfig{});
    CHECK(r.bound_r1 == 0);
    CHECK(r.bound_r2 == 0);
    CHECK(r.bound_sum == 0);
    CHECK(ifc_frontier(r).frontier() == std::vector<RatePair>{{0, 0}});
  }

  TEST_CASE("weak interference is refused") {
    const auto cfg = ChannelConfig::symmetric({1, 10, 2, 1, 1, 1});
    try {
      ifc_region(cfg);
      FAIL("expected StrongInterferenceError");
    } catch (const StrongInterferenceError& e) {
      CHECK(std::string(e.what()).starts_with("outside strong-interference regime"));
      CHECK(e.kind() == ErrorKind::computation);
    }
    CHECK_THROWS_AS(ifc_region(ChannelConfig::symmetric({1, 1, 1, 2, 5, 1})), StrongInterferenceError);
  }

  TEST_CASE("invalid configs are validation errors") {
    CHECK_THROWS_AS(ifc_region(ChannelConfig{}.with_noise(4, 0)), ValidationError);
  }

  TEST_CASE("pentagon corners") {
    const auto r = ifc_frontier({1, 1, 1.5});
    CHECK(r.frontier() == std::vector<RatePair>{{0.5, 1}, {1, 0.5}});
    CHECK(r.boundary() == std::vector<RatePair>{{0, 1}, {0.5, 1}, {1, 0.5}, {1, 0}});
    CHECK(r.provenance() == Provenance::ifc);
  }

  TEST_CASE("slack sum bound gives a rectangle") {
    const auto r = ifc_frontier({1, 1, 3});
    CHECK(r.frontier() == std::vector<RatePair>{{1, 1}});
    CHECK(r.boundary() == std::vector<RatePair>{{0, 1}, {1, 1}, {1, 0}});
  }

  TEST_CASE("zero bounds give the origin") { CHECK(ifc_frontier({0, 0, 0}).frontier() == std::vector<RatePair>{{0, 0}}); }

  TEST_CASE("invalid bounds are rejected") {
    CHECK_THROWS_AS(ifc_frontier({-1, 1, 1}), ValidationError);
    CHECK_THROWS_AS(ifc_frontier({1, std::nan(""), 1}), ValidationError);
  }

  TEST_CASE("membership agrees with the three inequalities") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0, 3);
    for (int trial = 0; trial < 20; ++trial) {
      const IfcRegion b{u(rng), u(rng), u(rng)};
      const auto r = ifc_frontier(b);
      for (int i = 0; i < 200; ++i) {
        const RatePair p{u(rng), u(rng)};
        const bool inside = p.r1 <= b.bound_r1 && p.r2 <= b.bound_r2 && p.r1 + p.r2 <= b.bound_sum;
        const double margin = std::min({std::abs(p.r1 - b.bound_r1), std::abs(p.r2 - b.bound_r2),
                                        std::abs(p.r1 + p.r2 - b.bound_sum)});
        if (margin > 1e-9) CHECK(r.contains(p) == inside);
      }
    }
  }

  TEST_CASE("common scaling of powers and noises leaves the region unchanged") {
    const auto cfg = ChannelConfig::symmetric({3, 8, 2, 4, 6, 1}, {1.5, 2.5, 0.5}, {0.3, 0.9, 1.7});
    const auto a = ifc_region(cfg);
    const auto b = ifc_region(cfg.scaled(4.0));
    CHECK(a.bound_r1 == b.bound_r1);
    CHECK(a.bound_r2 == b.bound_r2);
    CHECK(a.bound_sum == b.bound_sum);
  }
}
