#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "pcn/discrete_info.hpp"
#include "pcn/error.hpp"

using namespace pcn;

namespace {

JointPmf two_bits(std::vector<double> t) { return JointPmf({"X", "Y"}, {2, 2}, std::move(t)); }

NetworkFactors constant_inputs(const NetworkAlphabet& a) {
  NetworkFactors f;
  f.alphabet = a;
  auto point_mass = [](std::size_t blocks, std::size_t size) {
    std::vector<double> t(blocks * size, 0.0);
    for (std::size_t b = 0; b < blocks; ++b) t[b * size] = 1.0;
    return t;
  };
  f.p_x3 = point_mass(1, a.x3);
  f.p_u1_x3 = point_mass(a.x3, a.u1);
  f.p_u2_u1x3 = point_mass(a.u1 * a.x3, a.u2);
  f.p_x2_u1x3 = point_mass(a.u1 * a.x3, a.x2);
  f.p_x1_u1u2x3 = point_mass(a.u1 * a.u2 * a.x3, a.x1);
  return f;
}

}  // namespace

TEST_SUITE("discrete_info") {
  TEST_CASE("independent bits share nothing") {
    CHECK(conditional_mi_pmf(two_bits({0.25, 0.25, 0.25, 0.25}), {"X"}, {"Y"}) == 0.0);
  }

  TEST_CASE("a copied bit carries one bit") {
    CHECK(conditional_mi_pmf(two_bits({0.5, 0, 0, 0.5}), {"X"}, {"Y"}) == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("binary symmetric channel with crossover 0.11") {
    const double e = 0.11;
    const auto p = two_bits({0.5 * (1 - e), 0.5 * e, 0.5 * e, 0.5 * (1 - e)});
    const double got = conditional_mi_pmf(p, {"X"}, {"Y"});
    CHECK(std::abs(got - oracle::brute_force_mi(p, {"X"}, {"Y"}, {})) <= 1e-12);
    CHECK(std::abs(got - (1 - oracle::h2(e))) <= 1e-12);
  }

  TEST_CASE("argument validation") {
    const auto p = two_bits({0.25, 0.25, 0.25, 0.25});
    CHECK_THROWS_AS(conditional_mi_pmf(p, {"X"}, {"X"}), ValidationError);
    CHECK_THROWS_AS(conditional_mi_pmf(p, {"X"}, {"Z"}), ValidationError);
    CHECK_THROWS_AS(JointPmf({"X", "X"}, {2, 2}, {0.25, 0.25, 0.25, 0.25}), ValidationError);
    CHECK_THROWS_AS(two_bits({0.5, 0.5, 0.5, -0.5}), ValidationError);
    CHECK_THROWS_AS(two_bits({0.25, 0.25, 0.25, 0.2}), ValidationError);
    CHECK_THROWS_AS(JointPmf({"X"}, {5}, {0.2, 0.2, 0.2, 0.2, 0.2}), ValidationError);
    CHECK_NOTHROW(JointPmf({"X"}, {5}, {0.2, 0.2, 0.2, 0.2, 0.2}, PmfLimits{5, 100}));
    CHECK_THROWS_AS(JointPmf({"X", "Y"}, {4, 4}, std::vector<double>(16, 1.0 / 16), PmfLimits{4, 10}), ValidationError);
  }

  TEST_CASE("marginals keep the mass and the requested order") {
    std::mt19937_64 rng(3);
    const auto p = oracle::random_pmf(rng, {"A", "B", "C"}, {2, 3, 4});
    const std::vector<std::string> keep{"C", "A"};
    const auto m = p.marginal(keep);
    CHECK(m.names() == keep);
    CHECK(m.alphabet() == std::vector<std::size_t>{4, 2});
    double direct = 0;
    for (std::size_t b = 0; b < 3; ++b) {
      const std::size_t sym[] = {1, b, 3};
      direct += p.prob(sym);
    }
    const std::size_t ms[] = {3, 1};
    CHECK(m.prob(ms) == doctest::Approx(direct).epsilon(1e-15));
  }

  TEST_CASE("matches brute-force summation on every partition of small tables") {
    std::mt19937_64 rng(5);
    const std::vector<std::vector<std::size_t>> shapes{{2, 2, 2}, {2, 3, 4}, {4, 4, 4}, {2, 2, 2, 2, 2, 2}, {3, 3, 2, 3}};
    for (const auto& shape : shapes) {
      std::vector<std::string> names;
      for (std::size_t i = 0; i < shape.size(); ++i) names.push_back("V" + std::to_string(i));
      for (int trial = 0; trial < 10; ++trial) {
        const auto p = oracle::random_pmf(rng, names, shape, trial % 2 ? 0.3 : 0.0);
        const std::size_t n = names.size();
        std::size_t combos = 1;
        for (std::size_t i = 0; i < n; ++i) combos *= 4;
        for (std::size_t code = 0; code < combos; ++code) {
          std::vector<std::string> a, b, c;
          std::size_t rest = code;
          for (std::size_t i = 0; i < n; ++i, rest /= 4) {
            if (rest % 4 == 0) a.push_back(names[i]);
            if (rest % 4 == 1) b.push_back(names[i]);
            if (rest % 4 == 2) c.push_back(names[i]);
          }
          if (a.empty() || b.empty()) continue;
          const double want = std::max(0.0, oracle::brute_force_mi(p, a, b, c));
          CHECK(std::abs(conditional_mi_pmf(p, a, b, c) - want) <= 1e-12);
        }
      }
    }
  }

  TEST_CASE("chain rule on random tables") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
      const auto p = oracle::random_pmf(rng, {"A", "B", "D", "C"}, {2, 3, 2, 2});
      const double whole = conditional_mi_pmf(p, {"A"}, {"B", "D"}, {"C"});
      const double parts = conditional_mi_pmf(p, {"A"}, {"B"}, {"C"}) + conditional_mi_pmf(p, {"A"}, {"D"}, {"B", "C"});
      CHECK(std::abs(whole - parts) <= 1e-12);
    }
  }

  TEST_CASE("independence defect detects dependence") {
    CHECK(independence_defect(two_bits({0.25, 0.25, 0.25, 0.25}), {"X"}, {"Y"}, {}) < 1e-15);
    CHECK(independence_defect(two_bits({0.5, 0, 0, 0.5}), {"X"}, {"Y"}, {}) > 0.1);
  }

  TEST_CASE("constant inputs make every constant zero") {
    NetworkAlphabet a;
    auto f = constant_inputs(a);
    f.channel = deterministic_channel(a, [](std::size_t x1, std::size_t x2, std::size_t x3) {
      return std::array<std::size_t, 3>{x1, x2 ^ x3, x1 ^ x2};
    });
    const auto k = eval_region1(make_network_pmf(f));
    for (double v : {k.a1, k.a2, k.b, k.c1, k.c2, k.d1, k.d2, k.e1, k.e2}) CHECK(v == 0.0);
  }

  TEST_CASE("clean two-user adder MAC") {
    // U1 = U2 = X3 = 0; X1, X2 uniform bits; Y3 = Y4 = X1 + X2.
    NetworkAlphabet a;
    a.y3 = 3;
    a.y4 = 3;
    auto f = constant_inputs(a);
    f.p_x2_u1x3 = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
    f.p_x1_u1u2x3 = std::vector<double>(16, 0.5);
    f.channel = deterministic_channel(a, [](std::size_t x1, std::size_t x2, std::size_t) {
      return std::array<std::size_t, 3>{0, x1 + x2, x1 + x2};
    });
    const auto p = make_network_pmf(f);
    const auto k = eval_region1(p);
    CHECK(k.a1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.a2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.b == 0.0);
    CHECK(k.c1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.c2 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(k.d1 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(k.d2 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(k.e1 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(k.e2 == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(std::abs(k.d2 - oracle::brute_force_mi(p, {"Y4"}, {"X1", "X2"}, {"U1", "U2", "X3"})) <= 1e-12);
  }

  TEST_CASE("an output that depends on U1 directly is reported") {
    std::mt19937_64 rng(13);
    const auto good = make_network_pmf(random_network_factors(rng));
    // Y4 is the last variable and U1 the fourth: flip Y4 whenever U1 = 0.
    std::vector<double> t(good.table().begin(), good.table().end());
    std::size_t u1_stride = 1;
    for (std::size_t k = 4; k < good.alphabet().size(); ++k) u1_stride *= good.alphabet()[k];
    for (std::size_t flat = 0; flat < t.size(); flat += 2) {
      if ((flat / u1_stride) % 2 == 0) std::swap(t[flat], t[flat + 1]);
    }
    const JointPmf bad(good.names(), good.alphabet(), t);
    CHECK_NOTHROW(eval_region1(good));
    try {
      eval_region1(bad);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("p(y2,y3,y4|x1,x2,x3)") != std::string::npos);
    }
  }

  TEST_CASE("random factored laws satisfy the chain-rule orderings") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 30; ++trial) {
      const auto k = eval_region1(make_network_pmf(random_network_factors(rng)));
      const double c = std::min(k.c1, k.c2), d = std::min(k.d1, k.d2), e = std::min(k.e1, k.e2);
      CHECK(k.c1 <= k.d1 + 1e-12);
      CHECK(k.c2 <= k.d2 + 1e-12);
      CHECK(c <= d + 1e-12);
      CHECK(d <= e + 1e-12);
      CHECK(std::min(k.a1, k.a2) <= d + 1e-12);
    }
  }

  TEST_CASE("eval_region2 examples") {
    const BoundSet ones{1, 1, 1, 1, 1, 1, 1, 1, 1};
    const auto r = eval_region2(ones);
    CHECK(r.frontier() == std::vector<RatePair>{{0, 1}, {1, 0}});
    CHECK(eval_region2(BoundSet{}).frontier() == std::vector<RatePair>{{0, 0}});
    BoundSet no_relay{0.7, 0.4, 0, 1, 1, 2, 2, 3, 3};
    CHECK(eval_region2(no_relay).max_r1() == doctest::Approx(0.4));
  }

  TEST_CASE("symmetric noise channel rows are distributions") {
    NetworkAlphabet a;
    a.y3 = 3;
    const auto ch = symmetric_noise_channel(a, [](std::size_t x1, std::size_t x2, std::size_t x3) {
      return std::array<std::size_t, 3>{x1, x2 + x3, x1 ^ x2};
    }, 0.1);
    const std::size_t per_input = a.y2 * a.y3 * a.y4;
    for (std::size_t in = 0; in < ch.size() / per_input; ++in) {
      double s = 0;
      for (std::size_t k = 0; k < per_input; ++k) s += ch[in * per_input + k];
      CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
}
