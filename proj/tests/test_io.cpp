#include <doctest.h>

#include <filesystem>
#include <nlohmann/json.hpp>
#include <random>

#include "oracles.hpp"
#include "pcn/error.hpp"
#include "pcn/ifc.hpp"
#include "pcn/io.hpp"

using namespace pcn;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

const char* kTwoScenarios = R"(# two scenarios
[first]
h12 = 1
h13 = 10
h14 = 1
h23 = 10
h24 = 10
h34 = 1

[second]
h12=10
h13=10
h14=10
h23=1
h24=10
h34=10
P2 = 2.5
N3 = 0.5
grid = 9
regions = pdf
)";

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("pcn_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("two-point frontier as CSV") {
    const auto r = RateRegion::from_frontier({{0, 1}, {1, 0}}, Provenance::custom);
    CHECK(frontier_csv(r) == "r1,r2\n0,1\n1,0\n");
  }

  TEST_CASE("empty regions are not serialised") { CHECK_THROWS_AS(frontier_csv(RateRegion{}), ValidationError); }

  TEST_CASE("CSV round trip is exact at 12 significant digits") {
    std::mt19937_64 rng(91);
    std::uniform_real_distribution<double> u(0, 5);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<RatePair> pts(40);
      for (auto& p : pts) p = {u(rng), u(rng)};
      const auto r = pareto_extract(pts);
      const auto text = frontier_csv(r);
      const auto back = parse_frontier_csv(text);
      CHECK(frontier_csv(back) == text);
      REQUIRE(back.frontier().size() == r.frontier().size());
      for (std::size_t k = 0; k < r.frontier().size(); ++k) {
        CHECK(back.frontier()[k].r1 == doctest::Approx(r.frontier()[k].r1).epsilon(1e-11));
      }
    }
  }

  TEST_CASE("malformed CSV is a validation error") {
    CHECK_THROWS_AS(parse_frontier_csv("x,y\n1,2\n"), ValidationError);
    CHECK_THROWS_AS(parse_frontier_csv("r1,r2\n1\n"), ValidationError);
    CHECK_THROWS_AS(parse_frontier_csv("r1,r2\n"), ValidationError);
    CHECK_THROWS_AS(parse_frontier_csv("r1,r2\n1,-2\n"), ValidationError);
  }

  TEST_CASE("JSON carries provenance, hash and witnesses") {
    const auto r = ifc_frontier({1, 1, 1.5});
    const auto j = nlohmann::json::parse(frontier_json(r, "0123456789abcdef"));
    CHECK(j["provenance"] == "ifc");
    CHECK(j["config_hash"] == "0123456789abcdef");
    REQUIRE(j["frontier"].size() == 2);
    CHECK(j["frontier"][1]["r1"] == 1.0);
    CHECK_FALSE(j["frontier"][0].contains("split"));
  }

  TEST_CASE("SVG of the trivial region") {
    const auto svg = region_svg({{"origin", RateRegion::from_frontier({{0, 0}}, Provenance::custom)}});
    CHECK(svg.starts_with("<svg"));
    CHECK(svg.ends_with("</svg>\n"));
    CHECK(count(svg, "<polyline") == 1);
    CHECK(svg.find("R₁ (bits/use)") != std::string::npos);
    CHECK(svg.find("R₂ (bits/use)") != std::string::npos);
    CHECK(svg.find("R₁ = R₂") != std::string::npos);
  }

  TEST_CASE("SVG of two identical regions") {
    const auto r = RateRegion::from_frontier({{0.5, 1}, {1, 0.5}}, Provenance::custom);
    const auto svg = region_svg({{"first", r}, {"second", r}});
    CHECK(count(svg, "<polyline") == 2);
    CHECK(svg.find(">first<") != std::string::npos);
    CHECK(svg.find(">second<") != std::string::npos);
    const auto p1 = svg.find("points=\"");
    const auto p2 = svg.find("points=\"", p1 + 1);
    const auto pts = [&](std::size_t at) { return svg.substr(at, svg.find('"', at + 8) - at); };
    CHECK(pts(p1) == pts(p2));
    CHECK_THROWS_AS(region_svg({}), ValidationError);
  }

  TEST_CASE("scenario files") {
    const auto cfgs = parse_scenarios(kTwoScenarios);
    REQUIRE(cfgs.size() == 2);
    CHECK(cfgs[0].name == "first");
    CHECK(cfgs[0].channel.gain(1, 3) == 10);
    CHECK(cfgs[0].channel.power(1) == 1);
    CHECK(cfgs[0].grid == 33);
    CHECK(cfgs[0].regions == RegionChoice::both);
    CHECK(cfgs[1].channel.power(2) == 2.5);
    CHECK(cfgs[1].channel.noise(3) == 0.5);
    CHECK(cfgs[1].grid == 9);
    CHECK(cfgs[1].regions == RegionChoice::pdf);
  }

  TEST_CASE("scenario text round trips") {
    for (const auto& c : parse_scenarios(kTwoScenarios)) {
      const auto back = parse_scenarios(scenario_text(c));
      REQUIRE(back.size() == 1);
      CHECK(back[0].channel == c.channel);
      CHECK(config_hash(back[0]) == config_hash(c));
    }
  }

  TEST_CASE("bad scenario files are reported by line") {
    auto reject = [](const std::string& text, const std::string& fragment) {
      try {
        parse_scenarios(text);
        FAIL("expected a validation error for: " << text);
      } catch (const ValidationError& e) {
        CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
      }
    };
    reject("h12 = 1\n", "outside any [section]");
    reject("[x]\nh12 = 1\n", "missing h13");
    reject("[x]\nh12 = 1\nh13 = 1\nh14 = 1\nh23 = 1\nh24 = 1\nh34 = 1\nh99 = 2\n", "unknown key 'h99'");
    reject("[x]\nh12 = one\n", "h12 is not a number");
    reject("[x]\nh12=1\nh13=1\nh14=1\nh23=1\nh24=1\nh34=1\ngrid = 1\n", "grid must be");
    reject("[x]\nh12=1\nh13=1\nh14=-1\nh23=1\nh24=1\nh34=1\n", "h14");
    reject("[x]\nh12=1\nh13=1\nh14=1\nh23=1\nh24=1\nh34=1\nregions = all\n", "regions must be");
    reject("", "no [section]");
    reject("[x\n", "unterminated");
  }

  TEST_CASE("config hash tracks semantic fields only") {
    const auto base = parse_scenarios(kTwoScenarios)[0];
    const auto spaced = parse_scenarios("[first]\n  h12=1.0\nh13   =  10\nh14 = 1e0\n\nh23=10\nh24=10\nh34=1\n")[0];
    CHECK(config_hash(spaced) == config_hash(base));
    auto renamed = base;
    renamed.name = "other";
    renamed.out_dir = "/tmp";
    CHECK(config_hash(renamed) == config_hash(base));
    auto g = base;
    g.grid = 17;
    CHECK(config_hash(g) != config_hash(base));
    auto r = base;
    r.regions = RegionChoice::ifc;
    CHECK(config_hash(r) != config_hash(base));
    auto h = base;
    h.channel = h.channel.with_gain(3, 4, 1.0000000001);
    CHECK(config_hash(h) != config_hash(base));
    auto n = base;
    n.channel = n.channel.with_noise(2, 2);
    CHECK(config_hash(n) != config_hash(base));
    CHECK(config_hash(base).size() == 16);
  }

  TEST_CASE("PMF tables round trip") {
    std::mt19937_64 rng(93);
    const auto p = oracle::random_pmf(rng, {"X", "Y", "Z"}, {2, 3, 2}, 0.3);
    const auto back = parse_pmf_table(pmf_table(p));
    CHECK(back.names() == p.names());
    CHECK(back.alphabet() == p.alphabet());
    for (std::size_t i = 0; i < p.table().size(); ++i) CHECK(back.table()[i] == p.table()[i]);
    CHECK_THROWS_AS(parse_pmf_table("X,q\n0,1\n"), ValidationError);
    CHECK_THROWS_AS(parse_pmf_table("X,p\n0,0.5\n0,0.5\n"), ValidationError);
    CHECK_THROWS_AS(parse_pmf_table("X,p\n0,0.5\n"), ValidationError);
  }

  TEST_CASE("linear system tables round trip") {
    LinearSystem s({"R1", "R2"});
    s.add_le({{"R1", Rational(1)}, {"R2", Rational(1)}}, Rational(7, 3));
    s.add_ge({{"R2", Rational(1)}}, Rational(0));
    const auto text = system_table(s);
    CHECK(text == "R1,R2,rhs\n1,1,7/3\n0,-1,0\n");
    const auto back = parse_system_table(text);
    CHECK(back.variables() == s.variables());
    CHECK(back.rows() == s.rows());
    CHECK_THROWS_AS(parse_system_table("R1,rhs\n1/0,1\n"), ValidationError);
  }

  TEST_CASE("files") {
    const auto dir = scratch_dir("files");
    const auto path = dir / "nested" / "out.txt";
    write_text_file(path, "hello\n");
    CHECK(read_text_file(path) == "hello\n");
    CHECK_THROWS_AS(read_text_file(dir / "missing.txt"), IoError);
    CHECK_THROWS_AS(write_text_file("/proc/pcn/out.txt", "x"), IoError);
    try {
      write_text_file(dir, "x");
      FAIL("writing onto a directory must fail");
    } catch (const IoError& e) {
      CHECK(e.kind() == ErrorKind::io);
    }
    std::filesystem::remove_all(dir);
  }
}
