// pcn: rate regions of the two-pair collaborative network.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "pcn/error.hpp"
#include "pcn/io.hpp"
#include "pcn/scenario.hpp"
#include "pcn/verify.hpp"

namespace {

struct Options {
  std::string scenario;
  std::optional<int> grid;
  std::string format = "csv";
  std::optional<std::string> plot;
  std::optional<std::string> out;
  std::uint64_t seed = 1;
  std::size_t draws = 1000;
  std::size_t fm_cases = 100;
  std::size_t pmf_cases = 20;
};

std::vector<pcn::ScenarioConfig> resolve_scenarios(const Options& o) {
  std::vector<pcn::ScenarioConfig> out;
  if (auto p = pcn::find_preset(o.scenario)) {
    out.push_back(std::move(*p));
  } else if (std::filesystem::exists(o.scenario)) {
    out = pcn::load_scenarios(o.scenario);
  } else {
    throw pcn::ValidationError({"'" + o.scenario + "' is neither a preset (a..e) nor a readable file"});
  }
  const auto format = pcn::output_format_from_string(o.format);
  for (auto& c : out) {
    if (o.grid) c.grid = *o.grid;
    c.format = format;
    if (o.out) c.out_dir = *o.out;
    if (o.plot) {
      std::filesystem::path p = *o.plot;
      if (out.size() > 1) p.replace_filename(p.stem().string() + "_" + c.name + p.extension().string());
      c.plot = p;
    }
    c.validate();
  }
  return out;
}

void print_summary(std::FILE* f, const pcn::RunReport& r) {
  std::fprintf(f, "scenario %s (config %s)\n", r.scenario.c_str(), r.config_hash.c_str());
  if (r.pdf) {
    std::fprintf(f, "  pdf: %zu frontier points, equal-rate %.9g, sweep %.2f s\n", r.pdf->region.frontier().size(),
                 r.pdf->equal_rate, r.sweep_seconds);
    std::fprintf(f, "  oracle: %zu splits, max relative deviation %.3g\n", r.oracle_samples,
                 r.oracle_max_rel_deviation);
  }
  if (r.ifc) {
    std::fprintf(f, "  ifc: %zu frontier points, equal-rate %.9g\n", r.ifc->region.frontier().size(),
                 r.ifc->equal_rate);
  }
  if (r.ifc_error) std::fprintf(f, "  ifc: not computed: %s\n", r.ifc_error->c_str());
  for (const auto& a : r.artifacts) std::fprintf(f, "  wrote %s\n", a.string().c_str());
}

int run_region(const Options& o) {
  for (const auto& cfg : resolve_scenarios(o)) {
    const auto report = pcn::run_scenario(cfg);
    if (cfg.out_dir) {
      print_summary(stdout, report);
      continue;
    }
    print_summary(stderr, report);
    auto emit = [&](const pcn::RateRegion& region) {
      std::cout << (cfg.format == pcn::OutputFormat::csv ? pcn::frontier_csv(region)
                                                          : pcn::frontier_json(region, report.config_hash));
    };
    if (report.pdf) emit(report.pdf->region);
    if (report.ifc) emit(report.ifc->region);
  }
  return 0;
}

int run_verify(const Options& o) {
  bool ok = true;
  const auto oracle = pcn::oracle_agreement(o.seed, o.draws);
  const bool oracle_ok = oracle.max_rel_error <= 1e-9;
  std::printf("%s oracle agreement: %zu draws, max relative error %.3g (%s)\n", oracle_ok ? "PASS" : "FAIL",
              oracle.draws, oracle.max_rel_error, oracle.worst_term.c_str());
  ok = ok && oracle_ok;

  const auto fm = pcn::fm_equivalence_random(o.seed, o.fm_cases);
  std::printf("%s FM equivalence (random rational bounds): %zu/%zu equal%s%s\n",
              fm.equal == fm.cases ? "PASS" : "FAIL", fm.equal, fm.cases, fm.first_failure.empty() ? "" : "; ",
              fm.first_failure.c_str());
  ok = ok && fm.equal == fm.cases;

  const auto pmf = pcn::fm_equivalence_pmf(o.seed, o.pmf_cases);
  std::printf("%s FM equivalence (PMF-derived bounds): %zu/%zu equal, max snap error %.3g%s%s\n",
              pmf.equal == pmf.cases ? "PASS" : "FAIL", pmf.equal, pmf.cases, pmf.max_snap_error,
              pmf.first_failure.empty() ? "" : "; ", pmf.first_failure.c_str());
  ok = ok && pmf.equal == pmf.cases;
  return ok ? 0 : 2;
}

int run_list(const Options& o) {
  const auto format = pcn::output_format_from_string(o.format);
  if (format == pcn::OutputFormat::json) {
    std::cout << "[\n";
    const auto& all = pcn::presets();
    for (std::size_t k = 0; k < all.size(); ++k) {
      const auto& c = all[k].channel;
      std::printf("  {\"name\": \"%s\", \"h12\": %g, \"h13\": %g, \"h14\": %g, \"h23\": %g, \"h24\": %g, \"h34\": %g}%s\n",
                  all[k].name.c_str(), c.gain(1, 2), c.gain(1, 3), c.gain(1, 4), c.gain(2, 3), c.gain(2, 4),
                  c.gain(3, 4), k + 1 < all.size() ? "," : "");
    }
    std::cout << "]\n";
    return 0;
  }
  for (const auto& p : pcn::presets()) std::cout << pcn::scenario_text(p) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rate regions of the two-pair collaborative network"};
  app.require_subcommand(1);
  Options o;

  auto* region = app.add_subcommand("region", "Compute rate regions for a scenario");
  region->add_option("--scenario", o.scenario, "Preset a..e or a scenario file")->required();
  region->add_option("--grid", o.grid, "Points per split parameter")->check(CLI::Range(2, 10000));
  region->add_option("--format", o.format, "Frontier format")->check(CLI::IsMember({"csv", "json"}));
  region->add_option("--plot", o.plot, "Write an SVG plot here");
  region->add_option("--out", o.out, "Write frontiers into this directory");

  auto* verify = app.add_subcommand("verify", "Run the oracle-agreement and FM-equivalence suites");
  verify->add_option("--seed", o.seed, "Seed for the random draws");
  verify->add_option("--draws", o.draws, "Oracle-agreement draws")->check(CLI::PositiveNumber);
  verify->add_option("--fm-cases", o.fm_cases, "Random rational bound sets")->check(CLI::PositiveNumber);
  verify->add_option("--pmf-cases", o.pmf_cases, "PMF-derived bound sets")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("scenarios", "List the built-in scenarios");
  list->add_option("--format", o.format, "Listing format")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (region->parsed()) return run_region(o);
    if (verify->parsed()) return run_verify(o);
    return run_list(o);
  } catch (const pcn::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
