#include "pcn/scenario.hpp"

#include <chrono>

#include "pcn/error.hpp"
#include "pcn/ifc.hpp"
#include "pcn/io.hpp"
#include "pcn/verify.hpp"

namespace pcn {

std::string_view to_string(RegionChoice r) {
  switch (r) {
    case RegionChoice::pdf: return "pdf";
    case RegionChoice::ifc: return "ifc";
    case RegionChoice::both: return "both";
  }
  return "both";
}

RegionChoice region_choice_from_string(std::string_view s) {
  if (s == "pdf") return RegionChoice::pdf;
  if (s == "ifc") return RegionChoice::ifc;
  if (s == "both") return RegionChoice::both;
  throw ValidationError({"unknown region choice '" + std::string(s) + "'"});
}

std::string_view to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

OutputFormat output_format_from_string(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ValidationError({"unknown output format '" + std::string(s) + "'"});
}

void ScenarioConfig::validate() const {
  std::vector<std::string> issues;
  if (name.empty()) issues.emplace_back("scenario name must be nonempty");
  if (grid < 2) issues.emplace_back("grid must be >= 2");
  try {
    validate_config(channel);
  } catch (const ValidationError& e) {
    issues.insert(issues.end(), e.issues().begin(), e.issues().end());
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

const std::vector<ScenarioConfig>& presets() {
  static const std::vector<ScenarioConfig> all = [] {
    struct Row {
      const char* name;
      SymmetricGains g;
    };
    const Row rows[] = {
        {"a", {1, 10, 1, 10, 10, 1}},    {"b", {10, 10, 1, 10, 10, 10}}, {"c", {10, 10, 10, 1, 10, 10}},
        {"d", {1, 10, 10, 10, 10, 1}},   {"e", {10, 10, 10, 10, 10, 10}},
    };
    std::vector<ScenarioConfig> out;
    for (const auto& r : rows) {
      ScenarioConfig c;
      c.name = r.name;
      c.channel = ChannelConfig::symmetric(r.g, {1, 1, 1}, {1, 1, 1});
      out.push_back(std::move(c));
    }
    return out;
  }();
  return all;
}

std::optional<ScenarioConfig> find_preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) return p;
  }
  return std::nullopt;
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string emit(const RateRegion& r, OutputFormat f, const std::string& hash) {
  return f == OutputFormat::csv ? frontier_csv(r) : frontier_json(r, hash);
}

}  // namespace

RunReport run_scenario(const ScenarioConfig& config) {
  config.validate();
  const auto t0 = Clock::now();
  RunReport rep;
  rep.scenario = config.name;
  rep.config_hash = config_hash(config);

  const bool want_pdf = config.regions != RegionChoice::ifc;
  const bool want_ifc = config.regions != RegionChoice::pdf;

  if (want_pdf) {
    const auto ts = Clock::now();
    auto region = sweep_region(config.channel, config.grid_spec());
    rep.sweep_seconds = seconds_since(ts);
    const double eq = equal_rate_point(region);
    rep.pdf = RegionResult{std::move(region), eq};

    const auto to = Clock::now();
    constexpr double lattice[] = {0.2, 0.4, 0.6, 0.8};
    for (const double a : lattice) {
      for (const double b : lattice) {
        for (const double g : lattice) {
          for (const double d : lattice) {
            for (const auto& t : compare_with_oracle(config.channel, {a, b, g, d})) {
              rep.oracle_max_rel_deviation =
                  std::max(rep.oracle_max_rel_deviation, relative_error(t.closed_form, t.oracle));
            }
            ++rep.oracle_samples;
          }
        }
      }
    }
    rep.oracle_seconds = seconds_since(to);
  }

  if (want_ifc) {
    try {
      auto region = ifc_frontier(ifc_region(config.channel));
      const double eq = equal_rate_point(region);
      rep.ifc = RegionResult{std::move(region), eq};
    } catch (const StrongInterferenceError& e) {
      rep.ifc_error = e.what();
    }
  }

  if (config.out_dir) {
    const auto ext = config.format == OutputFormat::csv ? ".csv" : ".json";
    if (rep.pdf) {
      const auto path = *config.out_dir / (config.name + "_pdf" + ext);
      write_text_file(path, emit(rep.pdf->region, config.format, rep.config_hash));
      rep.artifacts.push_back(path);
    }
    if (rep.ifc) {
      const auto path = *config.out_dir / (config.name + "_ifc" + ext);
      write_text_file(path, emit(rep.ifc->region, config.format, rep.config_hash));
      rep.artifacts.push_back(path);
    }
  }
  if (config.plot) {
    std::vector<LabeledRegion> regions;
    if (rep.pdf) regions.emplace_back("PDF", rep.pdf->region);
    if (rep.ifc) regions.emplace_back("IFC", rep.ifc->region);
    if (!regions.empty()) {
      write_text_file(*config.plot, region_svg(regions));
      rep.artifacts.push_back(*config.plot);
    }
  }
  rep.total_seconds = seconds_since(t0);
  return rep;
}

}  // namespace pcn
