#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcn/channel.hpp"
#include "pcn/gaussian_region.hpp"
#include "pcn/rate_region.hpp"

namespace pcn {

enum class RegionChoice { pdf, ifc, both };
enum class OutputFormat { csv, json };

std::string_view to_string(RegionChoice r);
RegionChoice region_choice_from_string(std::string_view s);
std::string_view to_string(OutputFormat f);
OutputFormat output_format_from_string(std::string_view s);

struct ScenarioConfig {
  std::string name;
  ChannelConfig channel;
  int grid = 33;  ///< points per split parameter
  RegionChoice regions = RegionChoice::both;
  /// Artifacts are written only when set.
  std::optional<std::filesystem::path> out_dir;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::filesystem::path> plot;

  /// ValidationError for an empty name, grid < 2 or an invalid channel.
  void validate() const;
  GridSpec grid_spec() const { return GridSpec::uniform(grid); }
};

/// The five built-in channel scenarios "a".."e" (unit powers and noises).
const std::vector<ScenarioConfig>& presets();
std::optional<ScenarioConfig> find_preset(std::string_view name);

struct RegionResult {
  RateRegion region;
  double equal_rate = 0;
};

struct RunReport {
  std::string scenario;
  std::string config_hash;
  std::optional<RegionResult> pdf;
  std::optional<RegionResult> ifc;
  std::optional<std::string> ifc_error;
  std::size_t oracle_samples = 0;
  double oracle_max_rel_deviation = 0;
  double sweep_seconds = 0;
  double oracle_seconds = 0;
  double total_seconds = 0;
  std::vector<std::filesystem::path> artifacts;
};

/// Computes the requested regions, checks the closed forms against the
/// Gaussian oracle on a fixed interior lattice of splits, and writes any
/// requested artifacts. An IFC request outside the strong-interference
/// regime is recorded in ifc_error; the PDF region is still produced.
RunReport run_scenario(const ScenarioConfig& config);

}  // namespace pcn
