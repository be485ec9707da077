#pragma once

// Text formats: scenario configs, frontier CSV/JSON, SVG plots, PMF and
// linear-system tables.

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pcn/discrete_info.hpp"
#include "pcn/polyhedra.hpp"
#include "pcn/rate_region.hpp"
#include "pcn/scenario.hpp"

namespace pcn {

/// Parses sectioned key = value text:
///
///   [name]
///   h12 = 10
///   ...
///
/// Keys: h12 h13 h14 h23 h24 h34 (required), P1 P2 P3 N2 N3 N4 (default 1),
/// grid (default 33), regions (pdf|ifc|both, default both). '#' starts a
/// comment. Throws ValidationError with line numbers on bad input.
std::vector<ScenarioConfig> parse_scenarios(std::string_view text);
std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path);

/// The config rendered back in the same format.
std::string scenario_text(const ScenarioConfig& config);

/// 16 hex digits; depends only on gains, powers, noises, grid and regions.
std::string config_hash(const ScenarioConfig& config);

/// Header "r1,r2" and one row per frontier point, 12 significant digits.
/// ValidationError for an empty region.
std::string frontier_csv(const RateRegion& region);
RateRegion parse_frontier_csv(std::string_view text, Provenance provenance = Provenance::custom);

std::string frontier_json(const RateRegion& region, const std::string& config_hash);

using LabeledRegion = std::pair<std::string, RateRegion>;

/// One polyline per region plus the R1 = R2 ray and a legend.
/// ValidationError when `regions` is empty.
std::string region_svg(const std::vector<LabeledRegion>& regions);

/// CSV with one column per variable and a final "p" column.
std::string pmf_table(const JointPmf& p);
/// Alphabet sizes are one past the largest symbol seen; absent rows are 0.
JointPmf parse_pmf_table(std::string_view text, PmfLimits limits = {});

/// CSV with one column per variable then "rhs"; each row reads Σ coeff·var ≤ rhs.
std::string system_table(const LinearSystem& sys);
LinearSystem parse_system_table(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
/// Throws IoError when the destination cannot be written.
void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace pcn
