#include "pcn/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "pcn/error.hpp"

namespace pcn {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line.remove_prefix(comma + 1);
  }
  return out;
}

std::optional<double> to_double(std::string_view s) {
  double v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::optional<long> to_long(std::string_view s) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::string fmt(const char* f, double x) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), f, x);
  return buf.data();
}

constexpr std::array<std::pair<int, int>, 6> kConfigGains{{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}}};

struct PendingScenario {
  std::string name;
  int line = 0;
  std::map<std::string, std::string, std::less<>> values;
};

ScenarioConfig build_scenario(const PendingScenario& p, std::vector<std::string>& issues) {
  const auto where = "[" + p.name + "] (line " + std::to_string(p.line) + "): ";
  auto number = [&](const std::string& key, std::optional<double> fallback) -> double {
    const auto it = p.values.find(key);
    if (it == p.values.end()) {
      if (!fallback) issues.push_back(where + "missing " + key);
      return fallback.value_or(0.0);
    }
    const auto v = to_double(it->second);
    if (!v) {
      issues.push_back(where + key + " is not a number: '" + it->second + "'");
      return 0.0;
    }
    return *v;
  };

  SymmetricGains g;
  g.h12 = number("h12", std::nullopt);
  g.h13 = number("h13", std::nullopt);
  g.h14 = number("h14", std::nullopt);
  g.h23 = number("h23", std::nullopt);
  g.h24 = number("h24", std::nullopt);
  g.h34 = number("h34", std::nullopt);
  const std::array<double, 3> powers{number("P1", 1.0), number("P2", 1.0), number("P3", 1.0)};
  const std::array<double, 3> noises{number("N2", 1.0), number("N3", 1.0), number("N4", 1.0)};

  ScenarioConfig cfg;
  cfg.name = p.name;
  cfg.channel = ChannelConfig::symmetric(g, powers, noises);
  if (const auto it = p.values.find("grid"); it != p.values.end()) {
    const auto n = to_long(it->second);
    if (!n || *n < 2 || *n > 10'000) {
      issues.push_back(where + "grid must be an integer in [2, 10000], got '" + it->second + "'");
    } else {
      cfg.grid = static_cast<int>(*n);
    }
  }
  if (const auto it = p.values.find("regions"); it != p.values.end()) {
    try {
      cfg.regions = region_choice_from_string(it->second);
    } catch (const ValidationError&) {
      issues.push_back(where + "regions must be pdf, ifc or both, got '" + it->second + "'");
    }
  }
  try {
    validate_config(cfg.channel);
  } catch (const ValidationError& e) {
    for (const auto& i : e.issues()) issues.push_back(where + i);
  }
  return cfg;
}

const std::array<std::string_view, 14> kScenarioKeys{"h12", "h13", "h14", "h23", "h24", "h34", "P1",
                                                     "P2",  "P3",  "N2",  "N3",  "N4",  "grid", "regions"};

}  // namespace

std::vector<ScenarioConfig> parse_scenarios(std::string_view text) {
  std::vector<std::string> issues;
  std::vector<PendingScenario> pending;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i + 1);
    auto line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto at = "line " + std::to_string(lineno) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') {
        issues.push_back(at + "unterminated section header");
        continue;
      }
      const auto name = std::string(trim(line.substr(1, line.size() - 2)));
      if (name.empty()) {
        issues.push_back(at + "empty section name");
        continue;
      }
      if (std::any_of(pending.begin(), pending.end(), [&](const auto& p) { return p.name == name; })) {
        issues.push_back(at + "duplicate section [" + name + "]");
      }
      pending.push_back({name, lineno, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      issues.push_back(at + "expected key = value");
      continue;
    }
    if (pending.empty()) {
      issues.push_back(at + "key outside any [section]");
      continue;
    }
    const auto key = std::string(trim(line.substr(0, eq)));
    const auto value = std::string(trim(line.substr(eq + 1)));
    if (std::find(kScenarioKeys.begin(), kScenarioKeys.end(), key) == kScenarioKeys.end()) {
      issues.push_back(at + "unknown key '" + key + "'");
      continue;
    }
    if (!pending.back().values.emplace(key, value).second) issues.push_back(at + "duplicate key '" + key + "'");
  }
  if (pending.empty() && issues.empty()) issues.emplace_back("no [section] found");

  std::vector<ScenarioConfig> out;
  for (const auto& p : pending) out.push_back(build_scenario(p, issues));
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return out;
}

std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path) {
  return parse_scenarios(read_text_file(path));
}

std::string scenario_text(const ScenarioConfig& config) {
  const auto& ch = config.channel;
  std::string out = "[" + config.name + "]\n";
  for (const auto& [tx, rx] : kConfigGains) out += gain_name(tx, rx) + " = " + fmt("%.17g", ch.gain(tx, rx)) + "\n";
  for (int u = 1; u <= 3; ++u) out += "P" + std::to_string(u) + " = " + fmt("%.17g", ch.power(u)) + "\n";
  for (int u = 2; u <= 4; ++u) out += "N" + std::to_string(u) + " = " + fmt("%.17g", ch.noise(u)) + "\n";
  out += "grid = " + std::to_string(config.grid) + "\n";
  out += "regions = " + std::string(to_string(config.regions)) + "\n";
  return out;
}

std::string config_hash(const ScenarioConfig& config) {
  // Every directed link, not only the symmetric six, so custom reverse gains
  // also change the hash.
  std::string canon;
  for (int tx = 1; tx <= 3; ++tx) {
    for (int rx = 2; rx <= 4; ++rx) {
      if (is_link(tx, rx)) canon += gain_name(tx, rx) + "=" + fmt("%a", config.channel.gain(tx, rx)) + ";";
    }
  }
  for (int u = 1; u <= 3; ++u) canon += "P" + std::to_string(u) + "=" + fmt("%a", config.channel.power(u)) + ";";
  for (int u = 2; u <= 4; ++u) canon += "N" + std::to_string(u) + "=" + fmt("%a", config.channel.noise(u)) + ";";
  canon += "grid=" + std::to_string(config.grid) + ";regions=" + std::string(to_string(config.regions));

  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canon) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return buf.data();
}

std::string frontier_csv(const RateRegion& region) {
  if (region.empty()) throw ValidationError({"cannot serialise an empty region"});
  std::string out = "r1,r2\n";
  for (const auto& p : region.frontier()) out += fmt("%.12g", p.r1) + "," + fmt("%.12g", p.r2) + "\n";
  return out;
}

RateRegion parse_frontier_csv(std::string_view text, Provenance provenance) {
  const auto lines = split_lines(text);
  std::vector<std::string> issues;
  std::vector<RatePair> points;
  bool header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto at = "line " + std::to_string(i + 1) + ": ";
    if (!header) {
      if (split_fields(line) != std::vector<std::string_view>{"r1", "r2"}) {
        throw ValidationError({at + "expected header 'r1,r2'"});
      }
      header = true;
      continue;
    }
    const auto f = split_fields(line);
    const auto r1 = f.size() == 2 ? to_double(f[0]) : std::nullopt;
    const auto r2 = f.size() == 2 ? to_double(f[1]) : std::nullopt;
    if (!r1 || !r2) {
      issues.push_back(at + "expected two numbers");
      continue;
    }
    points.push_back({*r1, *r2});
  }
  if (!header) issues.emplace_back("missing header 'r1,r2'");
  if (!issues.empty()) throw ValidationError(std::move(issues));
  if (points.empty()) throw ValidationError({"frontier has no points"});
  return pareto_extract(points, provenance);
}

std::string frontier_json(const RateRegion& region, const std::string& hash) {
  nlohmann::ordered_json j;
  j["provenance"] = std::string(to_string(region.provenance()));
  j["config_hash"] = hash;
  auto& pts = j["frontier"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < region.frontier().size(); ++k) {
    const auto& p = region.frontier()[k];
    nlohmann::ordered_json e{{"r1", p.r1}, {"r2", p.r2}};
    if (const auto& w = region.witnesses()[k]) {
      e["split"] = {{"alpha", w->alpha}, {"beta", w->beta}, {"gamma", w->gamma}, {"delta", w->delta}};
    }
    pts.push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

std::string region_svg(const std::vector<LabeledRegion>& regions) {
  if (regions.empty()) throw ValidationError({"nothing to plot"});
  constexpr double width = 640, height = 480, left = 70, right = 170, top = 20, bottom = 60;
  constexpr double plot_w = width - left - right, plot_h = height - top - bottom;
  constexpr std::array<const char*, 6> colors{"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

  double extent = 0;
  for (const auto& [label, r] : regions) extent = std::max({extent, r.max_r1(), r.max_r2()});
  extent = extent > 0 ? extent * 1.05 : 1.0;
  auto sx = [&](double r) { return left + plot_w * r / extent; };
  auto sy = [&](double r) { return top + plot_h * (1.0 - r / extent); };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << sy(0) << "\" x2=\"" << left + plot_w << "\" y2=\"" << sy(0)
    << "\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << sy(0)
    << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double v = extent * t / 5.0;
    o << "<line x1=\"" << sx(v) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(v) << "\" y2=\"" << sy(0) + 5
      << "\" stroke=\"black\"/>";
    o << "<text x=\"" << sx(v) << "\" y=\"" << sy(0) + 18 << "\" text-anchor=\"middle\">" << fmt("%.3g", v)
      << "</text>\n";
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << sy(v) << "\" x2=\"" << left << "\" y2=\"" << sy(v)
      << "\" stroke=\"black\"/>";
    o << "<text x=\"" << left - 8 << "\" y=\"" << sy(v) + 4 << "\" text-anchor=\"end\">" << fmt("%.3g", v)
      << "</text>\n";
  }
  o << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15
    << "\" text-anchor=\"middle\">R₁ (bits/use)</text>\n";
  o << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << top + plot_h / 2 << ")\">R₂ (bits/use)</text>\n";
  o << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(extent) << "\" y2=\"" << sy(extent)
    << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";

  for (std::size_t k = 0; k < regions.size(); ++k) {
    const auto* color = colors[k % colors.size()];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\"";
    for (const auto& p : regions[k].second.boundary()) o << fmt("%.3f", sx(p.r1)) << "," << fmt("%.3f", sy(p.r2)) << " ";
    o << "\"/>\n";
    const double ly = top + 10 + 20.0 * static_cast<double>(k);
    o << "<line x1=\"" << width - right + 15 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 40 << "\" y2=\""
      << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    o << "<text x=\"" << width - right + 46 << "\" y=\"" << ly + 4 << "\">" << regions[k].first << "</text>\n";
  }
  const double ly = top + 10 + 20.0 * static_cast<double>(regions.size());
  o << "<line x1=\"" << width - right + 15 << "\" y1=\"" << ly << "\" x2=\"" << width - right + 40 << "\" y2=\""
    << ly << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>";
  o << "<text x=\"" << width - right + 46 << "\" y=\"" << ly + 4 << "\">R₁ = R₂</text>\n";
  o << "</svg>\n";
  return o.str();
}

std::string pmf_table(const JointPmf& p) {
  std::string out;
  for (const auto& n : p.names()) out += n + ",";
  out += "p\n";
  const auto& alpha = p.alphabet();
  std::vector<std::size_t> sym(alpha.size(), 0);
  for (const double v : p.table()) {
    if (v != 0.0) {
      for (const auto s : sym) out += std::to_string(s) + ",";
      out += fmt("%.17g", v) + "\n";
    }
    for (std::size_t k = sym.size(); k-- > 0;) {
      if (++sym[k] < alpha[k]) break;
      sym[k] = 0;
    }
  }
  return out;
}

JointPmf parse_pmf_table(std::string_view text, PmfLimits limits) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw ValidationError({"empty PMF table"});
  const auto header = split_fields(trim(lines[i]));
  if (header.size() < 2 || header.back() != "p") throw ValidationError({"header must list variables then 'p'"});
  std::vector<std::string> names(header.begin(), header.end() - 1);
  const auto nv = names.size();

  std::vector<std::string> issues;
  std::vector<std::pair<std::vector<std::size_t>, double>> rows;
  std::vector<std::size_t> alphabet(nv, 1);
  for (++i; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto at = "line " + std::to_string(i + 1) + ": ";
    const auto f = split_fields(line);
    if (f.size() != nv + 1) {
      issues.push_back(at + "expected " + std::to_string(nv + 1) + " fields");
      continue;
    }
    std::vector<std::size_t> sym(nv);
    bool ok = true;
    for (std::size_t k = 0; k < nv; ++k) {
      const auto s = to_long(f[k]);
      if (!s || *s < 0 || static_cast<std::size_t>(*s) >= limits.max_alphabet) {
        issues.push_back(at + "symbol '" + std::string(f[k]) + "' of " + names[k] + " out of range");
        ok = false;
        break;
      }
      sym[k] = static_cast<std::size_t>(*s);
      alphabet[k] = std::max(alphabet[k], sym[k] + 1);
    }
    const auto v = to_double(f[nv]);
    if (!v) {
      issues.push_back(at + "probability is not a number");
      ok = false;
    }
    if (ok) rows.emplace_back(std::move(sym), *v);
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::size_t entries = 1;
  for (const auto a : alphabet) {
    entries *= a;
    if (entries > limits.max_entries) throw ValidationError({"PMF table exceeds the entry limit"});
  }
  std::vector<double> table(entries, 0.0);
  std::vector<bool> seen(entries, false);
  for (const auto& [sym, v] : rows) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < nv; ++k) idx = idx * alphabet[k] + sym[k];
    if (seen[idx]) issues.push_back("duplicate row for one outcome");
    seen[idx] = true;
    table[idx] = v;
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return JointPmf(std::move(names), std::move(alphabet), std::move(table), limits);
}

std::string system_table(const LinearSystem& sys) {
  std::string out;
  for (const auto& v : sys.variables()) out += v + ",";
  out += "rhs\n";
  for (const auto& row : sys.rows()) {
    for (const auto& c : row.coeffs) out += to_string(c) + ",";
    out += to_string(row.rhs) + "\n";
  }
  return out;
}

LinearSystem parse_system_table(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && trim(lines[i]).empty()) ++i;
  if (i == lines.size()) throw ValidationError({"empty system table"});
  const auto header = split_fields(trim(lines[i]));
  if (header.empty() || header.back() != "rhs") throw ValidationError({"header must list variables then 'rhs'"});
  std::vector<std::string> vars(header.begin(), header.end() - 1);
  LinearSystem sys(vars);
  std::vector<std::string> issues;
  for (++i; i < lines.size(); ++i) {
    const auto line = trim(lines[i]);
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != vars.size() + 1) {
      issues.push_back("line " + std::to_string(i + 1) + ": wrong number of fields");
      continue;
    }
    try {
      std::vector<Term> terms;
      for (std::size_t k = 0; k < vars.size(); ++k) terms.push_back({vars[k], parse_rational(f[k])});
      sys.add_le(terms, parse_rational(f.back()));
    } catch (const ValidationError& e) {
      issues.push_back("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return sys;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path.string());
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw IoError("error while writing " + path.string());
}

}  // namespace pcn
