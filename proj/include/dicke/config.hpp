// Copyright 2026 The dicke-probe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef DICKE_CONFIG_HPP
#define DICKE_CONFIG_HPP

// Flat `section.key = value` run configuration. Every diagnostic names the
// key and, where one exists, the line it came from.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "dicke/dynamics.hpp"
#include "dicke/error.hpp"
#include "dicke/lattice.hpp"

namespace dicke {

class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ScenarioType { superfluid, mott_sudden, mixture, adiabatic, custom };

inline const char* to_string(ScenarioType t) {
  switch (t) {
    case ScenarioType::superfluid: return "superfluid";
    case ScenarioType::mott_sudden: return "mott_sudden";
    case ScenarioType::mixture: return "mixture";
    case ScenarioType::adiabatic: return "adiabatic";
    case ScenarioType::custom: return "custom";
  }
  return "?";
}

enum class OutputFormat { csv, json };

struct RunConfig {
  int Lx = 1;
  int Ly = 1;
  double spacing = 1.0;

  double J = 0.0;
  double U = 0.0;
  double cb_interaction = 1.0;

  ScenarioType scenario = ScenarioType::superfluid;
  int N1 = 0;
  int N2 = 0;

  MomentumIndex kappa_in;
  std::vector<double> dt_list;
  bool map_kappa_out = false;

  // Adiabatic only. Endpoints default to (0.02 U, U) -> (J, 0).
  RampSchedule ramp;

  std::string output_path = "-";
  OutputFormat format = OutputFormat::csv;

  std::vector<double> sweep_ramp_durations;

  LatticeSpec lattice() const { return LatticeSpec(Lx, Ly, spacing); }
};

namespace detail {

struct ConfigEntry {
  std::string value;
  int line = 0;
};

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

[[noreturn]] inline void config_fail(const std::string& key, int line, const std::string& what) {
  std::ostringstream os;
  if (line > 0) os << "line " << line << ": ";
  os << key << ": " << what;
  throw ConfigError(os.str());
}

class ConfigReader {
 public:
  explicit ConfigReader(std::map<std::string, ConfigEntry> entries) : entries_(std::move(entries)) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  int line(const std::string& key) const { return has(key) ? entries_.at(key).line : 0; }

  bool has_section(const std::string& section) const {
    const auto it = entries_.lower_bound(section + ".");
    return it != entries_.end() && it->first.rfind(section + ".", 0) == 0;
  }

  void require_section(const std::string& section) const {
    if (!has_section(section)) throw ConfigError("missing section: " + section);
  }

  const ConfigEntry& require(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
      const auto section = key.substr(0, key.find('.'));
      const auto first = entries_.lower_bound(section + ".");
      std::string where;
      if (first != entries_.end() && first->first.rfind(section + ".", 0) == 0) {
        int line = first->second.line;
        for (auto i = first; i != entries_.end() && i->first.rfind(section + ".", 0) == 0; ++i) {
          line = std::min(line, i->second.line);
        }
        where = " (section '" + section + "' first appears at line " + std::to_string(line) + ")";
      }
      throw ConfigError("missing required key: " + key + where);
    }
    return it->second;
  }

  double real(const std::string& key) const { return parse_real(key, require(key)); }
  double real(const std::string& key, double fallback) const {
    return has(key) ? real(key) : fallback;
  }
  int integer(const std::string& key) const { return parse_int(key, require(key)); }
  int integer(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

  bool flag(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const auto& e = entries_.at(key);
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    config_fail(key, e.line, "expected true or false, got '" + e.value + "'");
  }

  std::string text(const std::string& key, const std::string& fallback) const {
    return has(key) ? entries_.at(key).value : fallback;
  }

  std::vector<std::string> list(const std::string& key) const {
    const auto& e = require(key);
    const auto& v = e.value;
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') {
      config_fail(key, e.line, "expected a list like [a, b], got '" + v + "'");
    }
    std::vector<std::string> items;
    const std::string body = trim(std::string_view(v).substr(1, v.size() - 2));
    if (body.empty()) return items;
    std::size_t start = 0;
    while (true) {
      const auto comma = body.find(',', start);
      items.push_back(trim(std::string_view(body).substr(start, comma - start)));
      if (items.back().empty()) config_fail(key, e.line, "empty list element");
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return items;
  }

  std::vector<double> reals(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : list(key)) out.push_back(parse_real(key, {item, line(key)}));
    return out;
  }

  std::vector<int> integers(const std::string& key) const {
    std::vector<int> out;
    for (const auto& item : list(key)) out.push_back(parse_int(key, {item, line(key)}));
    return out;
  }

 private:
  static double parse_real(const std::string& key, const ConfigEntry& e) {
    double x = 0.0;
    const char* end = e.value.data() + e.value.size();
    const auto [ptr, ec] = std::from_chars(e.value.data(), end, x);
    if (ec != std::errc() || ptr != end || !std::isfinite(x)) {
      config_fail(key, e.line, "expected a finite number, got '" + e.value + "'");
    }
    return x;
  }

  static int parse_int(const std::string& key, const ConfigEntry& e) {
    int x = 0;
    const char* end = e.value.data() + e.value.size();
    const auto [ptr, ec] = std::from_chars(e.value.data(), end, x);
    if (ec != std::errc() || ptr != end) {
      config_fail(key, e.line, "expected an integer, got '" + e.value + "'");
    }
    return x;
  }

  std::map<std::string, ConfigEntry> entries_;
};

inline const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "lattice.Lx",     "lattice.Ly",     "lattice.spacing", "model.J",
      "model.U",        "model.cb_interaction",              "scenario.type",
      "scenario.N1",    "scenario.N2",    "probe.kappa_in",  "probe.dt_list",
      "probe.map_kappa_out",              "ramp.duration",   "ramp.steps",
      "ramp.profile",   "ramp.J_start",   "ramp.U_start",    "ramp.J_end",
      "ramp.U_end",     "output.path",    "output.format",   "sweep.ramp_durations"};
  return keys;
}

inline std::map<std::string, ConfigEntry> tokenize_config(std::string_view text) {
  std::map<std::string, ConfigEntry> entries;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = eq == std::string::npos ? line : trim(std::string_view(line).substr(0, eq));
    if (eq == std::string::npos) config_fail(key, line_no, "expected 'section.key = value'");
    const auto dot = key.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 1 == key.size()) {
      config_fail(key.empty() ? std::string("<empty key>") : key, line_no,
                  "keys must look like section.key");
    }
    if (!known_keys().count(key)) config_fail(key, line_no, "unknown key");
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (value.empty()) config_fail(key, line_no, "missing value");
    if (const auto it = entries.find(key); it != entries.end()) {
      config_fail(key, line_no, "duplicate key (first set at line " + std::to_string(it->second.line) + ")");
    }
    entries.emplace(key, ConfigEntry{value, line_no});
  }
  return entries;
}

inline void check_mode(const ConfigReader& r, const std::string& key, const LatticeSpec& spec,
                       MomentumIndex k) {
  auto range = [](int L) {
    return std::pair{-((L - 1) / 2), L / 2};
  };
  const auto [x0, x1] = range(spec.Lx());
  const auto [y0, y1] = range(spec.Ly());
  if (k.nx < x0 || k.nx > x1 || k.ny < y0 || k.ny > y1) {
    std::ostringstream os;
    os << "mode (" << k.nx << ", " << k.ny << ") outside the grid: nx in [" << x0 << ", " << x1
       << "], ny in [" << y0 << ", " << y1 << "] for a " << spec.Lx() << "x" << spec.Ly() << " lattice";
    config_fail(key, r.line(key), os.str());
  }
}

}  // namespace detail

inline RunConfig parse_config(std::string_view text) {
  using detail::config_fail;
  const detail::ConfigReader r(detail::tokenize_config(text));
  RunConfig c;
  r.require_section("lattice");
  c.Lx = r.integer("lattice.Lx");
  c.Ly = r.integer("lattice.Ly", 1);
  c.spacing = r.real("lattice.spacing", 1.0);
  if (c.Lx < 1) config_fail("lattice.Lx", r.line("lattice.Lx"), "must be >= 1");
  if (c.Ly < 1) config_fail("lattice.Ly", r.line("lattice.Ly"), "must be >= 1");
  if (!(c.spacing > 0.0)) config_fail("lattice.spacing", r.line("lattice.spacing"), "must be > 0");
  const LatticeSpec spec = c.lattice();

  r.require_section("model");
  c.J = r.real("model.J");
  c.U = r.real("model.U", 0.0);
  c.cb_interaction = r.real("model.cb_interaction", 1.0);
  if (c.J < 0.0) config_fail("model.J", r.line("model.J"), "must be >= 0");
  if (c.U < 0.0) config_fail("model.U", r.line("model.U"), "must be >= 0");
  if (c.cb_interaction < 0.0) {
    config_fail("model.cb_interaction", r.line("model.cb_interaction"), "must be >= 0");
  }

  r.require_section("scenario");
  const auto& type = r.require("scenario.type");
  static const std::map<std::string, ScenarioType> types{
      {"superfluid", ScenarioType::superfluid}, {"mott_sudden", ScenarioType::mott_sudden},
      {"mixture", ScenarioType::mixture},       {"adiabatic", ScenarioType::adiabatic},
      {"custom", ScenarioType::custom}};
  if (!types.count(type.value)) {
    config_fail("scenario.type", type.line,
                "expected superfluid|mott_sudden|mixture|adiabatic|custom, got '" + type.value + "'");
  }
  c.scenario = types.at(type.value);

  if (c.scenario == ScenarioType::mixture) {
    c.N1 = r.integer("scenario.N1");
    c.N2 = r.integer("scenario.N2");
    if (c.N1 < 0) config_fail("scenario.N1", r.line("scenario.N1"), "must be >= 0");
    if (c.N2 < 0) config_fail("scenario.N2", r.line("scenario.N2"), "must be >= 0");
    if (c.N1 + c.N2 < 1) config_fail("scenario.N1", r.line("scenario.N1"), "N1 + N2 must be >= 1");
    if (static_cast<std::size_t>(c.N2) >= spec.num_sites()) {
      config_fail("scenario.N2", r.line("scenario.N2"),
                  "must be < " + std::to_string(spec.num_sites()) + " (one atom per nonzero mode)");
    }
  }

  r.require_section("probe");
  const auto kin = r.integers("probe.kappa_in");
  if (kin.size() != 2) {
    config_fail("probe.kappa_in", r.line("probe.kappa_in"), "expected an integer pair [nx, ny]");
  }
  c.kappa_in = {kin[0], kin[1]};
  detail::check_mode(r, "probe.kappa_in", spec, c.kappa_in);
  c.map_kappa_out = r.flag("probe.map_kappa_out", false);

  if (c.scenario == ScenarioType::adiabatic) {
    r.require_section("ramp");
    c.ramp.duration = r.real("ramp.duration");
    c.ramp.steps = r.integer("ramp.steps");
    const auto profile = r.text("ramp.profile", "smoothstep");
    if (profile == "linear") {
      c.ramp.profile = RampProfile::linear;
    } else if (profile == "smoothstep") {
      c.ramp.profile = RampProfile::smoothstep;
    } else {
      config_fail("ramp.profile", r.line("ramp.profile"), "expected linear or smoothstep, got '" + profile + "'");
    }
    c.ramp.U_start = r.real("ramp.U_start", c.U);
    c.ramp.J_start = r.real("ramp.J_start", 0.02 * c.ramp.U_start);
    c.ramp.J_end = r.real("ramp.J_end", c.J);
    c.ramp.U_end = r.real("ramp.U_end", 0.0);
    if (c.ramp.duration < 0.0) config_fail("ramp.duration", r.line("ramp.duration"), "must be >= 0");
    if (c.ramp.steps < 1) config_fail("ramp.steps", r.line("ramp.steps"), "must be >= 1");
    for (const char* k : {"ramp.J_start", "ramp.U_start", "ramp.J_end", "ramp.U_end"}) {
      if (r.has(k) && r.real(k) < 0.0) config_fail(k, r.line(k), "must be >= 0");
    }
    if (r.has("sweep.ramp_durations")) {
      c.sweep_ramp_durations = r.reals("sweep.ramp_durations");
      for (double d : c.sweep_ramp_durations) {
        if (d < 0.0) config_fail("sweep.ramp_durations", r.line("sweep.ramp_durations"), "durations must be >= 0");
      }
    }
  } else {
    c.dt_list = r.reals("probe.dt_list");
    if (c.dt_list.empty()) config_fail("probe.dt_list", r.line("probe.dt_list"), "must not be empty");
    for (double dt : c.dt_list) {
      if (dt < 0.0) config_fail("probe.dt_list", r.line("probe.dt_list"), "times must be >= 0");
    }
  }

  c.output_path = r.text("output.path", "-");
  const auto format = r.text("output.format", "csv");
  if (format == "csv") {
    c.format = OutputFormat::csv;
  } else if (format == "json") {
    c.format = OutputFormat::json;
  } else {
    config_fail("output.format", r.line("output.format"), "expected csv or json, got '" + format + "'");
  }
  return c;
}

}  // namespace dicke

#endif  // DICKE_CONFIG_HPP
