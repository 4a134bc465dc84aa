// Copyright 2026 The cavif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cavif/run_config.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "cavif/errors.hpp"

namespace cavif {

namespace {

constexpr std::array<std::string_view, 6> kCommandNames = {"kernels", "fdr",      "casimir",
                                                           "noise",   "simulate", "basis-check"};

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::string shortest(double x) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

// Consumes keys of one section, rejecting anything not read.
class SectionReader {
 public:
  SectionReader(const Sections& all, const std::string& name) : name_(name) {
    if (auto it = all.find(name); it != all.end()) values_ = it->second;
  }
  ~SectionReader() noexcept(false) {
    if (!values_.empty() && std::uncaught_exceptions() == 0)
      throw ConfigError("unknown key '" + values_.begin()->first + "' in [" + name_ + "]");
  }

  bool take(const std::string& key, std::string& out) {
    auto it = values_.find(key);
    if (it == values_.end()) return false;
    out = it->second;
    values_.erase(it);
    return true;
  }

  void real(const std::string& key, double& out) {
    std::string s;
    if (!take(key, s)) return;
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(key, s, "a number");
    out = v;
  }

  void optional_real(const std::string& key, std::optional<double>& out) {
    if (values_.count(key) == 0) return;
    double v = 0.0;
    real(key, v);
    out = v;
  }

  template <class Int>
  void integer(const std::string& key, Int& out) {
    std::string s;
    if (!take(key, s)) return;
    Int v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) fail(key, s, "an integer");
    out = v;
  }

  void boolean(const std::string& key, bool& out) {
    std::string s;
    if (!take(key, s)) return;
    if (s == "true" || s == "on") out = true;
    else if (s == "false" || s == "off") out = false;
    else fail(key, s, "true or false");
  }

  template <class F>
  void choice(const std::string& key, F&& parse) {
    std::string s;
    if (!take(key, s)) return;
    try {
      parse(s);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("[" + name_ + "] " + key + ": " + e.what());
    }
  }

 private:
  [[noreturn]] void fail(const std::string& key, const std::string& value, const char* what) {
    throw ConfigError("[" + name_ + "] " + key + " = '" + value + "' is not " + what);
  }

  std::string name_;
  std::map<std::string, std::string> values_;
};

}  // namespace

std::string_view to_string(Command c) { return kCommandNames.at(static_cast<std::size_t>(c)); }

Command parse_command(std::string_view s) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i)
    if (kCommandNames[i] == s) return static_cast<Command>(i);
  throw std::invalid_argument("unknown command '" + std::string(s) + "'");
}

std::string format_double(double x) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", x);
  return buf.data();
}

void RunConfig::validate() const {
  try {
    physical.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("[physical] ") + e.what());
  }
  if (!(grid.dt >= 0.0)) throw ConfigError("[grid] dt must be non-negative");
  if (ensemble.paths < 1) throw ConfigError("[ensemble] paths must be at least 1");
  if (check.basis_max_index < 1) throw ConfigError("[check] basis_max_index must be positive");
  for (int n : check.ladder)
    if (n < 1) throw ConfigError("[check] ladder entries must be positive");
  if (noise.kernel != "nbar" && noise.kernel != "ndelta" && noise.kernel != "nsigma")
    throw ConfigError("[noise] kernel must be nbar, ndelta or nsigma");
}

Sections parse_sections(std::string_view text) {
  Sections out;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw;
    if (auto c = line.find_first_of("#;"); c != std::string::npos) line.erase(c);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(std::string_view(line).substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty()) throw ConfigError("line " + std::to_string(lineno) + ": key outside a section");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    if (!out[section].emplace(key, value).second)
      throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
  }
  return out;
}

RunConfig config_from_sections(const Sections& sections) {
  static const std::array<std::string_view, 8> known = {"run",    "physical", "grid",  "ensemble",
                                                        "output", "simulate", "noise", "check"};
  for (const auto& [name, _] : sections)
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw ConfigError("unknown section [" + name + "]");

  RunConfig c;
  {
    SectionReader r(sections, "run");
    r.choice("command", [&](const std::string& s) { c.command = parse_command(s); });
  }
  {
    SectionReader r(sections, "physical");
    auto& p = c.physical;
    r.real("mass", p.mass);
    r.real("trap_frequency", p.trap_frequency);
    r.real("cavity_length", p.cavity_length);
    r.real("temperature", p.temperature);
    r.integer("k_max", p.k_max);
    r.optional_real("sigma", p.sigma);
    r.choice("convention", [&](const std::string& s) { p.convention = parse_convention(s); });
  }
  {
    SectionReader r(sections, "grid");
    r.real("t_initial", c.grid.t_initial);
    r.real("t_final", c.grid.t_final);
    r.real("dt", c.grid.dt);
  }
  {
    SectionReader r(sections, "ensemble");
    r.integer("paths", c.ensemble.paths);
    r.integer("seed", c.ensemble.seed);
  }
  {
    SectionReader r(sections, "output");
    r.take("directory", c.output_directory);
  }
  {
    SectionReader r(sections, "simulate");
    auto& s = c.simulate;
    r.choice("dof", [&](const std::string& v) { s.dof = parse_dof(v); });
    r.choice("memory_mode", [&](const std::string& v) { s.memory_mode = parse_memory_mode(v); });
    r.choice("regime", [&](const std::string& v) { s.regime = parse_regime(v); });
    r.boolean("memory", s.memory);
    r.boolean("noise", s.noise);
    r.boolean("first_order", s.first_order);
    r.choice("initial", [&](const std::string& v) {
      if (v == "wigner") s.initial = InitialCondition::Wigner;
      else if (v == "fixed") s.initial = InitialCondition::Fixed;
      else throw std::invalid_argument("unknown initial condition '" + v + "'");
    });
    r.real("q0", s.q0);
    r.real("v0", s.v0);
    r.real("scale", s.scale);
  }
  {
    SectionReader r(sections, "noise");
    r.take("kernel", c.noise.kernel);
    r.real("max_studentized", c.noise.max_studentized);
  }
  {
    SectionReader r(sections, "check");
    auto& k = c.check;
    r.real("fdr_tolerance", k.fdr_tolerance);
    r.real("quadrature_tolerance", k.quadrature_tolerance);
    r.real("basis_tolerance", k.basis_tolerance);
    r.real("orthonormality_tolerance", k.orthonormality_tolerance);
    r.integer("basis_max_index", k.basis_max_index);
    std::string ladder;
    if (r.take("ladder", ladder)) {
      k.ladder.clear();
      std::stringstream ss(ladder);
      std::string item;
      while (std::getline(ss, item, ',')) {
        const std::string t = trim(item);
        int v = 0;
        const auto res = std::from_chars(t.data(), t.data() + t.size(), v);
        if (t.empty() || res.ec != std::errc() || res.ptr != t.data() + t.size())
          throw ConfigError("[check] ladder entry '" + t + "' is not an integer");
        k.ladder.push_back(v);
      }
    }
    r.real("casimir_tolerance", k.casimir_tolerance);
  }
  c.validate();
  return c;
}

Sections config_to_sections(const RunConfig& c, bool include_output) {
  Sections s;
  s["run"]["command"] = std::string(to_string(c.command));
  auto& p = s["physical"];
  p["mass"] = shortest(c.physical.mass);
  p["trap_frequency"] = shortest(c.physical.trap_frequency);
  p["cavity_length"] = shortest(c.physical.cavity_length);
  p["temperature"] = shortest(c.physical.temperature);
  p["k_max"] = std::to_string(c.physical.k_max);
  if (c.physical.sigma) p["sigma"] = shortest(*c.physical.sigma);
  p["convention"] = to_string(c.physical.convention);
  s["grid"] = {{"t_initial", shortest(c.grid.t_initial)},
               {"t_final", shortest(c.grid.t_final)},
               {"dt", shortest(c.grid.dt)}};
  s["ensemble"] = {{"paths", std::to_string(c.ensemble.paths)}, {"seed", std::to_string(c.ensemble.seed)}};
  if (include_output) s["output"]["directory"] = c.output_directory;
  auto& m = s["simulate"];
  m["dof"] = std::string(to_string(c.simulate.dof));
  m["memory_mode"] = std::string(to_string(c.simulate.memory_mode));
  m["regime"] = to_string(c.simulate.regime);
  m["memory"] = c.simulate.memory ? "true" : "false";
  m["noise"] = c.simulate.noise ? "true" : "false";
  m["first_order"] = c.simulate.first_order ? "true" : "false";
  m["initial"] = c.simulate.initial == InitialCondition::Wigner ? "wigner" : "fixed";
  m["q0"] = shortest(c.simulate.q0);
  m["v0"] = shortest(c.simulate.v0);
  m["scale"] = shortest(c.simulate.scale);
  s["noise"] = {{"kernel", c.noise.kernel}, {"max_studentized", shortest(c.noise.max_studentized)}};
  auto& k = s["check"];
  k["fdr_tolerance"] = shortest(c.check.fdr_tolerance);
  k["quadrature_tolerance"] = shortest(c.check.quadrature_tolerance);
  k["basis_tolerance"] = shortest(c.check.basis_tolerance);
  k["orthonormality_tolerance"] = shortest(c.check.orthonormality_tolerance);
  k["basis_max_index"] = std::to_string(c.check.basis_max_index);
  std::string ladder;
  for (std::size_t i = 0; i < c.check.ladder.size(); ++i)
    ladder += (i ? "," : "") + std::to_string(c.check.ladder[i]);
  k["ladder"] = ladder;
  k["casimir_tolerance"] = shortest(c.check.casimir_tolerance);
  return s;
}

RunConfig parse_config(std::string_view text) { return config_from_sections(parse_sections(text)); }

std::string emit_config(const RunConfig& cfg, bool include_output) {
  static const std::array<std::string_view, 8> order = {"run",    "physical", "grid",  "ensemble",
                                                        "output", "simulate", "noise", "check"};
  const Sections s = config_to_sections(cfg, include_output);
  std::string out;
  for (auto name : order) {
    auto it = s.find(std::string(name));
    if (it == s.end()) continue;
    if (!out.empty()) out += "\n";
    out += "[" + it->first + "]\n";
    for (const auto& [k, v] : it->second) out += k + " = " + v + "\n";
  }
  return out;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(path.string() + ": " + e.what());
    }
    if (!j.contains("config") || !j["config"].is_object())
      throw ConfigError(path.string() + ": manifest has no config object");
    Sections s;
    for (const auto& [name, body] : j["config"].items()) {
      if (!body.is_object()) throw ConfigError(path.string() + ": section " + name + " is not an object");
      for (const auto& [key, value] : body.items()) {
        if (!value.is_string()) throw ConfigError(path.string() + ": " + name + "." + key + " is not a string");
        s[name][key] = value.get<std::string>();
      }
    }
    return config_from_sections(s);
  }
  return parse_config(text);
}

std::string config_hash(const RunConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : emit_config(cfg, false)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return buf.data();
}

}  // namespace cavif
