#include "atomdiode/config.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace atomdiode {

namespace {

constexpr double kCm = 1e-2;   // cm/s -> m/s
constexpr double kUm = 1e-6;   // um -> m
const double kDeg = M_PI / 180.0;

#ifndef ATOMDIODE_PRESET_DIR
#define ATOMDIODE_PRESET_DIR ""
#endif

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(x))
      throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad numeric value for " + key + ": " + v);
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer value for " + key + ": " + v);
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("config: bad boolean value for " + key + ": " + v);
}

using Section = std::map<std::string, std::string>;

struct RawConfig {
  std::map<std::string, Section> sections;
  std::vector<std::string> order;
};

RawConfig tokenize(std::istream& in) {
  RawConfig raw;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": malformed section header");
      section = trim(t.substr(1, t.size() - 2));
      if (section.empty())
        throw ConfigError("config line " + std::to_string(lineno) +
                          ": empty section name");
      if (raw.sections.count(section))
        throw ConfigError("config: duplicate section [" + section + "]");
      raw.sections[section];
      raw.order.push_back(section);
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos || section.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value inside a section");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    auto& sec = raw.sections[section];
    if (!sec.emplace(key, val).second)
      throw ConfigError("config: duplicate key " + key + " in [" + section +
                        "]");
  }
  return raw;
}

class SectionReader {
 public:
  SectionReader(const std::string& name, const Section& sec)
      : name_(name), sec_(sec) {}

  bool has(const std::string& key) const { return sec_.count(key) != 0; }

  std::string str(const std::string& key) {
    auto it = sec_.find(key);
    if (it == sec_.end())
      throw ConfigError("config: [" + name_ + "] is missing key " + key);
    seen_.insert(key);
    return it->second;
  }
  double num(const std::string& key) { return parse_number(key, str(key)); }
  double num(const std::string& key, double dflt) {
    return has(key) ? num(key) : dflt;
  }
  int integer(const std::string& key) { return parse_int(key, str(key)); }
  bool boolean(const std::string& key, bool dflt) {
    return has(key) ? parse_bool(key, str(key)) : dflt;
  }

  void done() const {
    for (const auto& [key, val] : sec_)
      if (!seen_.count(key))
        throw ConfigError("config: unknown key " + key + " in [" + name_ + "]");
  }

 private:
  std::string name_;
  const Section& sec_;
  std::set<std::string> seen_;
};

GaussianProfile read_profile(SectionReader& r) {
  GaussianProfile g;
  g.peak = r.num("peak");
  g.center = r.num("center", 0.0) * kUm;
  g.width = r.num("sigma") * kUm;
  if (!(g.width > 0.0)) throw ConfigError("config: sigma must be positive");
  if (g.peak < 0.0) throw ConfigError("config: peak must be >= 0");
  return g;
}

LaserField read_laser(SectionReader& r, int default_direction) {
  LaserField f;
  f.profile = read_profile(r);
  f.recoil_velocity = r.num("v0") * kCm;
  f.detuning_velocity = r.num("dv", 0.0) * kCm;
  const double dir = r.num("direction", default_direction);
  if (dir != 1.0 && dir != -1.0)
    throw ConfigError("config: direction must be 1 or -1");
  f.direction = int(dir);
  if (f.recoil_velocity < 0.0)
    throw ConfigError("config: v0 must be >= 0");
  return f;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void emit_profile(std::ostringstream& out, const GaussianProfile& g) {
  out << "peak = " << fmt(g.peak) << "\n";
  out << "center = " << fmt(g.center / kUm) << "\n";
  out << "sigma = " << fmt(g.width / kUm) << "\n";
}

void emit_laser(std::ostringstream& out, const LaserField& f) {
  emit_profile(out, f.profile);
  out << "v0 = " << fmt(f.recoil_velocity / kCm) << "\n";
  out << "dv = " << fmt(f.detuning_velocity / kCm) << "\n";
  out << "direction = " << f.direction << "\n";
}

SweepMode sweep_mode(const std::string& s) {
  if (s == "classify") return SweepMode::Classify;
  if (s == "quench-only") return SweepMode::QuenchOnly;
  if (s == "combined") return SweepMode::Combined;
  if (s == "combined-monolithic") return SweepMode::CombinedMonolithic;
  throw ConfigError("config: unknown sweep mode " + s);
}

const char* sweep_mode_name(SweepMode m) {
  switch (m) {
    case SweepMode::Classify:
      return "classify";
    case SweepMode::QuenchOnly:
      return "quench-only";
    case SweepMode::Combined:
      return "combined";
    case SweepMode::CombinedMonolithic:
      return "combined-monolithic";
  }
  return "classify";
}

}  // namespace

RunConfig parse_config(std::istream& in) {
  RawConfig raw = tokenize(in);
  RunConfig cfg;
  std::set<std::string> known;

  auto section = [&](const std::string& name) -> const Section* {
    known.insert(name);
    auto it = raw.sections.find(name);
    return it == raw.sections.end() ? nullptr : &it->second;
  };

  const Section* scheme_sec = section("scheme");
  if (!scheme_sec) throw ConfigError("config: missing [scheme] section");
  SectionReader scheme("scheme", *scheme_sec);
  const std::string kind = scheme.str("kind");
  if (kind == "two-level") {
    cfg.scheme.kind = SchemeKind::TwoLevelQuench;
  } else if (kind == "three-level") {
    cfg.scheme.kind = SchemeKind::ThreeLevelQuench;
  } else {
    throw ConfigError("config: kind must be two-level or three-level");
  }
  cfg.scheme.gamma = scheme.num("gamma", 0.0);
  if (cfg.scheme.gamma < 0.0)
    throw ConfigError("config: gamma must be >= 0");
  cfg.scheme.pump_enabled = scheme.boolean("pump_enabled", true);
  cfg.scheme.quench_enabled = scheme.boolean("quench_enabled", true);
  scheme.done();

  if (const Section* s = section("atom")) {
    SectionReader r("atom", *s);
    cfg.scheme.atom.mass = r.num("mass");
    if (!(cfg.scheme.atom.mass > 0.0))
      throw ConfigError("config: mass must be positive");
    r.done();
  }

  const bool two_level = cfg.scheme.kind == SchemeKind::TwoLevelQuench;
  const Section* m1 = section("mirror1");
  const Section* m = section("mirror");
  if (m1 && m)
    throw ConfigError("config: give only one of [mirror1] and [mirror]");
  if (const Section* s = m1 ? m1 : m) {
    SectionReader r(m1 ? "mirror1" : "mirror", *s);
    cfg.scheme.mirror_ground = read_profile(r);
    r.done();
  }
  if (const Section* s = section("mirror2")) {
    if (!two_level)
      throw ConfigError("config: [mirror2] is two-level only");
    SectionReader r("mirror2", *s);
    cfg.scheme.mirror_excited = read_profile(r);
    r.done();
  }

  if (const Section* s = section("pump")) {
    SectionReader r("pump", *s);
    cfg.scheme.pump = read_laser(r, +1);
    r.done();
  } else {
    throw ConfigError("config: missing [pump] section");
  }
  if (const Section* s = section("stokes")) {
    if (two_level)
      throw ConfigError("config: [stokes] is three-level only");
    SectionReader r("stokes", *s);
    cfg.scheme.stokes = read_laser(r, -1);
    r.done();
  } else if (!two_level) {
    throw ConfigError("config: missing [stokes] section");
  }
  if (const Section* s = section("quench")) {
    SectionReader r("quench", *s);
    cfg.scheme.quench = read_laser(r, +1);
    r.done();
  } else {
    throw ConfigError("config: missing [quench] section");
  }

  if (const Section* s = section("solver")) {
    SectionReader r("solver", *s);
    cfg.sweep.phase_step = r.num("phase_step", 0.1);
    cfg.sweep.pts_per_sigma = r.num("pts_per_sigma", 50.0);
    cfg.sweep.threshold = r.num("threshold", kDefaultThreshold);
    r.done();
  }

  if (const Section* s = section("sweep")) {
    SectionReader r("sweep", *s);
    cfg.has_sweep = true;
    cfg.sweep.mode = sweep_mode(r.str("mode"));
    cfg.sweep.w_min = r.num("w_min") * kCm;
    cfg.sweep.w_max = r.num("w_max") * kCm;
    cfg.sweep.w_count = r.integer("w_count");
    cfg.sweep.theta_min = r.num("theta_min") * kDeg;
    cfg.sweep.theta_max = r.num("theta_max") * kDeg;
    cfg.sweep.theta_count = r.integer("theta_count");
    r.done();
    cfg.sweep.validate();
  }

  if (const Section* s = section("output")) {
    SectionReader r("output", *s);
    cfg.output_path = r.str("path");
    r.done();
  }

  for (const auto& name : raw.order)
    if (!known.count(name))
      throw ConfigError("config: unknown section [" + name + "]");
  return cfg;
}

RunConfig parse_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("config: cannot open " + path);
  return parse_config(f);
}

std::string emit_config(const RunConfig& cfg) {
  std::ostringstream out;
  const bool two_level = cfg.scheme.kind == SchemeKind::TwoLevelQuench;
  out << "[scheme]\n";
  out << "kind = " << (two_level ? "two-level" : "three-level") << "\n";
  out << "gamma = " << fmt(cfg.scheme.gamma) << "\n";
  out << "pump_enabled = " << (cfg.scheme.pump_enabled ? "true" : "false")
      << "\n";
  out << "quench_enabled = " << (cfg.scheme.quench_enabled ? "true" : "false")
      << "\n";
  out << "\n[atom]\n";
  out << "mass = " << fmt(cfg.scheme.atom.mass) << "\n";
  out << (two_level ? "\n[mirror1]\n" : "\n[mirror]\n");
  emit_profile(out, cfg.scheme.mirror_ground);
  if (two_level) {
    out << "\n[mirror2]\n";
    emit_profile(out, cfg.scheme.mirror_excited);
  }
  out << "\n[pump]\n";
  emit_laser(out, cfg.scheme.pump);
  if (!two_level) {
    out << "\n[stokes]\n";
    emit_laser(out, cfg.scheme.stokes);
  }
  out << "\n[quench]\n";
  emit_laser(out, cfg.scheme.quench);
  out << "\n[solver]\n";
  out << "phase_step = " << fmt(cfg.sweep.phase_step) << "\n";
  out << "pts_per_sigma = " << fmt(cfg.sweep.pts_per_sigma) << "\n";
  out << "threshold = " << fmt(cfg.sweep.threshold) << "\n";
  if (cfg.has_sweep) {
    out << "\n[sweep]\n";
    out << "mode = " << sweep_mode_name(cfg.sweep.mode) << "\n";
    out << "w_min = " << fmt(cfg.sweep.w_min / kCm) << "\n";
    out << "w_max = " << fmt(cfg.sweep.w_max / kCm) << "\n";
    out << "w_count = " << cfg.sweep.w_count << "\n";
    out << "theta_min = " << fmt(cfg.sweep.theta_min / kDeg) << "\n";
    out << "theta_max = " << fmt(cfg.sweep.theta_max / kDeg) << "\n";
    out << "theta_count = " << cfg.sweep.theta_count << "\n";
  }
  if (!cfg.output_path.empty()) {
    out << "\n[output]\n";
    out << "path = " << cfg.output_path << "\n";
  }
  return out.str();
}

RunConfig load_preset(const std::string& name) {
  const std::string file =
      name.size() > 4 && name.substr(name.size() - 4) == ".ini" ? name
                                                                : name + ".ini";
  std::vector<std::string> dirs;
  if (const char* env = std::getenv("ATOMDIODE_PRESET_DIR")) dirs.push_back(env);
  dirs.push_back("presets");
  const std::string builtin = ATOMDIODE_PRESET_DIR;
  if (!builtin.empty()) dirs.push_back(builtin);
  for (const auto& dir : dirs) {
    const std::string path = dir + "/" + file;
    std::ifstream f(path);
    if (f) return parse_config(f);
  }
  throw ConfigError("preset not found: " + name);
}

}  // namespace atomdiode
