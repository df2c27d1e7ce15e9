#include "scto/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace scto {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config Config::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str());
}

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = trim(line);
    if (s.empty() || s[0] == '#') continue;
    std::size_t eq = s.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + " has no '=': " + s);
    std::string key = trim(s.substr(0, eq));
    std::string val = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + " has empty key");
    if (cfg.kv_.count(key)) throw ConfigError("duplicate config key: " + key);
    cfg.kv_[key] = val;
  }
  return cfg;
}

bool Config::has(const std::string& key) const { return kv_.count(key) > 0; }

std::string Config::get_string(const std::string& key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ConfigError("missing config key: " + key);
  used_[key] = true;
  return it->second;
}

std::string Config::get_string(const std::string& key, const std::string& fallback) const {
  if (!has(key)) return fallback;
  return get_string(key);
}

double Config::get_double(const std::string& key) const {
  std::string v = get_string(key);
  char* end = nullptr;
  double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("config key " + key + " is not a number: " + v);
  return x;
}

double Config::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  return get_double(key);
}

long Config::get_int(const std::string& key) const {
  std::string v = get_string(key);
  char* end = nullptr;
  long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end != '\0')
    throw ConfigError("config key " + key + " is not an integer: " + v);
  return x;
}

long Config::get_int(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  return get_int(key);
}

std::vector<std::string> Config::unused_keys() const {
  std::vector<std::string> out;
  for (const auto& [k, v] : kv_)
    if (!used_.count(k)) out.push_back(k);
  return out;
}

ExpandingMap map_from_config(const Config& cfg) {
  std::string kind = cfg.get_string("map.kind");
  if (kind == "perturbed_linear") {
    int degree = static_cast<int>(cfg.get_int("map.degree"));
    double delta = cfg.get_double("map.delta", 0.0);
    return make_perturbed_linear(degree, delta);
  }
  throw ConfigError("unknown map.kind: " + kind);
}

GridDensity density_from_config(const Config& cfg, int resolution) {
  std::string kind = cfg.get_string("density.kind");
  if (kind == "constant") return GridDensity::constant(resolution);
  if (kind == "trig") {
    double a = cfg.get_double("density.a", 0.0);
    double b = cfg.get_double("density.b", 0.0);
    int k = static_cast<int>(cfg.get_int("density.k", 1));
    return GridDensity::trig(resolution, a, b, k);
  }
  if (kind == "bump") {
    double center = cfg.get_double("density.center");
    double radius = cfg.get_double("density.radius");
    return GridDensity::bump(resolution, wrap(center), radius);
  }
  if (kind == "nodes") {
    std::istringstream in(cfg.get_string("density.values"));
    std::vector<double> v;
    std::string tok;
    while (std::getline(in, tok, ',')) v.push_back(std::stod(tok));
    GridDensity d(std::move(v));
    if (d.resolution() != resolution)
      throw ConfigError("density.values length does not match grid.M");
    return normalize(clamp_nonnegative(d));
  }
  throw ConfigError("unknown density.kind: " + kind);
}

}  // namespace scto
