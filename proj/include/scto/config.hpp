#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scto/density.hpp"
#include "scto/maps.hpp"

// Flat dotted key-value experiment configs ("map.kind = perturbed_linear").

namespace scto {

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key) const;
  long get_int(const std::string& key, long fallback) const;

  /// Keys never read back; non-empty means the config has an unknown entry.
  std::vector<std::string> unused_keys() const;
  const std::map<std::string, std::string>& entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
  mutable std::map<std::string, bool> used_;
};

/// Map spec: map.kind (perturbed_linear), map.degree, map.delta.
ExpandingMap map_from_config(const Config& cfg);

/// Density spec: density.kind in {constant, trig, bump, nodes} with the
/// per-kind parameters, sampled at grid.M nodes.
GridDensity density_from_config(const Config& cfg, int resolution);

}  // namespace scto
