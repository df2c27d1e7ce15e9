#pragma once

#include <string>
#include <vector>

#include "scto/config.hpp"
#include "scto/density.hpp"

// Deterministic CSV / JSON output with the resolved config embedded as a
// comment header for provenance.

namespace scto {

/// Shortest round-trip decimal representation of a double.
std::string format_double(double x);

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const Config& cfg,
            const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void close();
  ~CsvWriter();

 private:
  struct Impl;
  Impl* impl_;
};

std::string config_header_lines(const Config& cfg);

void write_density_csv(const std::string& path, const Config& cfg, const GridDensity& d);

}  // namespace scto
