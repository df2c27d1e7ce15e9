#include "scto/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scto {

std::string format_double(double x) {
  char buf[64];
  // round-trip exact for doubles, stable across runs
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string config_header_lines(const Config& cfg) {
  std::ostringstream os;
  for (const auto& [k, v] : cfg.entries()) os << "# " << k << " = " << v << "\n";
  return os.str();
}

struct CsvWriter::Impl {
  std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path, const Config& cfg,
                     const std::vector<std::string>& columns)
    : impl_(new Impl) {
  impl_->out.open(path);
  if (!impl_->out) {
    delete impl_;
    throw std::runtime_error("cannot open output file: " + path);
  }
  impl_->out << config_header_lines(cfg);
  for (std::size_t i = 0; i < columns.size(); ++i)
    impl_->out << columns[i] << (i + 1 < columns.size() ? "," : "\n");
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i)
    impl_->out << cells[i] << (i + 1 < cells.size() ? "," : "\n");
}

void CsvWriter::close() {
  if (impl_ && impl_->out.is_open()) impl_->out.close();
}

CsvWriter::~CsvWriter() {
  close();
  delete impl_;
}

void write_density_csv(const std::string& path, const Config& cfg, const GridDensity& d) {
  CsvWriter w(path, cfg, {"x", "f"});
  const int m = d.resolution();
  for (int j = 0; j < m; ++j)
    w.row({format_double(static_cast<double>(j) / m), format_double(d.values()[j])});
}

}  // namespace scto
