#include "dbarlab/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace dbarlab {

double round12(double v) {
  if (!std::isfinite(v) || v == 0.0) return v;
  return std::strtod(fmt12(v).c_str(), nullptr);
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json complex_json(std::complex<double> z) {
  return nlohmann::json::array({round12(z.real()), round12(z.imag())});
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  os << content;
}

}  // namespace dbarlab
