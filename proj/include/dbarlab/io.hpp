#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace dbarlab {

/// Rounds to 12 significant digits so serialized output is stable and compact.
double round12(double v);

/// "%.12g" formatting used for every numeric value written by the project.
std::string fmt12(double v);

/// [re, im] with 12-digit rounding.
nlohmann::json complex_json(std::complex<double> z);

void write_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace dbarlab
