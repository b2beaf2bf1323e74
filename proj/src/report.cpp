#include "dbarlab/report.hpp"

#include <sstream>

#include "dbarlab/io.hpp"

namespace dbarlab {

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::passed:
      return "passed";
    case CheckStatus::failed:
      return "failed";
    case CheckStatus::hypotheses_not_met:
      return "hypotheses-not-met";
    case CheckStatus::inconclusive:
      return "inconclusive";
  }
  return "inconclusive";
}

void VerificationReport::decide() {
  status = margin > -tolerance ? CheckStatus::passed : CheckStatus::failed;
  add_note("pass iff margin > -tolerance, tolerance = " + fmt12(tolerance));
}

void VerificationReport::add_note(std::string_view note) {
  if (!notes.empty()) notes += "; ";
  notes += note;
}

nlohmann::json VerificationReport::to_json() const {
  return {{"check_id", check_id},
          {"passed", passed()},
          {"status", std::string(to_string(status))},
          {"margin", round12(margin)},
          {"tolerance", round12(tolerance)},
          {"witness", witness},
          {"params", params},
          {"notes", notes},
          {"details", details}};
}

namespace {

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string summary_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "check_id,passed,status,margin,params\n";
  for (const auto& r : reports) {
    os << r.check_id << ',' << (r.passed() ? "true" : "false") << ',' << to_string(r.status) << ','
       << fmt12(r.margin) << ',' << csv_quote(r.params.dump()) << '\n';
  }
  return os.str();
}

}  // namespace dbarlab
