#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace dbarlab {

enum class CheckStatus { passed, failed, hypotheses_not_met, inconclusive };

std::string_view to_string(CheckStatus s);

/// Outcome of one numeric check of a bound or residual.
///
/// `margin` is the signed distance to violation; a check passes when
/// margin > -tolerance. Checks whose input fails the theorem's hypotheses, or
/// whose numerics are not trustworthy, carry the corresponding status and are
/// never counted as passes.
struct VerificationReport {
  std::string check_id;
  CheckStatus status = CheckStatus::inconclusive;
  double margin = 0.0;
  double tolerance = 0.0;
  nlohmann::json witness = nlohmann::json::object();
  nlohmann::json params = nlohmann::json::object();
  std::string notes;
  nlohmann::json details = nlohmann::json::object();

  bool passed() const { return status == CheckStatus::passed; }

  /// Sets status from margin and tolerance and records the tolerance in the notes.
  void decide();
  void add_note(std::string_view note);

  nlohmann::json to_json() const;
};

/// Header check_id,passed,status,margin,params followed by one row per report.
std::string summary_csv(const std::vector<VerificationReport>& reports);

}  // namespace dbarlab
