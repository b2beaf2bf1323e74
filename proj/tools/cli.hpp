#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dbarlab/report.hpp"

namespace dbarlab::cli {

enum class Format { csv, json };

struct GlobalOptions {
  bool strict = false;
  std::uint64_t seed = 0;
  Format format = Format::json;
  /// Output directory; empty means stdout only (solve falls back to ".").
  std::string out;
};

struct ConstantsOptions {
  bool salpha = false;
  bool kappa = false;
  bool m_comparison = false;
  bool m_div = false;
  bool m_ode = false;
  bool gamma_star = false;
  bool inverse_radii = false;
  double alpha = 0.5;
  double gamma = 2.0;
  int n = 2;
  double B = 1.0;
  double C = 0.0;
  double eps = 0.0;
  double r = 1.9;

  bool any_selected() const {
    return salpha || kappa || m_comparison || m_div || m_ode || gamma_star || inverse_radii;
  }
};

struct SolveOptions {
  double alpha = 0.5;
  double b = 0.0;
  double b_im = 0.0;
  double radius = 1.0;
  int n_r = 128;
  int n_t = 128;
  int max_iter = 500;
  double tol = 1e-8;
};

/// Suite-specific defaults apply to every unset optional.
struct VerifyOptions {
  std::string suite = "all";
  double alpha = 0.5;
  double b = 0.01;
  double b_im = 0.0;
  double r = 1.9;
  std::vector<double> z1 = {0.0, 1.0};
  std::optional<std::string> family;
  std::optional<std::string> source;
  double c1 = 0.2;
  double c2 = 0.5;
  std::optional<double> B, C, eps;
  std::optional<int> n;
  double gamma = 2.0;
  double radius = 0.35;
  int grid = 64;
  std::optional<int> K;
  double u0 = 0.01;
  double du0 = 0.0;
  int trials = 200;
};

inline const std::vector<std::string> kSuites = {"chain", "nss", "maxprinciple", "ode",
                                                 "kobayashi", "inverse", "all"};

/// Result of one subcommand: exit code, text for stdout and files for the output directory.
struct CommandResult {
  int exit_code = 0;
  std::string stdout_text;
  std::map<std::string, std::string> files;
};

inline constexpr int kExitPass = 0;
inline constexpr int kExitFailure = 2;
inline constexpr int kExitHypotheses = 3;
inline constexpr int kExitInvalid = 4;

CommandResult cmd_constants(const ConstantsOptions& o, const GlobalOptions& g);
CommandResult cmd_solve(const SolveOptions& o, const GlobalOptions& g);
CommandResult cmd_verify(const VerifyOptions& o, const GlobalOptions& g);

/// Reports of one named suite (not "all").
std::vector<VerificationReport> run_suite(const std::string& suite, const VerifyOptions& o,
                                          const GlobalOptions& g);

/// 0 when every report passes (hypotheses-not-met tolerated unless strict),
/// 3 for hypotheses-not-met in strict mode, 2 otherwise.
int exit_code_for(const std::vector<VerificationReport>& reports, bool strict);

/// Runs the full command line; invalid parameters map to exit code 4.
int run(int argc, char** argv);

}  // namespace dbarlab::cli
