#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbarlab/grid.hpp"
#include "dbarlab/report.hpp"

namespace dbarlab {

/// Picard iteration f <- b + T(|f|^alpha) - T(|f|^alpha)(0) for df/dzbar = |f|^alpha.
struct PicardConfig {
  double alpha = 0.5;
  cplx b = 0.0;
  int max_iter = 500;
  double tol = 1e-8;  // sup-norm successive-change threshold
  PolarGrid grid = PolarGrid(1.0, 128, 128);
  double divergence_cap = 10.0;
  /// Initial weight w in f <- (1-w) f + w F(f), where F is the Picard map.
  double relaxation = 1.0;
  /// When set, w is halved whenever sup|F(f) - f| rises and grown by 1.25 (up to
  /// the initial weight) otherwise; it never drops below min_relaxation.
  bool adaptive_relaxation = true;
  double min_relaxation = 1.0 / 64.0;
  /// Iterations exempt from the monotone-change requirement.
  int burn_in = 20;
  /// After burn-in a change above slack * (smallest change so far) counts as a rise.
  double monotone_slack = 10.0;

  /// Throws InvalidParameter on an invalid configuration.
  void validate() const;
  nlohmann::json to_json() const;
};

struct PicardStep {
  int iteration = 0;
  /// sup|F(f) - f|, the change a plain Picard step would make.
  double sup_change = 0.0;
  double residual = 0.0;
  double relaxation = 1.0;
};

struct DbarSolution {
  ComplexField field;
  /// sup over interior nodes of |dbar f - |f|^alpha|.
  double residual_sup = 0.0;
  int iterations = 0;
  bool converged = false;
  bool monotone = true;
  bool diverged = false;
  std::string stop_reason;
  double sup_abs = 0.0;
  std::size_t sup_node = 0;
  /// Nodes with |f| < 10 tol, where the nonlinearity is not Lipschitz.
  std::vector<std::size_t> near_zero_nodes;
  std::vector<PicardStep> trace;
  PicardConfig config;

  nlohmann::json summary_json() const;
  /// One JSON object per line: {"iteration", "sup_change", "residual", "relaxation"}.
  std::string trace_jsonl() const;
};

/// sup over interior nodes of |dbar f - |f|^alpha|.
double dbar_residual_sup(const ComplexField& f, double alpha);

DbarSolution solve_picard(const PicardConfig& cfg);

/// Z = (Z1, Z2) with Z1 holomorphic; lambda(z1, z2) = -2|z2|^alpha.
struct JDisk {
  ComplexField z1;
  ComplexField z2;
  double S = 0.0;
};

struct JDiskOutcome {
  std::optional<JDisk> disk;
  /// True when sup|f| >= S, i.e. the candidate leaves the bidisk D_2 x D_S.
  bool flagged = false;
  double sup_abs = 0.0;
  double S = 0.0;
  /// System residual sup over interior nodes and Z1 holomorphy residual.
  double system_residual = 0.0;
  double z1_dbar_residual = 0.0;
  VerificationReport report;
};

/// Builds Z(z) = (z, f(z)) and evaluates the nonlinear Cauchy-Riemann system
/// u_y = -v_x, u_x + lambda = v_y. A flagged outcome carries no disk.
JDiskOutcome build_jdisk(const DbarSolution& f, double S);
JDiskOutcome build_jdisk(const ComplexField& f, double alpha, double S);

/// Compares, node by node, R2 + i R1 for the real system (R1 = u_y + v_x,
/// R2 = u_x - 2|f|^alpha - v_y) with 2 (dbar f - |f|^alpha).
VerificationReport check_eq9_equivalence(const ComplexField& f, double alpha);

}  // namespace dbarlab
