#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "dbarlab/dbar.hpp"
#include "dbarlab/grid.hpp"
#include "dbarlab/holo.hpp"
#include "dbarlab/lattice.hpp"
#include "dbarlab/params.hpp"
#include "dbarlab/report.hpp"

namespace dbarlab {

/// Discretization tolerance tol(h) = c h scale. The constant c = 4 is set so that
/// exact solutions (the piecewise family with its C^2 breakpoints, the explicit disk) pass at every
/// refinement used in the tests.
inline constexpr double kToleranceC = 4.0;
double discretization_tolerance(double h, double scale);

/// Largest relative dbar residual accepted from an input field by check_chain.
inline constexpr double kMaxInputResidual = 0.1;

/// No-small-solutions bound on a sampled field. Hypotheses: u >= 0 and the discrete residual
/// Delta u - B u^eps >= -tol on interior nodes where u > 0. Passes iff u(0) = 0
/// or sup u > comparison_bound_m(p).
VerificationReport check_no_small_solutions(const ScalarFieldND& u, const InequalityParams& p);

/// Subharmonicity chain for rho = |f|^(1-alpha), zeta = rho^gamma, on interior nodes whose
/// whole stencil has |f| > floor:
///   (a) Delta(rho^gamma) >= 2 alpha (1-alpha) gamma rho^(gamma-2), only for gamma >= (2-alpha)/(2-2alpha);
///   (b) (2/gamma) rho^(2-gamma) Delta(rho^gamma) >= 4 alpha(1-alpha) + (2(gamma-1) - alpha/(1-alpha)) |grad rho|^2;
///   (c) zeta Delta zeta >= 2 alpha(1-alpha) gamma zeta^(2-2/gamma) + ((2(gamma-1) - alpha/(1-alpha))/(2 gamma)) |grad zeta|^2.
/// Margins are relative, (lhs - rhs)/(|lhs| + |rhs|), against tolerance c (h + relative dbar
/// residual of the input). Inputs whose relative residual exceeds kMaxInputResidual, or with
/// fewer than 10% of interior nodes usable, give hypotheses-not-met.
VerificationReport check_chain(const ComplexField& f, double alpha, double gamma, double floor = 1e-3);

/// Polar form of the equation, its conjugate component and the modulus identity, for g = f^(1-alpha) = rho e^{i phi} on the largest disk of rings
/// where |f| > floor and the phase unwraps without winding. Residuals are relative to
/// 2(1-alpha) and 4(1-alpha)^2 and compared with c h.
VerificationReport check_polar_system(const ComplexField& f, double alpha, double floor = 1e-3);

/// Boundary maximum principle probe. Hypotheses: u Delta u - B|u|^(1+eps) - C|grad u|^2 >= -tol on
/// interior nodes with u > 0, and some u > 0. Passes iff the argmax lies within h of
/// the lattice boundary.
VerificationReport probe_maximum_principle(const ScalarFieldND& u, const InequalityParams& p);

enum class OdeMode { equality, margin };

/// Samples of u'' = (B|u|^(1+eps) + C u'^2)/u (+ kOdeMargin in margin mode).
struct OdeTrajectory {
  std::vector<double> t, u, du;
  double step = 0.0;
  double B = 0.0, C = 0.0, epsilon = 0.0;
  OdeMode mode = OdeMode::equality;
  double t_end = 0.0;
  bool blew_up = false;
  /// u reached 0 mid-integration (a discretization fault, since exact solutions stay positive).
  bool positivity_fault = false;

  double min_u() const;
  double sup_u() const;
  /// Cubic Hermite interpolation of u on [0, t.back()].
  double interpolate(double x) const;
  nlohmann::json to_json() const;
};

inline constexpr double kOdeMargin = 0.1;

/// Classical RK4 with fixed step from t = 0 to 1 - delta_end, stopping early if u
/// exceeds 1e12 or stops being finite. Requires u0 > 0, du0 >= 0, B > 0,
/// -1 <= C < 1, eps <= C.
OdeTrajectory integrate_ode_ineq(double B, double C, double epsilon, double u0, double du0,
                                 OdeMode mode = OdeMode::equality, double step = 1e-4,
                                 double delta_end = 1e-3);

/// Step-halving ratio (u_h - u_{h/2}) / (u_{h/2} - u_{h/4}) at t = t_eval.
double ode_order_ratio(double B, double C, double epsilon, double u0, double du0, double step,
                       double t_eval = 0.5);

/// Positivity (min u > 0) and blow-up (sup u > ode_bound_m) on a trajectory.
VerificationReport check_ode_theorem(const OdeTrajectory& traj);

/// Even extension u(x) = traj(|x|) on a one-dimensional lattice. Requires du0 = 0
/// (so the extension solves the same equation) and a lattice radius <= t.back().
ScalarFieldND embed_trajectory(const OdeTrajectory& traj, const BallLattice& lattice);

/// Divergence bound in both forms. Hypotheses: u Delta u - B|u|^(1+eps) - C|grad u|^2 >= -tol
/// on interior nodes, C < 1, eps <= C. Passes iff (min u > 0 implies sup u > M) and
/// (sup u <= M implies some u <= 0).
VerificationReport check_divergence_bound(const ScalarFieldND& u, const InequalityParams& p);

/// Randomized search for a counterexample to the divergence bound: strictly positive fields on an
/// n = p.n() lattice with sup u <= M. Fails if any candidate meets the residual tolerance.
VerificationReport adversarial_divergence_search(const InequalityParams& p, std::uint64_t seed,
                                                 int n_trials = 200, int K = 24);

struct KobayashiOptions {
  double r = 1.9;
  PowerSeries z1 = PowerSeries::identity();
  PicardConfig picard;
};

/// Kobayashi pseudonorm pipeline: normalize a candidate disk with lemma33_inverse, solve
/// dbar f = |f|^alpha with f(0) = b, and compare sup|f| with S = s_alpha(alpha).
/// Passes when the contradiction sup|f| > S is reproduced (or, for b = 0, when
/// Z(z) = (z, 0) fits). Non-convergence gives an inconclusive report.
VerificationReport kobayashi_experiment(double alpha, cplx b, const KobayashiOptions& opt = {});

/// Lower bound 3/(4 sqrt 2) at b != 0 and upper bound 1/2 at b = 0.
double kobayashi_lower_bound();
double kobayashi_upper_bound_at_zero();

}  // namespace dbarlab
