#pragma once

#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

namespace dbarlab {

using cplx = std::complex<double>;

/// Raw values for an InequalityParams bundle. Aggregate so call sites can use
/// designated initializers: `InequalityParams({.B = 2, .epsilon = 0.5, .n = 1})`.
struct InequalityValues {
  double alpha = 0.5;
  double gamma = 2.0;
  double B = 1.0;
  double C = 0.0;
  double epsilon = 0.0;
  int n = 2;
};

/// Scalar parameters shared by every inequality and constant.
///
/// Construction checks the invariants that hold in every regime
/// (0 < alpha < 1, gamma > 0, B > 0, C < 1, n >= 1, finite epsilon).
/// Regime-specific conditions such as epsilon in [0,1) or epsilon <= C are
/// enforced by the operation that needs them.
class InequalityParams {
 public:
  InequalityParams() : InequalityParams(InequalityValues{}) {}
  explicit InequalityParams(const InequalityValues& v);

  double alpha() const { return v_.alpha; }
  double gamma() const { return v_.gamma; }
  double B() const { return v_.B; }
  double C() const { return v_.C; }
  double epsilon() const { return v_.epsilon; }
  int n() const { return v_.n; }
  const InequalityValues& values() const { return v_; }

  nlohmann::json to_json() const;

 private:
  InequalityValues v_;
};

/// base^expo for a base that is positive in-regime, computed as exp(expo*log(base)).
double pos_pow(double base, double expo);

// --- no-small-solutions constants -------------------------------------------

/// M for Delta u - B u^eps >= 0 on the unit ball of R^n (0 <= eps < 1).
double comparison_bound_m(int n, double B, double epsilon);
double comparison_bound_m(const InequalityParams& p);

/// Lower bound S_alpha for sup|h| when dh/dzbar = |h|^alpha and h(0) != 0.
double s_alpha(double alpha);
/// log S_alpha; finite where S_alpha itself underflows (alpha above ~0.99).
double log_s_alpha(double alpha);
/// The two closed-form branches of S_alpha, each evaluated for any alpha in (0,1).
double s_alpha_low_branch(double alpha);
double s_alpha_high_branch(double alpha);

/// Smallest admissible gamma: max{2, (2-alpha)/(2-2alpha)}.
double gamma_star(double alpha);

/// Bound (2 alpha (1-alpha) / gamma)^(1/(2-2alpha)) obtained with a free
/// gamma >= gamma_star(alpha); equals s_alpha at gamma = gamma_star.
double dbar_sup_bound(double alpha, double gamma);

/// Volume of the radius-r ball in R^n and the (n-1)-measure of its boundary.
double ball_volume(int n, double r);
double sphere_measure(int n, double r);

/// kappa_n = int_0^1 ball_volume(n, r) dr / sphere_measure(n, 1) = 1/(n(n+1)).
double kappa_n(int n);

/// M = ((1-C) B kappa_n)^(1/(1-eps)) for u Delta u >= B|u|^(1+eps) + C|grad u|^2.
double divergence_bound_m(int n, double B, double C, double epsilon);
double divergence_bound_m(const InequalityParams& p);

/// One-dimensional version with initial data: M = ((1-C) B / 2)^(1/(1-eps)).
double ode_bound_m(double B, double C, double epsilon);
double ode_bound_m(const InequalityParams& p);

// --- holomorphic inverse radii ----------------------------------------------

/// 4 sqrt(2) / 3: the smallest r for which a target radius s > 1/2 is reachable.
double inverse_radius_threshold();

struct InverseRadii {
  double eta;        // 3r/8
  double s;          // 3r^2 / (64 - 12 r^2)
  double root_low;   // roots of 4 eta^2 - 3 r eta + 2
  double root_high;
};

/// Radii used to invert f(z) = Z1(rz)/2; requires 4 sqrt(2)/3 < r <= 2.
InverseRadii inverse_radii(double r);

/// s = eta (delta - eta) / (1 - eta delta), the radius on which f|D_eta is one-to-one onto.
double schwarz_pick_radius(double delta, double eta);

double pseudohyperbolic_distance(cplx z, cplx w);

struct EuclideanDisk {
  cplx center;
  double radius;
};

/// The pseudohyperbolic disk {z : rho_H(z, z0) < r} as a Euclidean disk.
EuclideanDisk pseudo_disk(cplx z0, double r);

// --- reports ----------------------------------------------------------------

struct ConstantsReport {
  std::string name;
  double value = 0.0;
  nlohmann::json inputs;
  std::string formula_id;

  nlohmann::json to_json() const;
};

/// Every constant whose regime admits p (plus inverse radii for r when r is in range).
std::vector<ConstantsReport> constants_table(const InequalityParams& p, double r);

}  // namespace dbarlab
