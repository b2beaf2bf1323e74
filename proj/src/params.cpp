#include "dbarlab/params.hpp"

#include <cmath>
#include <numbers>

#include "dbarlab/error.hpp"
#include "dbarlab/io.hpp"

namespace dbarlab {

InequalityParams::InequalityParams(const InequalityValues& v) : v_(v) {
  require(v.alpha > 0.0 && v.alpha < 1.0, "0 < alpha < 1", "alpha", v.alpha);
  require(v.gamma > 0.0, "gamma > 0", "gamma", v.gamma);
  require(v.B > 0.0, "B > 0", "B", v.B);
  require(v.C < 1.0, "C < 1", "C", v.C);
  require(std::isfinite(v.epsilon), "finite epsilon", "epsilon", v.epsilon);
  require(v.n >= 1, "n >= 1", "n", v.n);
}

nlohmann::json InequalityParams::to_json() const {
  return {{"alpha", round12(v_.alpha)}, {"gamma", round12(v_.gamma)}, {"B", round12(v_.B)},
          {"C", round12(v_.C)},         {"epsilon", round12(v_.epsilon)}, {"n", v_.n}};
}

double pos_pow(double base, double expo) {
  if (!(base > 0.0)) {
    throw InvalidParameter("fractional power of a non-positive base " +
                           detail::format_value(base));
  }
  return std::exp(expo * std::log(base));
}

double comparison_bound_m(int n, double B, double epsilon) {
  require(n >= 1, "n >= 1", "n", n);
  require(B > 0.0, "B > 0", "B", B);
  require(epsilon >= 0.0 && epsilon < 1.0, "0 <= epsilon < 1", "epsilon", epsilon);
  const double one_m = 1.0 - epsilon;
  const double base = B * one_m * one_m / (2.0 * (2.0 * epsilon + n * one_m));
  return pos_pow(base, 1.0 / one_m);
}

double comparison_bound_m(const InequalityParams& p) {
  return comparison_bound_m(p.n(), p.B(), p.epsilon());
}

namespace {

void require_alpha(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
}

}  // namespace

double s_alpha_low_branch(double alpha) {
  require_alpha(alpha);
  return pos_pow(alpha * (1.0 - alpha), 1.0 / (2.0 - 2.0 * alpha));
}

double s_alpha_high_branch(double alpha) {
  require_alpha(alpha);
  const double one_m = 1.0 - alpha;
  return pos_pow(4.0 * alpha * one_m * one_m / (2.0 - alpha), 1.0 / (2.0 - 2.0 * alpha));
}

double s_alpha(double alpha) {
  require_alpha(alpha);
  // Both branches coincide at 2/3; the low branch is taken there.
  return alpha <= 2.0 / 3.0 ? s_alpha_low_branch(alpha) : s_alpha_high_branch(alpha);
}

double log_s_alpha(double alpha) {
  require_alpha(alpha);
  const double one_m = 1.0 - alpha;
  const double base = alpha <= 2.0 / 3.0 ? alpha * one_m : 4.0 * alpha * one_m * one_m / (2.0 - alpha);
  return std::log(base) / (2.0 - 2.0 * alpha);
}

double gamma_star(double alpha) {
  require_alpha(alpha);
  return std::max(2.0, (2.0 - alpha) / (2.0 - 2.0 * alpha));
}

double dbar_sup_bound(double alpha, double gamma) {
  const double g_min = gamma_star(alpha);
  require(gamma >= g_min, "gamma >= max{2, (2-alpha)/(2-2alpha)}", "gamma", gamma);
  return pos_pow(2.0 * alpha * (1.0 - alpha) / gamma, 1.0 / (2.0 - 2.0 * alpha));
}

double ball_volume(int n, double r) {
  require(n >= 1, "n >= 1", "n", n);
  const double half_n = 0.5 * n;
  return std::pow(std::numbers::pi, half_n) / std::tgamma(half_n + 1.0) * std::pow(r, n);
}

double sphere_measure(int n, double r) {
  require(n >= 1, "n >= 1", "n", n);
  return n * ball_volume(n, 1.0) * std::pow(r, n - 1);
}

double kappa_n(int n) {
  require(n >= 1, "n >= 1", "n", n);
  return 1.0 / (static_cast<double>(n) * (n + 1));
}

double divergence_bound_m(int n, double B, double C, double epsilon) {
  require(B > 0.0, "B > 0", "B", B);
  require(C < 1.0, "C < 1", "C", C);
  require(epsilon <= C, "epsilon <= C", "epsilon", epsilon);
  return pos_pow((1.0 - C) * B * kappa_n(n), 1.0 / (1.0 - epsilon));
}

double divergence_bound_m(const InequalityParams& p) {
  return divergence_bound_m(p.n(), p.B(), p.C(), p.epsilon());
}

double ode_bound_m(double B, double C, double epsilon) {
  require(B > 0.0, "B > 0", "B", B);
  require(C >= -1.0 && C < 1.0, "-1 <= C < 1", "C", C);
  require(epsilon <= C, "epsilon <= C", "epsilon", epsilon);
  return pos_pow(0.5 * (1.0 - C) * B, 1.0 / (1.0 - epsilon));
}

double ode_bound_m(const InequalityParams& p) { return ode_bound_m(p.B(), p.C(), p.epsilon()); }

double inverse_radius_threshold() { return 4.0 * std::numbers::sqrt2 / 3.0; }

InverseRadii inverse_radii(double r) {
  require(r > inverse_radius_threshold(), "r > 4*sqrt(2)/3 ~ 1.8856", "r", r);
  require(r <= 2.0, "r <= 2", "r", r);
  const double disc = std::sqrt(9.0 * r * r - 32.0);
  return InverseRadii{.eta = 3.0 * r / 8.0,
                      .s = 3.0 * r * r / (64.0 - 12.0 * r * r),
                      .root_low = (3.0 * r - disc) / 8.0,
                      .root_high = (3.0 * r + disc) / 8.0};
}

double schwarz_pick_radius(double delta, double eta) {
  require(eta > 0.0, "eta > 0", "eta", eta);
  require(eta < delta, "eta < delta", "eta", eta);
  require(delta <= 1.0, "delta <= 1", "delta", delta);
  return (delta - eta) / (1.0 - eta * delta) * eta;
}

double pseudohyperbolic_distance(cplx z, cplx w) {
  return std::abs((z - w) / (1.0 - std::conj(w) * z));
}

EuclideanDisk pseudo_disk(cplx z0, double r) {
  require(std::abs(z0) < 1.0, "|z0| < 1", "|z0|", std::abs(z0));
  require(r > 0.0 && r < 1.0, "0 < r < 1", "r", r);
  const double a2 = std::norm(z0);
  const double denom = 1.0 - r * r * a2;
  return EuclideanDisk{.center = (1.0 - r * r) / denom * z0, .radius = r * (1.0 - a2) / denom};
}

nlohmann::json ConstantsReport::to_json() const {
  return {{"name", name}, {"value", round12(value)}, {"inputs", inputs}, {"formula_id", formula_id}};
}

std::vector<ConstantsReport> constants_table(const InequalityParams& p, double r) {
  std::vector<ConstantsReport> out;
  const double a = p.alpha();
  out.push_back({"S_alpha", s_alpha(a), {{"alpha", round12(a)}}, "no_small_solutions.s_alpha"});
  out.push_back({"gamma_star", gamma_star(a), {{"alpha", round12(a)}}, "no_small_solutions.gamma_star"});
  if (p.gamma() >= gamma_star(a)) {
    out.push_back({"dbar_sup_bound", dbar_sup_bound(a, p.gamma()),
                   {{"alpha", round12(a)}, {"gamma", round12(p.gamma())}},
                   "no_small_solutions.gamma_bound"});
  }
  out.push_back({"kappa_n", kappa_n(p.n()), {{"n", p.n()}}, "ball.kappa_n"});
  if (p.epsilon() >= 0.0 && p.epsilon() < 1.0) {
    out.push_back({"M_comparison", comparison_bound_m(p),
                   {{"n", p.n()}, {"B", round12(p.B())}, {"epsilon", round12(p.epsilon())}},
                   "comparison.m"});
  }
  if (p.epsilon() <= p.C()) {
    out.push_back({"M_divergence", divergence_bound_m(p),
                   {{"n", p.n()}, {"B", round12(p.B())}, {"C", round12(p.C())},
                    {"epsilon", round12(p.epsilon())}},
                   "divergence.m"});
    if (p.C() >= -1.0) {
      out.push_back({"M_ode", ode_bound_m(p),
                     {{"B", round12(p.B())}, {"C", round12(p.C())}, {"epsilon", round12(p.epsilon())}},
                     "ode.m"});
    }
  }
  if (r > inverse_radius_threshold() && r <= 2.0) {
    const InverseRadii ir = inverse_radii(r);
    out.push_back({"eta", ir.eta, {{"r", round12(r)}}, "inverse.eta"});
    out.push_back({"s", ir.s, {{"r", round12(r)}}, "inverse.s"});
  }
  return out;
}

}  // namespace dbarlab
