#include "dbarlab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "dbarlab/error.hpp"
#include "dbarlab/io.hpp"

namespace dbarlab {

double discretization_tolerance(double h, double scale) { return kToleranceC * h * scale; }

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

nlohmann::json lattice_point_json(const BallLattice& lat, std::size_t idx) {
  nlohmann::json p = nlohmann::json::array();
  for (double x : lat.point(idx)) p.push_back(round12(x));
  return p;
}

nlohmann::json lattice_json(const BallLattice& lat) {
  return {{"n", lat.n()}, {"K", lat.K()}, {"h", round12(lat.h())}, {"radius", round12(lat.radius())}};
}

// Worst node-wise residual over interior lattice nodes. Each residual is divided
// by the sum of its term magnitudes, so the tolerance c h is relative at every node.
struct LatticeScan {
  double worst = kInf;  // smallest residual / term magnitude
  double worst_abs = 0.0;
  std::size_t node = 0;
  int tested = 0;
  double tol = 0.0;

  bool admissible() const { return tested == 0 || worst >= -tol; }
  nlohmann::json to_json(const BallLattice& lat) const {
    return {{"worst_relative_residual", tested ? nlohmann::json(round12(worst)) : nlohmann::json(nullptr)},
            {"worst_residual", tested ? nlohmann::json(round12(worst_abs)) : nlohmann::json(nullptr)},
            {"worst_point", tested ? lattice_point_json(lat, node) : nlohmann::json(nullptr)},
            {"relative_tolerance", round12(tol)},
            {"tested_nodes", tested}};
  }
};

// residual(i) returns {value, sum of term magnitudes}.
template <typename Fn>
LatticeScan scan_lattice(const ScalarFieldND& u, bool positive_only, Fn residual) {
  const BallLattice& lat = u.lattice();
  LatticeScan s;
  s.tol = discretization_tolerance(lat.h(), 1.0);
  for (std::size_t idx : lat.nodes()) {
    if (!lat.is_interior(idx) || (positive_only && !(u[idx] > 0.0))) continue;
    const auto [value, terms] = residual(idx);
    ++s.tested;
    const double rel = terms > 0.0 ? value / terms : 0.0;
    if (rel < s.worst) {
      s.worst = rel;
      s.worst_abs = value;
      s.node = idx;
    }
  }
  return s;
}

// u Delta u - B|u|^(1+eps) - C|grad u|^2 on interior nodes.
LatticeScan scan_quotient_ineq(const ScalarFieldND& u, const InequalityParams& p, bool positive_only) {
  const ScalarFieldND lap = laplacian(u);
  const ScalarFieldND g2 = gradient_norm2(u);
  const double B = p.B(), C = p.C(), e = p.epsilon();
  return scan_lattice(u, positive_only, [&](std::size_t i) {
    const double a = u[i] * lap[i];
    const double b = B * std::pow(std::abs(u[i]), 1.0 + e);
    const double c = C * g2[i];
    return std::pair{a - b - c, std::abs(a) + std::abs(b) + std::abs(c)};
  });
}

VerificationReport hypotheses_not_met(VerificationReport r, double margin, std::string_view why) {
  r.status = CheckStatus::hypotheses_not_met;
  r.margin = margin;
  r.add_note(why);
  return r;
}

}  // namespace

// --- No small solutions ---------------------------------------------------------------------

VerificationReport check_no_small_solutions(const ScalarFieldND& u, const InequalityParams& p) {
  const double M = comparison_bound_m(p);
  const BallLattice& lat = u.lattice();
  require(lat.n() == p.n(), "lattice dimension == n", "lattice n", lat.n());
  VerificationReport r;
  r.check_id = "nss.comparison";
  r.params = {{"inequality", p.to_json()}, {"lattice", lattice_json(lat)}, {"M", round12(M)}};

  const ScalarFieldND lap = laplacian(u);
  const double B = p.B(), e = p.epsilon();
  const LatticeScan scan = scan_lattice(u, true, [&](std::size_t i) {
    const double b = B * std::pow(u[i], e);
    return std::pair{lap[i] - b, std::abs(lap[i]) + b};
  });
  const FieldExtremum lo = [&] {
    FieldExtremum m{kInf, 0};
    for (std::size_t i : lat.nodes()) {
      if (u[i] < m.value) m = {u[i], i};
    }
    return m;
  }();
  r.details = {{"residual", scan.to_json(lat)}, {"min_u", round12(lo.value)}};
  if (lo.value < 0.0) {
    r.witness = {{"point", lattice_point_json(lat, lo.index)}};
    return hypotheses_not_met(r, lo.value, "u < 0 at a node; the bound needs u >= 0");
  }
  if (!scan.admissible()) {
    r.witness = {{"point", lattice_point_json(lat, scan.node)}};
    return hypotheses_not_met(r, scan.worst,
                              "discrete Delta u - B u^eps below -c h times its terms, c h = " + fmt12(scan.tol));
  }
  const double u0 = u[lat.center_index()];
  const FieldExtremum sup = sup_value(u);
  r.witness = {{"argmax", lattice_point_json(lat, sup.index)}, {"sup_u", round12(sup.value)},
               {"u_origin", round12(u0)}};
  r.tolerance = 0.0;
  if (u0 == 0.0) {
    r.margin = kInf;
    r.decide();
    r.add_note("vacuous: u(0) = 0");
    return r;
  }
  r.margin = sup.value - M;
  r.decide();
  return r;
}

// --- Subharmonicity chain -------------------------------------------------------------------

namespace {

// Interior nodes whose value and every stencil neighbour satisfy `ok`.
std::vector<char> stencil_support(const PolarGrid& g, const std::vector<char>& ok) {
  const int nr = g.n_r(), nt = g.n_t();
  std::vector<char> out(g.size(), 0);
  auto ring_ok = [&](int k) {
    for (int j = 0; j < nt; ++j) {
      if (!ok[g.index(k, j)]) return false;
    }
    return true;
  };
  out[0] = ok[0] && ring_ok(1) && ring_ok(2);
  for (int k = 1; k < nr; ++k) {
    const int lo = std::max(1, k - 2), hi = std::min(nr, k == 1 ? 4 : k + 2);
    for (int j = 0; j < nt; ++j) {
      bool good = (k > 2 || ok[0]);
      for (int kk = lo; kk <= hi && good; ++kk) {
        for (int dj = -2; dj <= 2 && good; ++dj) good = ok[g.index(kk, (j + dj + nt) % nt)];
      }
      out[g.index(k, j)] = good;
    }
  }
  return out;
}

ComplexField real_field(const PolarGrid& g, const std::vector<double>& v) {
  std::vector<cplx> c(v.begin(), v.end());
  return ComplexField(g, std::move(c));
}

// sup |dbar f - |f|^alpha| / sup |f|^alpha over tested nodes.
double relative_input_residual(const ComplexField& f, double alpha, const std::vector<char>& tested) {
  const ComplexField df = wirtinger_dbar(f);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!tested[i]) continue;
    const double a = std::pow(std::abs(f[i]), alpha);
    num = std::max(num, std::abs(df[i] - a));
    den = std::max(den, a);
  }
  return den > 0.0 ? num / den : 0.0;
}

struct StatementScan {
  double margin = kInf;
  std::size_t node = 0;
  bool used = false;

  void add(double lhs, double rhs, std::size_t i) {
    const double m = (lhs - rhs) / std::max(std::abs(lhs) + std::abs(rhs), 1e-300);
    if (m < margin) {
      margin = m;
      node = i;
    }
  }
};

}  // namespace

VerificationReport check_chain(const ComplexField& f, double alpha, double gamma, double floor) {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  require(gamma > 0.0, "gamma > 0", "gamma", gamma);
  require(floor >= 0.0, "floor >= 0", "floor", floor);
  const PolarGrid& g = f.grid();
  VerificationReport r;
  r.check_id = "chain.subharmonic";
  r.params = {{"alpha", round12(alpha)}, {"gamma", round12(gamma)}, {"floor", round12(floor)},
              {"radius", round12(g.radius())}, {"n_r", g.n_r()}, {"n_t", g.n_t()}};

  std::vector<char> ok(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) ok[i] = std::abs(f[i]) > floor;
  const std::vector<char> tested = stencil_support(g, ok);
  const auto n_tested = std::count(tested.begin(), tested.end(), 1);
  const std::size_t n_interior = g.size() - static_cast<std::size_t>(g.n_t());
  r.details["tested_nodes"] = n_tested;
  if (static_cast<double>(n_tested) < 0.1 * static_cast<double>(n_interior)) {
    return hypotheses_not_met(r, 0.0, "|f| > floor holds on the full stencil of fewer than 10% of interior nodes");
  }

  const double one_m = 1.0 - alpha;
  std::vector<double> rho(g.size()), zeta(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    rho[i] = std::pow(std::abs(f[i]), one_m);
    zeta[i] = std::pow(rho[i], gamma);
  }
  const PlanarGradient grho = gradient(real_field(g, rho));
  const ComplexField zf = real_field(g, zeta);
  const ComplexField lz = laplacian(zf);
  const PlanarGradient gz = gradient(zf);

  const double k = 2.0 * (gamma - 1.0) - alpha / one_m;
  const double threshold = (2.0 - alpha) / (2.0 - 2.0 * alpha);
  const bool use_a = gamma >= threshold;
  StatementScan a, b, c;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!tested[i]) continue;
    const double dz = lz[i].real();
    const double grad_rho2 = std::norm(cplx(grho.dx[i].real(), grho.dy[i].real()));
    const double grad_zeta2 = std::norm(cplx(gz.dx[i].real(), gz.dy[i].real()));
    if (use_a) a.add(dz, 2.0 * alpha * one_m * gamma * std::pow(rho[i], gamma - 2.0), i);
    b.add((2.0 / gamma) * std::pow(rho[i], 2.0 - gamma) * dz, 4.0 * alpha * one_m + k * grad_rho2, i);
    c.add(zeta[i] * dz,
          2.0 * alpha * one_m * gamma * std::pow(zeta[i], 2.0 - 2.0 / gamma) +
              k / (2.0 * gamma) * grad_zeta2,
          i);
  }
  a.used = use_a;
  b.used = c.used = true;

  const double rel = relative_input_residual(f, alpha, tested);
  r.details["relative_input_residual"] = round12(rel);
  if (rel > kMaxInputResidual) {
    return hypotheses_not_met(r, -rel, "input is not a discrete solution: relative dbar residual " + fmt12(rel) +
                                           " exceeds " + fmt12(kMaxInputResidual));
  }
  r.tolerance = kToleranceC * (g.h() + rel);
  auto statement_json = [&](const StatementScan& s) -> nlohmann::json {
    if (!s.used) return {{"skipped", true}};
    return {{"margin", round12(s.margin)},
            {"passed", s.margin > -r.tolerance},
            {"worst_point", complex_json(g.point(s.node))}};
  };
  r.details["a"] = statement_json(a);
  r.details["b"] = statement_json(b);
  r.details["c"] = statement_json(c);
  r.details["gradient_coefficient"] = round12(k);
  r.margin = std::min({use_a ? a.margin : kInf, b.margin, c.margin});
  const StatementScan& worst = (use_a && a.margin <= std::min(b.margin, c.margin)) ? a
                               : (b.margin <= c.margin)                          ? b
                                                                                 : c;
  r.witness = {{"point", complex_json(g.point(worst.node))}};
  r.decide();
  r.add_note("margins are (lhs - rhs)/(|lhs| + |rhs|); tolerance = c (h + relative dbar residual)");
  if (!use_a) {
    r.add_note("gamma < (2-alpha)/(2-2alpha): the coefficient 2(gamma-1) - alpha/(1-alpha) = " + fmt12(k) +
               " is negative, statement (a) skipped");
  }
  return r;
}

// --- Polar system -----------------------------------------------------------------------

VerificationReport check_polar_system(const ComplexField& f, double alpha, double floor) {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  const PolarGrid& g = f.grid();
  const int nr = g.n_r(), nt = g.n_t();
  VerificationReport r;
  r.check_id = "polar.system";
  r.params = {{"alpha", round12(alpha)}, {"floor", round12(floor)}, {"radius", round12(g.radius())},
              {"n_r", nr}, {"n_t", nt}};

  // Largest disk of rings on which |f| > floor.
  int k_max = -1;
  if (std::abs(f.origin()) > floor) {
    k_max = 0;
    for (int k = 1; k <= nr; ++k) {
      bool all = true;
      for (int j = 0; j < nt && all; ++j) all = std::abs(f.at(k, j)) > floor;
      if (!all) break;
      k_max = k;
    }
  }
  // Phase unwrapped outward along rays; a ring whose phase does not close up
  // winds around a zero of f.
  std::vector<double> psi(g.size(), 0.0);
  psi[0] = std::arg(f.origin());
  auto wrap = [](double d) { return std::remainder(d, 2.0 * std::numbers::pi); };
  int unwrapped = std::min(k_max, 0);
  for (int k = 1; k <= k_max; ++k) {
    for (int j = 0; j < nt; ++j) {
      const double prev = k == 1 ? psi[0] : psi[g.index(k - 1, j)];
      psi[g.index(k, j)] = prev + wrap(std::arg(f.at(k, j)) - prev);
    }
    bool closes = true;
    for (int j = 0; j < nt && closes; ++j) {
      closes = std::abs(psi[g.index(k, (j + 1) % nt)] - psi[g.index(k, j)]) <= std::numbers::pi / 2;
    }
    if (!closes) break;
    unwrapped = k;
  }
  r.details["nonvanishing_rings"] = k_max;
  r.details["unwrapped_rings"] = unwrapped;
  if (unwrapped < 4) {
    return hypotheses_not_met(r, 0.0,
                              k_max < 4 ? "|f| <= floor within 4 rings of the origin"
                                        : "phase unwrapping fails: f winds around a zero");
  }
  const int limit = unwrapped == nr ? nr - 1 : unwrapped - 2;

  const double one_m = 1.0 - alpha;
  std::vector<double> rho(g.size(), 0.0), phi(g.size(), 0.0);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.ring_of(i) > unwrapped) continue;
    rho[i] = std::pow(std::abs(f[i]), one_m);
    phi[i] = one_m * psi[i];
  }
  const PlanarGradient gr = gradient(real_field(g, rho));
  const PlanarGradient gp = gradient(real_field(g, phi));
  std::vector<char> tested(g.size(), 0);
  double e3 = 0.0, e4 = 0.0, e7 = 0.0;
  std::size_t worst = 0;
  double worst_rel = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.ring_of(i) > limit) continue;
    tested[i] = 1;
    const double rx = gr.dx[i].real(), ry = gr.dy[i].real();
    const double px = gp.dx[i].real(), py = gp.dy[i].real();
    const double arg_h = phi[i] / one_m;
    const double r3 = std::abs(rx - rho[i] * py - 2.0 * one_m * std::cos(arg_h)) / (2.0 * one_m);
    const double r4 = std::abs(ry + rho[i] * px + 2.0 * one_m * std::sin(arg_h)) / (2.0 * one_m);
    const double r7 = std::abs(rx * rx + ry * ry + (px * px + py * py) * rho[i] * rho[i] +
                               2.0 * (ry * px - rx * py) * rho[i] - 4.0 * one_m * one_m) /
                      (4.0 * one_m * one_m);
    e3 = std::max(e3, r3);
    e4 = std::max(e4, r4);
    e7 = std::max(e7, r7);
    if (std::max({r3, r4, r7}) > worst_rel) {
      worst_rel = std::max({r3, r4, r7});
      worst = i;
    }
  }
  const double rel = relative_input_residual(f, alpha, tested);
  r.tolerance = discretization_tolerance(g.h(), 1.0);
  r.margin = -std::max({e3, e4, e7});
  r.witness = {{"point", complex_json(g.point(worst))}};
  r.details["cos_residual"] = round12(e3);
  r.details["sin_residual"] = round12(e4);
  r.details["modulus_residual"] = round12(e7);
  r.details["tested_rings"] = limit;
  r.details["relative_input_residual"] = round12(rel);
  r.decide();
  r.add_note("tolerance c h; the input's own dbar residual is reported, not absorbed");
  r.add_note("cos and sin residuals relative to 2(1-alpha), modulus residual relative to 4(1-alpha)^2");
  return r;
}

// --- Maximum principle ---------------------------------------------------------------------------

VerificationReport probe_maximum_principle(const ScalarFieldND& u, const InequalityParams& p) {
  const BallLattice& lat = u.lattice();
  require(lat.n() == p.n(), "lattice dimension == n", "lattice n", lat.n());
  VerificationReport r;
  r.check_id = "maxprinciple.boundary";
  r.params = {{"inequality", p.to_json()}, {"lattice", lattice_json(lat)}};
  const FieldExtremum top = sup_value(u);
  const LatticeScan scan = scan_quotient_ineq(u, p, true);
  r.details = {{"residual", scan.to_json(lat)}};
  if (!(top.value > 0.0)) return hypotheses_not_met(r, 0.0, "no node with u > 0");
  if (!scan.admissible()) {
    r.witness = {{"point", lattice_point_json(lat, scan.node)}};
    return hypotheses_not_met(r, scan.worst, "discrete u Delta u - B|u|^(1+eps) - C|grad u|^2 below -c h times its terms, c h = " + fmt12(scan.tol));
  }
  const double rad = lat.radial(top.index);
  r.margin = rad - (lat.radius() - lat.h());
  r.tolerance = 0.0;
  r.witness = {{"argmax", lattice_point_json(lat, top.index)}, {"max_u", round12(top.value)},
               {"argmax_radial", round12(rad)}};
  r.decide();
  r.add_note("pass iff the argmax lies within h of the lattice boundary");
  return r;
}

// --- ODE ------------------------------------------------------------------------------------

double OdeTrajectory::min_u() const { return u.empty() ? 0.0 : *std::min_element(u.begin(), u.end()); }
double OdeTrajectory::sup_u() const { return u.empty() ? 0.0 : *std::max_element(u.begin(), u.end()); }

double OdeTrajectory::interpolate(double x) const {
  require(!t.empty(), "non-empty trajectory");
  require(x >= 0.0 && x <= t.back() + 1e-12, "0 <= x <= t_last", "x", x);
  if (t.size() == 1) return u[0];
  const std::size_t i = std::min(static_cast<std::size_t>(x / step), t.size() - 2);
  const double s = (x - t[i]) / step;
  const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * u[i] + h10 * step * du[i] + h01 * u[i + 1] + h11 * step * du[i + 1];
}

nlohmann::json OdeTrajectory::to_json() const {
  return {{"B", round12(B)},
          {"C", round12(C)},
          {"epsilon", round12(epsilon)},
          {"mode", mode == OdeMode::equality ? "equality" : "margin"},
          {"step", round12(step)},
          {"t_end", round12(t_end)},
          {"t_last", round12(t.empty() ? 0.0 : t.back())},
          {"samples", t.size()},
          {"u0", round12(u.empty() ? 0.0 : u.front())},
          {"du0", round12(du.empty() ? 0.0 : du.front())},
          {"min_u", round12(min_u())},
          {"sup_u", round12(sup_u())},
          {"blew_up", blew_up},
          {"positivity_fault", positivity_fault}};
}

OdeTrajectory integrate_ode_ineq(double B, double C, double epsilon, double u0, double du0,
                                 OdeMode mode, double step, double delta_end) {
  require(B > 0.0, "B > 0", "B", B);
  require(C >= -1.0 && C < 1.0, "-1 <= C < 1", "C", C);
  require(epsilon <= C, "epsilon <= C", "epsilon", epsilon);
  require(u0 > 0.0, "u0 > 0", "u0", u0);
  require(du0 >= 0.0, "du0 >= 0", "du0", du0);
  require(step > 0.0 && step < 1.0, "0 < step < 1", "step", step);
  require(delta_end > 0.0 && delta_end < 1.0, "0 < delta_end < 1", "delta_end", delta_end);

  OdeTrajectory tr;
  tr.B = B;
  tr.C = C;
  tr.epsilon = epsilon;
  tr.mode = mode;
  tr.t_end = 1.0 - delta_end;
  const long n = std::max(1L, std::lround(tr.t_end / step));
  tr.step = tr.t_end / static_cast<double>(n);
  const double mu = mode == OdeMode::margin ? kOdeMargin : 0.0;
  bool fault = false;
  auto accel = [&](double u, double v) {
    if (!(u > 0.0)) {
      fault = true;
      return 0.0;
    }
    return (B * std::pow(u, 1.0 + epsilon) + C * v * v) / u + mu;
  };
  double u = u0, v = du0;
  tr.t.push_back(0.0);
  tr.u.push_back(u);
  tr.du.push_back(v);
  const double h = tr.step;
  for (long i = 1; i <= n; ++i) {
    const double k1u = v, k1v = accel(u, v);
    const double k2u = v + 0.5 * h * k1v, k2v = accel(u + 0.5 * h * k1u, k2u);
    const double k3u = v + 0.5 * h * k2v, k3v = accel(u + 0.5 * h * k2u, k3u);
    const double k4u = v + h * k3v, k4v = accel(u + h * k3u, k4u);
    const double nu = u + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
    const double nv = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    if (fault || !(nu > 0.0)) {
      tr.positivity_fault = true;
      break;
    }
    if (!std::isfinite(nu) || !std::isfinite(nv) || nu > 1e12) {
      tr.blew_up = true;
      break;
    }
    u = nu;
    v = nv;
    tr.t.push_back(static_cast<double>(i) * h);
    tr.u.push_back(u);
    tr.du.push_back(v);
  }
  return tr;
}

double ode_order_ratio(double B, double C, double epsilon, double u0, double du0, double step,
                       double t_eval) {
  require(t_eval > 0.0 && t_eval < 1.0, "0 < t_eval < 1", "t_eval", t_eval);
  auto at = [&](double s) {
    const OdeTrajectory tr = integrate_ode_ineq(B, C, epsilon, u0, du0, OdeMode::equality, s, 1.0 - t_eval);
    if (tr.blew_up || tr.positivity_fault) throw NumericalFailure("trajectory stopped before t_eval");
    return tr.u.back();
  };
  const double a = at(step), b = at(step / 2), c = at(step / 4);
  return (a - b) / (b - c);
}

VerificationReport check_ode_theorem(const OdeTrajectory& tr) {
  require(!tr.u.empty(), "non-empty trajectory");
  const double M = ode_bound_m(tr.B, tr.C, tr.epsilon);
  VerificationReport r;
  r.check_id = "ode.blowup";
  r.params = {{"B", round12(tr.B)}, {"C", round12(tr.C)}, {"epsilon", round12(tr.epsilon)},
              {"u0", round12(tr.u.front())}, {"du0", round12(tr.du.front())},
              {"t_end", round12(tr.t_end)}, {"step", round12(tr.step)}};
  const double mn = tr.min_u(), sup = tr.sup_u();
  // Lower bound from the proof: u(y) >= (u0^(1-C) + (1-C) B M^(eps-C) y^2 / 2)^(1/(1-C)).
  const double a = std::pow(tr.u.front(), 1.0 - tr.C);
  const double q = (1.0 - tr.C) * tr.B * std::pow(M, tr.epsilon - tr.C) / 2.0;
  auto proof_bound = [&](double y) { return std::pow(a + q * y * y, 1.0 / (1.0 - tr.C)); };
  double proof_gap = kInf;
  // The bound is derived under u <= M, so it is compared only on those samples.
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    if (tr.u[i] > M) continue;
    proof_gap = std::min(proof_gap, (tr.u[i] - proof_bound(tr.t[i])) / std::max(1.0, tr.u[i]));
  }
  const std::size_t arg = static_cast<std::size_t>(std::max_element(tr.u.begin(), tr.u.end()) - tr.u.begin());
  r.margin = std::min(mn, sup - M);
  r.tolerance = 0.0;
  r.witness = {{"t_of_sup", round12(tr.t[arg])}, {"sup_u", round12(sup)}};
  r.details = {{"M", round12(M)},
               {"min_u", round12(mn)},
               {"sup_u", round12(sup)},
               {"stays_positive", mn > 0.0 && !tr.positivity_fault},
               {"sup_exceeds_M", sup > M},
               {"proof_bound_at_t_last", round12(proof_bound(tr.t.back()))},
               {"proof_bound_limit_t_to_1", round12(proof_bound(1.0))},
               {"min_relative_gap_to_proof_bound", round12(proof_gap)},
               {"trajectory", tr.to_json()}};
  r.decide();
  if (tr.positivity_fault) {
    r.status = CheckStatus::failed;
    r.add_note("u reached 0 during integration: discretization fault (exact solutions stay positive)");
  }
  if (sup <= M && proof_bound(1.0) > M) {
    r.add_note("sup over [0,1) is approached only as t -> 1; on [0, " + fmt12(tr.t.back()) +
               "] the trajectory stays below M");
  }
  return r;
}

ScalarFieldND embed_trajectory(const OdeTrajectory& tr, const BallLattice& lat) {
  require(lat.n() == 1, "one-dimensional lattice", "n", lat.n());
  require(!tr.du.empty() && tr.du.front() == 0.0, "du0 = 0 for the even extension", "du0",
          tr.du.empty() ? 0.0 : tr.du.front());
  require(lat.radius() <= tr.t.back() + 1e-12, "lattice radius <= last trajectory time", "radius", lat.radius());
  const double c = lat.center().empty() ? 0.0 : lat.center()[0];
  return ScalarFieldND::sample(lat, [&](std::span<const double> x) { return tr.interpolate(std::abs(x[0] - c)); });
}

// --- Divergence bound -----------------------------------------------------------------------

VerificationReport check_divergence_bound(const ScalarFieldND& u, const InequalityParams& p) {
  require(p.epsilon() <= p.C(), "epsilon <= C", "epsilon", p.epsilon());
  const BallLattice& lat = u.lattice();
  require(lat.n() == p.n(), "lattice dimension == n", "lattice n", lat.n());
  const double M = divergence_bound_m(p);
  VerificationReport r;
  r.check_id = "divergence.bound";
  r.params = {{"inequality", p.to_json()}, {"lattice", lattice_json(lat)}, {"M", round12(M)}};
  const LatticeScan scan = scan_quotient_ineq(u, p, false);
  r.details = {{"residual", scan.to_json(lat)}};
  if (!scan.admissible()) {
    r.witness = {{"point", lattice_point_json(lat, scan.node)}};
    return hypotheses_not_met(r, scan.worst, "discrete u Delta u - B|u|^(1+eps) - C|grad u|^2 below -c h times its terms, c h = " + fmt12(scan.tol));
  }
  double mn = kInf;
  for (std::size_t i : lat.nodes()) mn = std::min(mn, u[i]);
  const FieldExtremum sup = sup_value(u);
  // A violation needs min u > 0 and sup u <= M at once.
  r.margin = std::max(sup.value - M, -mn);
  r.tolerance = 1e-15 * std::max(1.0, M);
  r.witness = {{"argmax", lattice_point_json(lat, sup.index)}, {"sup_u", round12(sup.value)},
               {"min_u", round12(mn)}};
  r.details["theorem_form"] = !(mn > 0.0) || sup.value > M;
  r.details["corollary_form"] = sup.value > M || mn <= 0.0;
  r.decide();
  return r;
}

VerificationReport adversarial_divergence_search(const InequalityParams& p, std::uint64_t seed,
                                                 int n_trials, int K) {
  require(p.epsilon() <= p.C(), "epsilon <= C", "epsilon", p.epsilon());
  require(n_trials >= 1, "n_trials >= 1", "n_trials", n_trials);
  const double M = divergence_bound_m(p);
  const BallLattice lat(p.n(), K);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const char* families[] = {"constant", "quadratic", "exponential", "cosh-product"};
  int counterexamples = 0;
  double closest = kInf;  // smallest relative violation beyond tolerance
  nlohmann::json closest_json = nullptr;
  for (int trial = 0; trial < n_trials; ++trial) {
    const int fam = trial % 4;
    std::vector<double> a(static_cast<std::size_t>(p.n()));
    for (double& v : a) v = 4.0 * U(rng) - 2.0;
    const double c0 = 0.05 + U(rng), amp = 3.0 * U(rng);
    auto raw = [&](std::span<const double> x) {
      double s = 0.0, r2 = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) {
        s += a[i] * x[i];
        r2 += x[i] * x[i];
      }
      switch (fam) {
        case 0: return 1.0;
        case 1: return c0 + amp * r2;
        case 2: return std::exp(s);
        default: {
          double prod = 1.0;
          for (std::size_t i = 0; i < x.size(); ++i) prod *= std::cosh(a[i] * x[i]);
          return c0 + prod;
        }
      }
    };
    const ScalarFieldND g = ScalarFieldND::sample(lat, raw);
    const double top = sup_value(g).value;
    const double level = M * (0.2 + 0.8 * U(rng)) / top;
    std::vector<double> vals(g.values().begin(), g.values().end());
    for (double& v : vals) v *= level;
    const ScalarFieldND u(lat, std::move(vals));
    const LatticeScan scan = scan_quotient_ineq(u, p, false);
    if (scan.admissible()) ++counterexamples;
    if (-(scan.worst + scan.tol) < closest) {
      closest = -(scan.worst + scan.tol);
      closest_json = {{"trial", trial}, {"family", families[fam]}, {"sup_u", round12(sup_value(u).value)},
                      {"residual", scan.to_json(lat)}};
    }
  }
  VerificationReport r;
  r.check_id = "divergence.adversarial";
  r.params = {{"inequality", p.to_json()}, {"lattice", lattice_json(lat)}, {"M", round12(M)},
              {"seed", seed}, {"trials", n_trials}};
  r.margin = closest;
  r.tolerance = 0.0;
  r.witness = closest_json;
  r.details = {{"counterexamples", counterexamples}};
  r.decide();
  if (counterexamples > 0) r.status = CheckStatus::failed;
  r.add_note("strictly positive candidates with sup u <= M; each must violate the residual tolerance");
  return r;
}

// --- Kobayashi experiment ----------------------------------------------------------------------

double kobayashi_lower_bound() { return 3.0 / (4.0 * std::numbers::sqrt2); }
double kobayashi_upper_bound_at_zero() { return 0.5; }

VerificationReport kobayashi_experiment(double alpha, cplx b, const KobayashiOptions& opt) {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  const double S = s_alpha(alpha);
  require(std::abs(b) < S, "|b| < S_alpha", "|b|", std::abs(b));
  const NormalFormInverse inv = lemma33_inverse(opt.z1, opt.r);
  const VerificationReport normal_form = inv.certificate();

  VerificationReport r;
  r.check_id = "kobayashi.contradiction";
  r.params = {{"alpha", round12(alpha)}, {"b", complex_json(b)}, {"r", round12(opt.r)},
              {"z1_degree", opt.z1.degree()}, {"S", round12(S)}};
  r.details["bounds"] = {{"lower", round12(kobayashi_lower_bound())},
                         {"upper_at_b0", round12(kobayashi_upper_bound_at_zero())}};
  r.details["normal_form"] = normal_form.to_json();
  r.tolerance = 0.0;

  if (b == cplx(0.0)) {
    const JDiskOutcome out = build_jdisk(ComplexField::constant(opt.picard.grid, 0.0), alpha, S);
    r.margin = S - out.sup_abs;
    r.details["jdisk"] = out.report.to_json();
    r.decide();
    r.add_note("b = 0: Z(z) = (z, 0) maps D_2 into Omega_S, so the pseudonorm at (0,0) is at most 1/2");
  } else {
    PicardConfig cfg = opt.picard;
    cfg.alpha = alpha;
    cfg.b = b;
    const DbarSolution sol = solve_picard(cfg);
    const JDiskOutcome out = build_jdisk(sol, S);
    nlohmann::json summary = sol.summary_json();
    summary.erase("near_zero_nodes");
    r.details["picard"] = summary;
    r.details["jdisk"] = out.report.to_json();
    r.details["sup_abs"] = round12(sol.sup_abs);
    r.margin = sol.sup_abs - S;
    r.witness = {{"sup_point", complex_json(sol.field.grid().point(sol.sup_node))},
                 {"sup_abs", round12(sol.sup_abs)}};
    r.decide();
    if (!sol.converged) {
      r.status = CheckStatus::inconclusive;
      r.add_note("Picard did not converge (" + sol.stop_reason + "); not counted as a pass");
    } else if (r.passed()) {
      r.add_note("contradiction reproduced: sup|f| > S, so the normalized disk leaves Omega_S");
    }
  }
  if (!normal_form.passed()) {
    r.status = CheckStatus::failed;
    r.add_note("normal-form inverse certificate failed");
  }
  r.add_note("only constructed candidate disks are checked; the theorem bounds the infimum over all J-holomorphic disks");
  r.add_note("the failure of upper semicontinuity is a statement about that infimum and is not reproduced numerically");
  return r;
}

}  // namespace dbarlab
