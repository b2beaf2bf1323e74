#include "dbarlab/dbar.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "dbarlab/cauchy.hpp"
#include "dbarlab/error.hpp"
#include "dbarlab/io.hpp"

namespace dbarlab {

void PicardConfig::validate() const {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  require(std::isfinite(b.real()) && std::isfinite(b.imag()), "finite b", "|b|", std::abs(b));
  require(max_iter >= 1, "max_iter >= 1", "max_iter", max_iter);
  require(tol > 0.0, "tol > 0", "tol", tol);
  require(divergence_cap > std::abs(b), "divergence_cap > |b|", "divergence_cap", divergence_cap);
  require(relaxation > 0.0 && relaxation <= 1.0, "0 < relaxation <= 1", "relaxation", relaxation);
  require(min_relaxation > 0.0 && min_relaxation <= relaxation, "0 < min_relaxation <= relaxation",
          "min_relaxation", min_relaxation);
  require(burn_in >= 0, "burn_in >= 0", "burn_in", burn_in);
  require(monotone_slack >= 1.0, "monotone_slack >= 1", "monotone_slack", monotone_slack);
}

nlohmann::json PicardConfig::to_json() const {
  return {{"alpha", round12(alpha)},
          {"b", complex_json(b)},
          {"max_iter", max_iter},
          {"tol", round12(tol)},
          {"radius", round12(grid.radius())},
          {"n_r", grid.n_r()},
          {"n_t", grid.n_t()},
          {"divergence_cap", round12(divergence_cap)},
          {"relaxation", round12(relaxation)},
          {"adaptive_relaxation", adaptive_relaxation},
          {"min_relaxation", round12(min_relaxation)},
          {"burn_in", burn_in},
          {"monotone_slack", round12(monotone_slack)}};
}

nlohmann::json DbarSolution::summary_json() const {
  return {{"config", config.to_json()},
          {"converged", converged},
          {"monotone", monotone},
          {"diverged", diverged},
          {"stop_reason", stop_reason},
          {"iterations", iterations},
          {"residual_sup", round12(residual_sup)},
          {"sup_abs", round12(sup_abs)},
          {"sup_point", complex_json(field.grid().point(sup_node))},
          {"origin_value", complex_json(field.origin())},
          {"near_zero_threshold", round12(10.0 * config.tol)},
          {"near_zero_count", near_zero_nodes.size()},
          {"near_zero_nodes", near_zero_nodes}};
}

std::string DbarSolution::trace_jsonl() const {
  std::ostringstream os;
  for (const auto& s : trace) {
    const nlohmann::json j = {{"iteration", s.iteration},
                              {"sup_change", round12(s.sup_change)},
                              {"residual", round12(s.residual)},
                              {"relaxation", round12(s.relaxation)}};
    os << j.dump() << '\n';
  }
  return os.str();
}

namespace {

ComplexField power_abs(const ComplexField& f, double alpha) {
  return f.map([alpha](cplx, cplx v) { return cplx(std::pow(std::abs(v), alpha)); });
}

}  // namespace

double dbar_residual_sup(const ComplexField& f, double alpha) {
  const ComplexField r = wirtinger_dbar(f) - power_abs(f, alpha);
  const PolarGrid& g = f.grid();
  return sup_abs(r, [&g](std::size_t i) { return g.is_interior(i); }).value;
}

DbarSolution solve_picard(const PicardConfig& cfg) {
  cfg.validate();
  const PolarGrid& grid = cfg.grid;
  const CauchyTransform T(grid);
  std::vector<cplx> f(grid.size(), cfg.b);
  DbarSolution sol{ComplexField(grid, f), 0.0, 0, false, true, false, "", 0.0, 0, {}, {}, cfg};

  double w = cfg.relaxation;
  double min_change = std::numeric_limits<double>::infinity();
  double prev_change = std::numeric_limits<double>::infinity();
  double change = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= cfg.max_iter; ++it) {
    const ComplexField tg = T.apply(power_abs(ComplexField(grid, f), cfg.alpha));
    const cplx t0 = tg.origin();
    change = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i) {
      change = std::max(change, std::abs(cfg.b + (tg[i] - t0) - f[i]));
    }
    sol.iterations = it;
    if (change < cfg.tol) {
      sol.trace.push_back({it, change, dbar_residual_sup(ComplexField(grid, f), cfg.alpha), w});
      sol.stop_reason = "tolerance";
      break;
    }
    if (cfg.adaptive_relaxation) {
      w = change > prev_change ? std::max(0.5 * w, cfg.min_relaxation)
                               : std::min(1.25 * w, cfg.relaxation);
    }
    // The origin stays pinned to b exactly.
    double sup = std::abs(cfg.b);
    for (std::size_t i = 1; i < f.size(); ++i) {
      f[i] = (1.0 - w) * f[i] + w * (cfg.b + (tg[i] - t0));
      sup = std::max(sup, std::abs(f[i]));
    }
    if (sup > cfg.divergence_cap || !std::isfinite(sup)) {
      sol.diverged = true;
      sol.stop_reason = "divergence_cap";
      sol.trace.push_back({it, change, std::numeric_limits<double>::quiet_NaN(), w});
      break;
    }
    sol.trace.push_back({it, change, dbar_residual_sup(ComplexField(grid, f), cfg.alpha), w});
    if (it > cfg.burn_in && change > cfg.monotone_slack * min_change) sol.monotone = false;
    min_change = std::min(min_change, change);
    prev_change = change;
  }
  if (sol.stop_reason.empty()) sol.stop_reason = "max_iter";
  if (sol.diverged) {
    // Non-finite entries cannot be stored in a field; replace them with b.
    for (auto& v : f) {
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) v = cfg.b;
    }
  }
  if (!sol.monotone) sol.stop_reason += "; successive changes rose after burn-in";
  sol.field = ComplexField(grid, std::move(f));
  sol.converged = !sol.diverged && sol.monotone && change < cfg.tol;
  sol.residual_sup = dbar_residual_sup(sol.field, cfg.alpha);
  const FieldExtremum s = sup_abs(sol.field);
  sol.sup_abs = s.value;
  sol.sup_node = s.index;
  for (std::size_t i = 0; i < sol.field.size(); ++i) {
    if (std::abs(sol.field[i]) < 10.0 * cfg.tol) sol.near_zero_nodes.push_back(i);
  }
  return sol;
}

// --- J-holomorphic disks ------------------------------------------------------------

namespace {

struct SystemResiduals {
  std::vector<cplx> system;  // R2 + i R1
  std::vector<cplx> dbar;    // 2 (dbar f - |f|^alpha)
};

SystemResiduals system_residuals(const ComplexField& f, double alpha) {
  const ComplexField u = f.map([](cplx, cplx v) { return cplx(v.real()); });
  const ComplexField v = f.map([](cplx, cplx w) { return cplx(w.imag()); });
  const PlanarGradient gu = gradient(u);
  const PlanarGradient gv = gradient(v);
  const ComplexField df = wirtinger_dbar(f);
  SystemResiduals out;
  out.system.resize(f.size());
  out.dbar.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double lam = -2.0 * std::pow(std::abs(f[i]), alpha);
    const double r1 = gu.dy[i].real() + gv.dx[i].real();
    const double r2 = gu.dx[i].real() + lam - gv.dy[i].real();
    out.system[i] = cplx(r2, r1);
    out.dbar[i] = 2.0 * (df[i] - std::pow(std::abs(f[i]), alpha));
  }
  return out;
}

double interior_sup(const PolarGrid& g, std::span<const cplx> v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (g.is_interior(i)) s = std::max(s, std::abs(v[i]));
  }
  return s;
}

}  // namespace

JDiskOutcome build_jdisk(const ComplexField& f, double alpha, double S) {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  require(S > 0.0, "S > 0", "S", S);
  const PolarGrid& g = f.grid();
  require(g.radius() < 2.0, "domain radius < 2 so that |Z1| < 2", "radius", g.radius());
  JDiskOutcome out;
  out.S = S;
  const FieldExtremum s = sup_abs(f);
  out.sup_abs = s.value;
  ComplexField z1 = ComplexField::sample(g, [](cplx z) { return z; });
  const ComplexField z1_dbar = wirtinger_dbar(z1);
  out.z1_dbar_residual = interior_sup(g, z1_dbar.values());
  out.system_residual = interior_sup(g, system_residuals(f, alpha).system);
  out.flagged = s.value >= S;

  VerificationReport& r = out.report;
  r.check_id = "jdisk.membership";
  r.params = {{"alpha", round12(alpha)}, {"S", round12(S)}, {"radius", round12(g.radius())},
              {"n_r", g.n_r()}, {"n_t", g.n_t()}};
  r.margin = S - s.value;
  r.tolerance = 0.0;
  r.witness = {{"node", s.index}, {"point", complex_json(g.point(s.index))},
               {"abs_value", round12(s.value)}};
  r.details = {{"system_residual_sup", round12(out.system_residual)},
               {"z1_dbar_residual_sup", round12(out.z1_dbar_residual)}};
  r.decide();
  if (out.flagged) {
    r.add_note("sup|f| >= S: Z(z) = (z, f(z)) leaves the bidisk D_2 x D_S");
  } else {
    out.disk = JDisk{std::move(z1), f, S};
  }
  return out;
}

JDiskOutcome build_jdisk(const DbarSolution& f, double S) {
  JDiskOutcome out = build_jdisk(f.field, f.config.alpha, S);
  if (!f.converged) {
    out.disk.reset();
    out.report.status = CheckStatus::inconclusive;
    out.report.add_note("Picard solution did not converge (" + f.stop_reason + ")");
  }
  return out;
}

VerificationReport check_eq9_equivalence(const ComplexField& f, double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  const PolarGrid& g = f.grid();
  const SystemResiduals res = system_residuals(f, alpha);
  double discrepancy = 0.0, scale = 1.0;
  std::size_t worst = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const double d = std::abs(res.system[i] - res.dbar[i]);
    scale = std::max({scale, std::abs(res.system[i]), std::abs(res.dbar[i])});
    if (d > discrepancy) {
      discrepancy = d;
      worst = i;
    }
  }
  VerificationReport r;
  r.check_id = "system.equivalence";
  r.params = {{"alpha", round12(alpha)}, {"radius", round12(g.radius())}, {"n_r", g.n_r()},
              {"n_t", g.n_t()}};
  r.margin = -discrepancy;
  r.tolerance = 1e-10 * scale;
  r.witness = {{"node", worst}, {"point", complex_json(g.point(worst))}};
  r.details = {{"max_discrepancy", round12(discrepancy)},
               {"system_residual_sup", round12(interior_sup(g, res.system))},
               {"dbar_residual_sup", round12(0.5 * interior_sup(g, res.dbar))}};
  r.decide();
  r.add_note("R2 + i R1 = 2 (dbar f - |f|^alpha) holds algebraically; tolerance is relative to the largest residual");
  return r;
}

}  // namespace dbarlab
