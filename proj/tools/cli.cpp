#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "dbarlab/dbar.hpp"
#include "dbarlab/error.hpp"
#include "dbarlab/explicit.hpp"
#include "dbarlab/holo.hpp"
#include "dbarlab/io.hpp"
#include "dbarlab/params.hpp"
#include "dbarlab/verify.hpp"

namespace dbarlab::cli {

namespace {

std::string constants_text(const std::vector<ConstantsReport>& rows, Format f) {
  if (f == Format::json) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rows) a.push_back(r.to_json());
    return a.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "name,value\n";
  for (const auto& r : rows) os << r.name << ',' << fmt12(r.value) << '\n';
  return os.str();
}

const char* extension(Format f) { return f == Format::json ? "json" : "csv"; }

VerificationReport inconclusive_solve(const DbarSolution& s, std::string check_id) {
  VerificationReport r;
  r.check_id = std::move(check_id);
  r.status = CheckStatus::inconclusive;
  r.params = s.config.to_json();
  r.details = {{"stop_reason", s.stop_reason}, {"iterations", s.iterations}};
  r.add_note("Picard solution did not converge (" + s.stop_reason + ")");
  return r;
}

PicardConfig picard_config(double alpha, cplx b, int n) {
  PicardConfig cfg;
  cfg.alpha = alpha;
  cfg.b = b;
  cfg.grid = PolarGrid(1.0, n, n);
  return cfg;
}

std::vector<VerificationReport> suite_chain(const VerifyOptions& o) {
  auto checks = [&](const ComplexField& f) -> std::vector<VerificationReport> {
    return {check_chain(f, o.alpha, o.gamma), check_polar_system(f, o.alpha)};
  };
  if (o.source.value_or("explicit") == "explicit") {
    require(o.b_im == 0.0, "real b for the explicit disk", "b_im", o.b_im);
    return checks(example44_disk(o.b, o.alpha, PolarGrid(o.radius, o.grid, o.grid)).z2);
  }
  const DbarSolution s = solve_picard(picard_config(o.alpha, cplx(o.b, o.b_im), o.grid));
  if (!s.converged) return {inconclusive_solve(s, "chain.subharmonic"), inconclusive_solve(s, "polar.system")};
  return checks(s.field);
}

std::vector<VerificationReport> suite_nss(const VerifyOptions& o) {
  const std::string family = o.family.value_or("example22");
  if (family == "example22") {
    const InequalityParams p({.B = o.B.value_or(2.0), .epsilon = o.eps.value_or(0.5), .n = 1});
    const PiecewisePower u = example22_family(p.B(), p.epsilon(), o.c1, o.c2);
    const BallLattice lat(1, o.K.value_or(256));
    return {check_no_small_solutions(
        ScalarFieldND::sample(lat, [&](std::span<const double> x) { return u.value(x[0]); }), p)};
  }
  const InequalityParams p({.B = o.B.value_or(1.0), .epsilon = o.eps.value_or(0.0), .n = o.n.value_or(2)});
  const BallLattice lat(p.n(), o.K.value_or(24));
  if (family == "radial") {
    const RadialComparison v = radial_comparison(p);
    return {check_no_small_solutions(
        ScalarFieldND::sample(lat, [&](std::span<const double> x) { return v.value(x); }), p)};
  }
  return {check_no_small_solutions(ScalarFieldND::sample(lat, [](std::span<const double>) { return 0.0; }), p)};
}

std::vector<VerificationReport> suite_maxprinciple(const VerifyOptions& o) {
  const std::string family = o.family.value_or("radial");
  if (family == "example22") {
    const InequalityParams p({.B = o.B.value_or(2.0), .epsilon = o.eps.value_or(0.5), .n = 1});
    const PiecewisePower u = example22_family(p.B(), p.epsilon(), o.c1, o.c2);
    const BallLattice lat(1, o.K.value_or(64), 0.5, {0.5});
    return {probe_maximum_principle(
        ScalarFieldND::sample(lat, [&](std::span<const double> x) { return u.value(x[0]); }), p)};
  }
  require(family == "radial", "family radial or example22 for maxprinciple");
  const InequalityParams p({.B = o.B.value_or(1.0), .epsilon = o.eps.value_or(0.0), .n = o.n.value_or(2)});
  const RadialComparison v = radial_comparison(p);
  const BallLattice lat(p.n(), o.K.value_or(24));
  return {probe_maximum_principle(
      ScalarFieldND::sample(lat, [&](std::span<const double> x) { return v.value(x); }), p)};
}

std::vector<VerificationReport> suite_ode(const VerifyOptions& o, std::uint64_t seed) {
  const double B = o.B.value_or(2.0), C = o.C.value_or(0.0), eps = o.eps.value_or(0.0);
  const OdeTrajectory tr = integrate_ode_ineq(B, C, eps, o.u0, o.du0);
  std::vector<VerificationReport> out{check_ode_theorem(tr)};
  const InequalityParams p1({.B = B, .C = C, .epsilon = eps, .n = 1});
  if (o.du0 == 0.0 && !tr.blew_up && !tr.positivity_fault) {
    const double radius = tr.t.back();
    const BallLattice lat(1, static_cast<int>(std::lround(radius / 1e-3)), radius);
    out.push_back(check_divergence_bound(embed_trajectory(tr, lat), p1));
  }
  const InequalityParams pn({.B = B, .C = C, .epsilon = eps, .n = o.n.value_or(2)});
  out.push_back(adversarial_divergence_search(pn, seed, o.trials, o.K.value_or(24)));
  return out;
}

std::vector<VerificationReport> suite_kobayashi(const VerifyOptions& o) {
  KobayashiOptions k;
  k.r = o.r;
  k.z1 = PowerSeries(std::vector<cplx>(o.z1.begin(), o.z1.end()));
  return {kobayashi_experiment(o.alpha, cplx(o.b, o.b_im), k)};
}

std::vector<VerificationReport> suite_inverse(const VerifyOptions& o) {
  const PowerSeries z1(std::vector<cplx>(o.z1.begin(), o.z1.end()));
  return {lemma33_inverse(z1, o.r).certificate()};
}

nlohmann::json solve_summary(const DbarSolution& s) {
  nlohmann::json j = s.summary_json();
  j.erase("near_zero_nodes");
  return j;
}

}  // namespace

int exit_code_for(const std::vector<VerificationReport>& reports, bool strict) {
  bool hypotheses = false;
  for (const auto& r : reports) {
    if (r.status == CheckStatus::hypotheses_not_met) {
      hypotheses = true;
    } else if (!r.passed()) {
      return kExitFailure;
    }
  }
  return strict && hypotheses ? kExitHypotheses : kExitPass;
}

CommandResult cmd_constants(const ConstantsOptions& o, const GlobalOptions& g) {
  std::vector<ConstantsReport> rows;
  if (!o.any_selected()) {
    const InequalityParams p(
        {.alpha = o.alpha, .gamma = o.gamma, .B = o.B, .C = o.C, .epsilon = o.eps, .n = o.n});
    rows = constants_table(p, o.r);
  } else {
    const nlohmann::json a = {{"alpha", round12(o.alpha)}};
    if (o.salpha) rows.push_back({"S_alpha", s_alpha(o.alpha), a, "no_small_solutions.s_alpha"});
    if (o.gamma_star) rows.push_back({"gamma_star", gamma_star(o.alpha), a, "no_small_solutions.gamma_star"});
    if (o.kappa) rows.push_back({"kappa_n", kappa_n(o.n), {{"n", o.n}}, "ball.kappa_n"});
    if (o.m_comparison) {
      rows.push_back({"M_comparison", comparison_bound_m(o.n, o.B, o.eps),
                      {{"n", o.n}, {"B", round12(o.B)}, {"epsilon", round12(o.eps)}}, "comparison.m"});
    }
    if (o.m_div) {
      rows.push_back({"M_divergence", divergence_bound_m(o.n, o.B, o.C, o.eps),
                      {{"n", o.n}, {"B", round12(o.B)}, {"C", round12(o.C)}, {"epsilon", round12(o.eps)}},
                      "divergence.m"});
    }
    if (o.m_ode) {
      rows.push_back({"M_ode", ode_bound_m(o.B, o.C, o.eps),
                      {{"B", round12(o.B)}, {"C", round12(o.C)}, {"epsilon", round12(o.eps)}}, "ode.m"});
    }
    if (o.inverse_radii) {
      const InverseRadii ir = inverse_radii(o.r);
      rows.push_back({"eta", ir.eta, {{"r", round12(o.r)}}, "inverse.eta"});
      rows.push_back({"s", ir.s, {{"r", round12(o.r)}}, "inverse.s"});
    }
  }
  CommandResult res;
  res.stdout_text = constants_text(rows, g.format);
  res.files[std::string("constants.") + extension(g.format)] = res.stdout_text;
  return res;
}

CommandResult cmd_solve(const SolveOptions& o, const GlobalOptions& g) {
  PicardConfig cfg;
  cfg.alpha = o.alpha;
  cfg.b = cplx(o.b, o.b_im);
  cfg.grid = PolarGrid(o.radius, o.n_r, o.n_t);
  cfg.max_iter = o.max_iter;
  cfg.tol = o.tol;
  const DbarSolution s = solve_picard(cfg);
  const nlohmann::json summary = solve_summary(s);

  CommandResult res;
  res.exit_code = s.converged ? kExitPass : kExitFailure;
  if (g.format == Format::json) {
    res.stdout_text = summary.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "key,value\n"
       << "converged," << (s.converged ? "true" : "false") << '\n'
       << "stop_reason," << s.stop_reason << '\n'
       << "iterations," << s.iterations << '\n'
       << "residual_sup," << fmt12(s.residual_sup) << '\n'
       << "sup_abs," << fmt12(s.sup_abs) << '\n'
       << "S_alpha," << fmt12(s_alpha(o.alpha)) << '\n';
    res.stdout_text = os.str();
  }
  res.files["field.csv"] = to_csv(s.field);
  res.files["trace.jsonl"] = s.trace_jsonl();
  res.files["summary.json"] = s.summary_json().dump(2) + "\n";
  return res;
}

std::vector<VerificationReport> run_suite(const std::string& suite, const VerifyOptions& o,
                                          const GlobalOptions& g) {
  if (suite == "chain") return suite_chain(o);
  if (suite == "nss") return suite_nss(o);
  if (suite == "maxprinciple") return suite_maxprinciple(o);
  if (suite == "ode") return suite_ode(o, g.seed);
  if (suite == "kobayashi") return suite_kobayashi(o);
  if (suite == "inverse") return suite_inverse(o);
  throw InvalidParameter("unknown suite '" + suite + "'");
}

CommandResult cmd_verify(const VerifyOptions& o, const GlobalOptions& g) {
  std::vector<VerificationReport> reports;
  if (o.suite == "all") {
    for (const auto& s : kSuites) {
      if (s == "all") continue;
      auto part = run_suite(s, o, g);
      reports.insert(reports.end(), part.begin(), part.end());
    }
  } else {
    reports = run_suite(o.suite, o, g);
  }
  nlohmann::json doc = {{"suite", o.suite}, {"seed", g.seed}, {"reports", nlohmann::json::array()}};
  for (const auto& r : reports) doc["reports"].push_back(r.to_json());
  const std::string json_text = doc.dump(2) + "\n";
  const std::string csv_text = summary_csv(reports);

  CommandResult res;
  res.exit_code = exit_code_for(reports, g.strict);
  res.stdout_text = g.format == Format::json ? json_text : csv_text;
  res.files["verify_" + o.suite + ".json"] = json_text;
  res.files["verify_" + o.suite + ".csv"] = csv_text;
  return res;
}

int run(int argc, char** argv) {
  CLI::App app{"Numerical experiments for the equation df/dzbar = |f|^alpha"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_flag("--strict", g.strict, "Treat hypotheses-not-met as a failure (exit 3)");
  app.add_option("--seed", g.seed, "Seed for randomized checks");
  app.add_option("--format", g.format, "Output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::csv}, {"json", Format::json}}));
  app.add_option("--out", g.out, "Output directory (default: $DBARLAB_OUT_DIR)");

  ConstantsOptions co;
  auto* constants = app.add_subcommand("constants", "Print the constants of the theory");
  constants->add_flag("--salpha", co.salpha, "S_alpha");
  constants->add_flag("--kappa", co.kappa, "kappa_n = 1/(n(n+1))");
  constants->add_flag("--m-comparison", co.m_comparison, "no-small-solutions bound M");
  constants->add_flag("--m-div", co.m_div, "divergence-form bound M");
  constants->add_flag("--m-ode", co.m_ode, "ODE bound M");
  constants->add_flag("--gamma-star", co.gamma_star, "(2-alpha)/(2-2alpha)");
  constants->add_flag("--inverse-radii", co.inverse_radii, "eta and s for the normal-form inverse");
  constants->add_option("--alpha", co.alpha);
  constants->add_option("--gamma", co.gamma);
  constants->add_option("--n", co.n);
  constants->add_option("--B", co.B);
  constants->add_option("--C", co.C);
  constants->add_option("--eps", co.eps);
  constants->add_option("--r", co.r);

  SolveOptions so;
  auto* solve = app.add_subcommand("solve", "Solve df/dzbar = |f|^alpha, f(0) = b by Picard iteration");
  solve->add_option("--alpha", so.alpha);
  solve->add_option("--b", so.b, "Real part of f(0)");
  solve->add_option("--b-im", so.b_im, "Imaginary part of f(0)");
  solve->add_option("--radius", so.radius);
  solve->add_option("--n-r", so.n_r);
  solve->add_option("--n-t", so.n_t);
  solve->add_option("--max-iter", so.max_iter);
  solve->add_option("--tol", so.tol);

  VerifyOptions vo;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", vo.suite)->check(CLI::IsMember(kSuites));
  verify->add_option("--alpha", vo.alpha);
  verify->add_option("--b", vo.b);
  verify->add_option("--b-im", vo.b_im);
  verify->add_option("--r", vo.r);
  verify->add_option("--z1", vo.z1, "Real coefficients of Z1, constant term first")->delimiter(',');
  verify->add_option("--family", vo.family)->check(CLI::IsMember({"example22", "radial", "zero"}));
  verify->add_option("--source", vo.source, "Field for the chain suite")->check(CLI::IsMember({"explicit", "picard"}));
  verify->add_option("--c1", vo.c1);
  verify->add_option("--c2", vo.c2);
  verify->add_option("--B", vo.B);
  verify->add_option("--C", vo.C);
  verify->add_option("--eps", vo.eps);
  verify->add_option("--n", vo.n);
  verify->add_option("--gamma", vo.gamma);
  verify->add_option("--radius", vo.radius, "Disk radius for the explicit chain field");
  verify->add_option("--grid", vo.grid, "Polar grid size n_r = n_t");
  verify->add_option("--K", vo.K, "Lattice nodes per radius");
  verify->add_option("--u0", vo.u0);
  verify->add_option("--du0", vo.du0);
  verify->add_option("--trials", vo.trials);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  if (g.out.empty()) {
    if (const char* env = std::getenv("DBARLAB_OUT_DIR")) g.out = env;
  }

  CommandResult res;
  try {
    if (*constants) {
      res = cmd_constants(co, g);
    } else if (*solve) {
      res = cmd_solve(so, g);
      if (g.out.empty()) g.out = ".";
    } else {
      res = cmd_verify(vo, g);
    }
  } catch (const InvalidParameter& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitFailure;
  }
  std::cout << res.stdout_text;
  if (!g.out.empty()) {
    std::filesystem::create_directories(g.out);
    for (const auto& [name, content] : res.files) write_text_file(std::filesystem::path(g.out) / name, content);
  }
  return res.exit_code;
}

}  // namespace dbarlab::cli
