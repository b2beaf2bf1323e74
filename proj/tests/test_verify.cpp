#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dbarlab/dbar.hpp"
#include "dbarlab/error.hpp"
#include "dbarlab/explicit.hpp"
#include "dbarlab/params.hpp"
#include "dbarlab/verify.hpp"

using namespace dbarlab;

namespace {

ScalarFieldND sample_1d(const BallLattice& lat, const PiecewisePower& u) {
  return ScalarFieldND::sample(lat, [&](std::span<const double> x) { return u.value(x[0]); });
}

PicardConfig picard(double alpha, cplx b, int n) {
  PicardConfig cfg;
  cfg.alpha = alpha;
  cfg.b = b;
  cfg.grid = PolarGrid(1.0, n, n);
  return cfg;
}

}  // namespace

TEST_CASE("no small solutions: piecewise family, zero field and radial comparison") {
  const InequalityParams p({.B = 2.0, .epsilon = 0.5, .n = 1});
  const double M = comparison_bound_m(p);
  for (int K : {64, 128, 256}) {
    const BallLattice lat(1, K);
    const PiecewisePower u = example22_family(2.0, 0.5, 0.2, 0.5);
    const VerificationReport r = check_no_small_solutions(sample_1d(lat, u), p);
    CHECK(r.status == CheckStatus::passed);
    // The sup sits at x = -1 where the left piece is largest.
    CHECK(r.witness.at("sup_u").get<double>() == doctest::Approx(u.value(-1.0)).epsilon(1e-12));
    CHECK(r.margin == doctest::Approx(u.value(-1.0) - M).epsilon(1e-10));
    CHECK(r.margin > 0.0);
  }

  const BallLattice lat2(2, 24);
  const InequalityParams p2({.B = 1.0, .epsilon = 0.0, .n = 2});
  const VerificationReport zero = check_no_small_solutions(
      ScalarFieldND::sample(lat2, [](std::span<const double>) { return 0.0; }), p2);
  CHECK(zero.passed());
  CHECK(zero.notes.find("vacuous") != std::string::npos);

  const RadialComparison v = radial_comparison(p2);
  const VerificationReport rc = check_no_small_solutions(
      ScalarFieldND::sample(lat2, [&](std::span<const double> x) { return v.value(x); }), p2);
  CHECK(rc.passed());
  CHECK(rc.notes.find("vacuous") != std::string::npos);
  // v attains exactly M on the unit sphere, so it realizes the bound.
  CHECK(rc.witness.at("sup_u").get<double>() <= v.M() * (1.0 + 1e-12));
}

TEST_CASE("no small solutions rejects inputs outside the hypotheses") {
  const InequalityParams p({.B = 1.0, .epsilon = 0.0, .n = 1});
  const BallLattice lat(1, 32);
  // The constant 0.01 has u'' = 0 < B u^eps: the residual hypothesis fails.
  const VerificationReport concave = check_no_small_solutions(
      ScalarFieldND::sample(lat, [](std::span<const double> x) { return 0.01 + 0.0 * x[0]; }), p);
  CHECK(concave.status == CheckStatus::hypotheses_not_met);
  const VerificationReport negative = check_no_small_solutions(
      ScalarFieldND::sample(lat, [](std::span<const double> x) { return x[0]; }), p);
  CHECK(negative.status == CheckStatus::hypotheses_not_met);
}

TEST_CASE("chain holds on the explicit disk field") {
  for (int n : {32, 64, 128}) {
    const PolarGrid g(0.35, n, 32);
    const ExplicitDisk d = example44_disk(0.01, 0.5, g);
    const VerificationReport r = check_chain(d.z2, 0.5, 2.0);
    CHECK(r.passed());
    // rho = x + 0.1 is linear, so (b) and (c) hold with equality and (a) with margin.
    CHECK(std::abs(r.details.at("b").at("margin").get<double>()) < 1e-6);
    CHECK(std::abs(r.details.at("c").at("margin").get<double>()) < 1e-6);
    CHECK(r.details.at("a").at("margin").get<double>() > 0.1);
  }
}

TEST_CASE("chain skips statement (a) below the gamma threshold") {
  const PolarGrid g(0.35, 64, 32);
  const ExplicitDisk d = example44_disk(0.01, 0.5, g);
  // (2 - 1/2) / (2 - 1) = 1.5.
  const VerificationReport r = check_chain(d.z2, 0.5, 1.2);
  CHECK(r.details.at("a").at("skipped").get<bool>());
  CHECK(r.notes.find("negative") != std::string::npos);
  CHECK(r.details.at("gradient_coefficient").get<double>() < 0.0);
  CHECK(r.passed());
  const VerificationReport at = check_chain(d.z2, 0.5, 1.5);
  CHECK_FALSE(at.details.at("a").contains("skipped"));
}

TEST_CASE("chain on a converged Picard solution") {
  const DbarSolution s = solve_picard(picard(0.25, 0.05, 64));
  REQUIRE(s.converged);
  const VerificationReport r = check_chain(s.field, 0.25, gamma_star(0.25));
  CHECK(r.passed());
  // A holomorphic field solves a different equation.
  const PolarGrid g(0.5, 64, 64);
  const VerificationReport hol = check_chain(ComplexField::sample(g, [](cplx z) { return 0.5 + 0.5 * z; }), 0.25, 2.0);
  CHECK(hol.status == CheckStatus::hypotheses_not_met);
  const VerificationReport zero = check_chain(ComplexField::constant(PolarGrid(1.0, 16, 16), 0.0), 0.5, 2.0);
  CHECK(zero.status == CheckStatus::hypotheses_not_met);
}

TEST_CASE("polar system on exact, holomorphic and Picard fields") {
  // rho = x + 0.1 and the phase is 0, so the stencils are exact.
  for (int n : {32, 64, 128}) {
    const PolarGrid g(0.35, n, 64);
    const ExplicitDisk d = example44_disk(0.01, 0.5, g);
    const VerificationReport r = check_polar_system(d.z2, 0.5);
    CHECK(r.passed());
    CHECK(-r.margin < 1e-12);
  }
  // dbar f = 0 instead of |f|^alpha: the system fails by O(1).
  const PolarGrid g(0.5, 64, 64);
  const ComplexField hol = ComplexField::sample(g, [](cplx z) { return 0.5 + 0.5 * z; });
  const VerificationReport neg = check_polar_system(hol, 0.5);
  CHECK(neg.status == CheckStatus::failed);
  CHECK(neg.margin < -0.5);

  // f = z winds around its zero at the origin.
  const VerificationReport wind = check_polar_system(ComplexField::sample(g, [](cplx z) { return z; }), 0.5);
  CHECK(wind.status == CheckStatus::hypotheses_not_met);

  const DbarSolution s = solve_picard(picard(0.5, 0.01, 64));
  REQUIRE(s.converged);
  const VerificationReport pic = check_polar_system(s.field, 0.5);
  CHECK(pic.passed());
}

TEST_CASE("maximum principle probe") {
  const InequalityParams p2({.B = 1.0, .epsilon = 0.0, .n = 2});
  const RadialComparison v = radial_comparison(p2);
  const BallLattice lat2(2, 20);
  const VerificationReport rc = probe_maximum_principle(
      ScalarFieldND::sample(lat2, [&](std::span<const double> x) { return v.value(x); }), p2);
  CHECK(rc.passed());

  // Increasing on (0, 1) when the flat interval lies left of 0.
  const InequalityParams p1({.B = 2.0, .epsilon = 0.5, .n = 1});
  const BallLattice half(1, 64, 0.5, {0.5});
  const PiecewisePower u = example22_family(2.0, 0.5, -0.6, -0.3);
  const VerificationReport inc = probe_maximum_principle(sample_1d(half, u), p1);
  CHECK(inc.passed());
  CHECK(inc.witness.at("argmax").at(0).get<double>() == doctest::Approx(1.0));

  const VerificationReport bump = probe_maximum_principle(
      ScalarFieldND::sample(lat2, [](std::span<const double> x) {
        return 1.0 + std::exp(-10.0 * (x[0] * x[0] + x[1] * x[1]));
      }),
      p2);
  CHECK(bump.status == CheckStatus::hypotheses_not_met);
  CHECK_FALSE(bump.passed());

  const VerificationReport none = probe_maximum_principle(
      ScalarFieldND::sample(lat2, [](std::span<const double>) { return -1.0; }), p2);
  CHECK(none.status == CheckStatus::hypotheses_not_met);
}

TEST_CASE("ODE integrator is fourth order") {
  const double ratio = ode_order_ratio(2.0, 0.5, 0.5, 0.5, 0.2, 0.02);
  CHECK(ratio >= 14.0);
  CHECK(ratio <= 18.0);
  // u'' = 2 with C = 0 is integrated exactly: u = u0 + t^2.
  const OdeTrajectory q = integrate_ode_ineq(2.0, 0.0, 0.0, 0.01, 0.0);
  for (std::size_t i = 0; i < q.t.size(); i += 997) {
    CHECK(q.u[i] == doctest::Approx(0.01 + q.t[i] * q.t[i]).epsilon(1e-12));
  }
}

TEST_CASE("ODE trajectories stay positive and exceed the bound") {
  const OdeTrajectory tr = integrate_ode_ineq(2.0, 0.0, 0.0, 0.01, 0.0);
  CHECK_FALSE(tr.positivity_fault);
  CHECK(tr.min_u() > 0.0);
  const VerificationReport r = check_ode_theorem(tr);
  CHECK(r.passed());
  CHECK(r.details.at("M").get<double>() == doctest::Approx(1.0));
  CHECK(tr.sup_u() > 1.0);

  // u0 above M passes at t = 0.
  const OdeTrajectory big = integrate_ode_ineq(2.0, 0.0, 0.0, 1.5, 0.0, OdeMode::equality, 1e-3);
  CHECK(check_ode_theorem(big).passed());

  // Margin mode drives u'' strictly above the equality case.
  const OdeTrajectory m = integrate_ode_ineq(2.0, 0.0, 0.0, 0.01, 0.0, OdeMode::margin, 1e-3);
  CHECK(m.u.back() > 0.01 + m.t.back() * m.t.back());

  // The trajectory respects the lower bound used in the blow-up argument.
  for (double C : {-1.0, -0.5, 0.0, 0.5}) {
    const OdeTrajectory t = integrate_ode_ineq(1.0, C, std::min(C, 0.0), 0.2, 0.0, OdeMode::equality, 1e-3);
    CHECK(t.min_u() > 0.0);
    CHECK(check_ode_theorem(t).details.at("min_relative_gap_to_proof_bound").get<double>() > -1e-9);
  }

  CHECK_THROWS_AS(integrate_ode_ineq(2.0, 0.0, 0.5, 0.01, 0.0), InvalidParameter);
  CHECK_THROWS_AS(integrate_ode_ineq(2.0, 0.0, 0.0, 0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(integrate_ode_ineq(2.0, 1.0, 0.0, 0.1, 0.0), InvalidParameter);
}

TEST_CASE("divergence bound on an embedded trajectory and on a field with a zero") {
  const OdeTrajectory tr = integrate_ode_ineq(2.0, 0.0, 0.0, 0.01, 0.0);
  const InequalityParams p({.B = 2.0, .C = 0.0, .epsilon = 0.0, .n = 1});
  // kappa_1 = 1/2 makes the divergence and ODE bounds agree.
  CHECK(divergence_bound_m(p) == doctest::Approx(ode_bound_m(p)));
  const BallLattice lat(1, 200, 0.998);
  const VerificationReport r = check_divergence_bound(embed_trajectory(tr, lat), p);
  CHECK(r.passed());
  CHECK(r.witness.at("sup_u").get<double>() > 1.0);

  const BallLattice lat9(1, 64, 0.9);
  const VerificationReport zero = check_divergence_bound(
      ScalarFieldND::sample(lat9, [](std::span<const double> x) { return x[0] * x[0]; }), p);
  CHECK(zero.passed());
  CHECK(zero.details.at("corollary_form").get<bool>());

  const VerificationReport bad = check_divergence_bound(
      ScalarFieldND::sample(lat9, [](std::span<const double>) { return 0.5; }), p);
  CHECK(bad.status == CheckStatus::hypotheses_not_met);

  const OdeTrajectory moving = integrate_ode_ineq(2.0, 0.0, 0.0, 0.01, 0.1, OdeMode::equality, 1e-3);
  CHECK_THROWS_AS(embed_trajectory(moving, lat), InvalidParameter);
  CHECK_THROWS_AS(check_divergence_bound(embed_trajectory(tr, lat),
                                         InequalityParams({.B = 2.0, .C = 0.0, .epsilon = 0.5, .n = 1})),
                  InvalidParameter);
}

TEST_CASE("adversarial search finds no counterexample") {
  for (int n : {1, 2, 3}) {
    const InequalityParams p({.B = 1.5, .C = 0.2, .epsilon = 0.1, .n = n});
    const VerificationReport r = adversarial_divergence_search(p, 42, 120);
    CHECK(r.passed());
    CHECK(r.details.at("counterexamples").get<int>() == 0);
    CHECK(r.margin > 0.1);
  }
  const InequalityParams p({.B = 1.0, .n = 2});
  const VerificationReport a = adversarial_divergence_search(p, 7, 20);
  const VerificationReport b = adversarial_divergence_search(p, 7, 20);
  CHECK(a.to_json().dump() == b.to_json().dump());
}

TEST_CASE("kobayashi experiment reproduces the contradiction") {
  const VerificationReport r = kobayashi_experiment(0.5, 0.01);
  CHECK(r.passed());
  CHECK(r.details.at("sup_abs").get<double>() > s_alpha(0.5));
  CHECK(r.details.at("bounds").at("lower").get<double>() == doctest::Approx(3.0 / (4.0 * std::numbers::sqrt2)));
  CHECK(r.details.at("bounds").at("upper_at_b0").get<double>() == 0.5);
  CHECK(r.notes.find("infimum") != std::string::npos);

  const VerificationReport third = kobayashi_experiment(2.0 / 3.0, 0.05);
  CHECK(third.passed());
  CHECK(third.details.at("sup_abs").get<double>() > 2.0 * std::numbers::sqrt2 / 27.0);

  const VerificationReport zero = kobayashi_experiment(0.5, 0.0);
  CHECK(zero.passed());
  CHECK(zero.notes.find("1/2") != std::string::npos);

  CHECK_THROWS_AS(kobayashi_experiment(0.5, 0.3), InvalidParameter);
  KobayashiOptions low;
  low.r = 1.5;
  CHECK_THROWS_AS(kobayashi_experiment(0.5, 0.01, low), InvalidParameter);

  // A non-converged solve is reported as inconclusive, never as a pass.
  KobayashiOptions capped;
  capped.picard.max_iter = 3;
  capped.picard.grid = PolarGrid(1.0, 32, 32);
  const VerificationReport inc = kobayashi_experiment(0.5, 0.01, capped);
  CHECK(inc.status == CheckStatus::inconclusive);
}
