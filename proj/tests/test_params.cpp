#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dbarlab/error.hpp"
#include "dbarlab/params.hpp"

using namespace dbarlab;

namespace {

// Composite Simpson on [a, b] with an even number of panels.
template <class F>
double simpson(F f, double a, double b, int panels) {
  const double h = (b - a) / panels;
  double acc = f(a) + f(b);
  for (int i = 1; i < panels; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

// Unit-ball volume by the recursion V_n = V_{n-2} 2 pi / n, independent of tgamma.
double ball_volume_recursive(int n) {
  if (n == 0) return 1.0;
  if (n == 1) return 2.0;
  return ball_volume_recursive(n - 2) * 2.0 * std::numbers::pi / n;
}

}  // namespace

TEST_CASE("comparison bound M matches the stated examples") {
  CHECK(comparison_bound_m(2, 1.0, 0.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(comparison_bound_m(1, 2.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double B : {0.5, 1.0, 3.0}) {
    for (double eps : {0.0, 0.25, 0.5, 0.9}) {
      const double n1 = std::pow(B * (1 - eps) * (1 - eps) / (2 * (1 + eps)), 1 / (1 - eps));
      CHECK(comparison_bound_m(1, B, eps) == doctest::Approx(n1).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(comparison_bound_m(2, 1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(comparison_bound_m(2, 0.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(comparison_bound_m(0, 1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(comparison_bound_m(2, 1.0, -0.1), InvalidParameter);
}

TEST_CASE("comparison function coefficient identity holds across a grid") {
  // v = M |x|^p with p = 2/(1-eps): Delta v = p (p + n - 2) M |x|^{p-2} and
  // B v^eps = B M^eps |x|^{p eps}; p - 2 = p eps, so the coefficients must agree.
  for (int n = 1; n <= 5; ++n) {
    for (double B : {0.1, 1.0, 7.5}) {
      for (double eps : {0.0, 0.1, 0.5, 0.75, 0.95}) {
        const double M = comparison_bound_m(n, B, eps);
        const double p = 2.0 / (1.0 - eps);
        const double lhs = p * (p + n - 2) * M;
        const double rhs = B * std::pow(M, eps);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("S_alpha values and branch behaviour") {
  CHECK(std::abs(s_alpha(2.0 / 3.0) - 2.0 * std::sqrt(2.0) / 27.0) < 1e-12);
  CHECK(s_alpha(2.0 / 3.0) == doctest::Approx(0.10475656).epsilon(1e-8));
  CHECK(s_alpha(0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(s_alpha(0.75) == doctest::Approx(0.0225).epsilon(1e-13));
  CHECK(std::abs(s_alpha_low_branch(2.0 / 3.0) - s_alpha_high_branch(2.0 / 3.0)) < 1e-12);
  // S_alpha underflows double range above alpha ~ 0.99, so positivity and decay
  // are checked on log S_alpha, which is exact to rounding there.
  for (int i = 1; i < 1000; ++i) {
    const double a = i / 1000.0;
    CHECK(s_alpha(a) >= 0.0);
    CHECK(std::isfinite(log_s_alpha(a)));
    if (a <= 0.98) {
      CHECK(s_alpha(a) > 0.0);
      CHECK(std::log(s_alpha(a)) == doctest::Approx(log_s_alpha(a)).epsilon(1e-12));
    }
  }
  double prev = log_s_alpha(0.9);
  for (int i = 901; i <= 999; ++i) {
    const double s = log_s_alpha(i / 1000.0);
    CHECK(s < prev);
    prev = s;
  }
  CHECK(log_s_alpha(0.999) < -3000.0);
  CHECK(s_alpha(0.999) == 0.0);
  CHECK_THROWS_AS(s_alpha(0.0), InvalidParameter);
  CHECK_THROWS_AS(s_alpha(1.0), InvalidParameter);
}

TEST_CASE("gamma_star and the free-gamma bound") {
  CHECK(gamma_star(0.5) == 2.0);
  CHECK(gamma_star(2.0 / 3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(gamma_star(0.75) == doctest::Approx(2.5).epsilon(1e-15));
  for (double a : {0.1, 0.3, 0.5, 2.0 / 3.0, 0.7, 0.8, 0.95}) {
    CHECK(dbar_sup_bound(a, gamma_star(a)) == doctest::Approx(s_alpha(a)).epsilon(1e-12));
    CHECK(dbar_sup_bound(a, gamma_star(a) + 1.0) < s_alpha(a));
  }
  CHECK_THROWS_AS(dbar_sup_bound(0.75, 2.0), InvalidParameter);
}

TEST_CASE("kappa_n closed form agrees with quadrature of the defining ratio") {
  CHECK(kappa_n(1) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(kappa_n(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(kappa_n(3) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  for (int n = 1; n <= 5; ++n) {
    const double vol = ball_volume_recursive(n);
    const double num = simpson([&](double r) { return vol * std::pow(r, n); }, 0.0, 1.0, 200);
    const double sigma = n * vol;
    CHECK(std::abs(num / sigma - kappa_n(n)) < 1e-8);
    CHECK(ball_volume(n, 1.0) == doctest::Approx(vol).epsilon(1e-13));
  }
  CHECK_THROWS_AS(kappa_n(0), InvalidParameter);
}

TEST_CASE("divergence and ODE bounds") {
  CHECK(divergence_bound_m(1, 2.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(divergence_bound_m(2, 6.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(divergence_bound_m(1, 2.0, 0.5, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(ode_bound_m(2.0, 0.0, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ode_bound_m(8.0, -1.0, -1.0) == doctest::Approx(std::sqrt(8.0)).epsilon(1e-14));
  for (double B : {0.5, 2.0}) {
    for (double C : {-1.0, -0.5, 0.0, 0.5}) {
      for (double eps : {-1.0, C}) {
        CHECK(ode_bound_m(B, C, eps) ==
              doctest::Approx(divergence_bound_m(1, B, C, eps)).epsilon(1e-14));
      }
    }
  }
  CHECK_THROWS_AS(divergence_bound_m(1, 2.0, 0.0, 0.1), InvalidParameter);
  CHECK_THROWS_AS(divergence_bound_m(1, 2.0, 1.0, 0.0), InvalidParameter);
  CHECK_THROWS_AS(ode_bound_m(2.0, -1.5, -2.0), InvalidParameter);
  CHECK_THROWS_AS(ode_bound_m(2.0, 0.0, 0.5), InvalidParameter);
}

TEST_CASE("inverse radii") {
  const InverseRadii a = inverse_radii(2.0);
  CHECK(a.eta == doctest::Approx(0.75));
  CHECK(a.s == doctest::Approx(0.75));
  const InverseRadii b = inverse_radii(1.9);
  CHECK(b.eta == doctest::Approx(0.7125));
  CHECK(b.s == doctest::Approx(10.83 / 20.68).epsilon(1e-12));
  CHECK_THROWS_AS(inverse_radii(1.885), InvalidParameter);
  CHECK_THROWS_AS(inverse_radii(2.01), InvalidParameter);
  try {
    inverse_radii(1.5);
  } catch (const InvalidParameter& e) {
    CHECK(std::string(e.what()).find("4*sqrt(2)/3") != std::string::npos);
  }
  const double lo = inverse_radius_threshold();
  for (int k = 1; k <= 400; ++k) {
    const double r = lo + (2.0 - lo) * k / 400.0;
    const InverseRadii ir = inverse_radii(r);
    CHECK(ir.s > 0.5);
    CHECK(4 * ir.eta * ir.eta - 3 * r * ir.eta + 2 < 0.0);
    CHECK(ir.root_low < ir.eta);
    CHECK(ir.eta < ir.root_high);
    CHECK(schwarz_pick_radius(r / 2.0, ir.eta) == doctest::Approx(ir.s).epsilon(1e-13));
  }
}

TEST_CASE("Schwarz-Pick radius") {
  for (double t : {0.1, 0.5, 0.9}) CHECK(schwarz_pick_radius(1.0, t) == doctest::Approx(t));
  CHECK(schwarz_pick_radius(0.95, 0.5) == doctest::Approx(0.5 * 0.45 / 0.525).epsilon(1e-14));
  double prev = 0.0;
  for (double d = 0.51; d <= 1.0; d += 0.01) {
    const double s = schwarz_pick_radius(d, 0.5);
    CHECK(s > prev);
    prev = s;
  }
  CHECK_THROWS_AS(schwarz_pick_radius(0.5, 0.5), InvalidParameter);
  CHECK_THROWS_AS(schwarz_pick_radius(1.1, 0.5), InvalidParameter);
}

TEST_CASE("pseudo-hyperbolic disks are Euclidean disks") {
  EuclideanDisk d0 = pseudo_disk(0.0, 0.3);
  CHECK(std::abs(d0.center) == 0.0);
  CHECK(d0.radius == doctest::Approx(0.3));
  EuclideanDisk d1 = pseudo_disk(0.5, 0.5);
  CHECK(d1.center.real() == doctest::Approx(0.4));
  CHECK(d1.radius == doctest::Approx(0.4));

  // Points at pseudo-hyperbolic distance r from z0 are images of the circle |u| = r
  // under the automorphism u -> (u + z0) / (1 + conj(z0) u).
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const cplx z0 = std::polar(0.95 * std::sqrt(U(rng)), 2 * std::numbers::pi * U(rng));
    const double r = 0.01 + 0.98 * U(rng);
    const EuclideanDisk d = pseudo_disk(z0, r);
    for (int k = 0; k < 64; ++k) {
      const cplx u = std::polar(r, 2 * std::numbers::pi * k / 64);
      const cplx w = (u + z0) / (1.0 + std::conj(z0) * u);
      REQUIRE(std::abs(pseudohyperbolic_distance(w, z0) - r) < 1e-12);
      CHECK(std::abs(std::abs(w - d.center) - d.radius) < 1e-9);
    }
  }
  CHECK_THROWS_AS(pseudo_disk(1.0, 0.5), InvalidParameter);
  CHECK_THROWS_AS(pseudo_disk(0.0, 1.0), InvalidParameter);
}

TEST_CASE("parameter bundle validation names the constraint") {
  CHECK_NOTHROW(InequalityParams({.alpha = 0.3, .gamma = 2.0, .B = 1.0, .C = 0.0, .epsilon = 0.0, .n = 2}));
  CHECK_THROWS_AS(InequalityParams({.alpha = 1.0}), InvalidParameter);
  CHECK_THROWS_AS(InequalityParams({.alpha = 0.0}), InvalidParameter);
  CHECK_THROWS_AS(InequalityParams({.B = -1.0}), InvalidParameter);
  CHECK_THROWS_AS(InequalityParams({.C = 1.0}), InvalidParameter);
  CHECK_THROWS_AS(InequalityParams({.n = 0}), InvalidParameter);
  try {
    InequalityParams({.alpha = 1.5});
    FAIL("expected rejection");
  } catch (const InvalidParameter& e) {
    CHECK(std::string(e.what()).find("0 < alpha < 1") != std::string::npos);
  }
}

TEST_CASE("constants table entries are finite and positive") {
  const InequalityParams p({.alpha = 0.75, .gamma = 2.5, .B = 2.0, .C = 0.0, .epsilon = 0.0, .n = 1});
  const auto table = constants_table(p, 1.9);
  CHECK(table.size() >= 8);
  for (const auto& c : table) {
    CHECK(std::isfinite(c.value));
    CHECK(c.value > 0.0);
    const auto j = c.to_json();
    CHECK(j.contains("name"));
    CHECK(j.contains("formula_id"));
  }
}
