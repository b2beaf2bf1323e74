#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dbarlab/cauchy.hpp"
#include "dbarlab/grid.hpp"

using namespace dbarlab;

namespace {

// Closed form on the unit disk:
//   T(w^a wbar^b)(z) = (z^a zbar^{b+1} - [a >= b+1] z^{a-b-1}) / (b+1).
cplx monomial_transform(int a, int b, cplx z) {
  cplx v = std::pow(z, a) * std::pow(std::conj(z), b + 1);
  if (a >= b + 1) v -= std::pow(z, a - b - 1);
  return v / static_cast<double>(b + 1);
}

// Brute-force oracle: T g(z) by tensor Gauss-Legendre in polar coordinates about
// z itself, where the kernel 1/(w - z) becomes e^{-i phi}/s times the area element s.
// The integration region is the unit disk written in those local polar coordinates.
cplx brute_force_transform(const std::function<cplx(cplx)>& g, cplx z) {
  static const double xg[8] = {-0.9602898564975363, -0.7966664774136267, -0.5255324099163290,
                               -0.1834346424956498, 0.1834346424956498,  0.5255324099163290,
                               0.7966664774136267,  0.9602898564975363};
  static const double wg[8] = {0.1012285362903763, 0.2223810344533745, 0.3137066458778873,
                               0.3626837833783620, 0.3626837833783620, 0.3137066458778873,
                               0.2223810344533745, 0.1012285362903763};
  const int n_phi = 64;
  cplx acc = 0.0;
  for (int p = 0; p < n_phi; ++p) {
    for (int gp = 0; gp < 8; ++gp) {
      const double phi = 2 * std::numbers::pi * (p + 0.5 * (xg[gp] + 1)) / n_phi;
      const double wphi = wg[gp] * std::numbers::pi / n_phi;
      const cplx e = std::polar(1.0, phi);
      // Ray length to the unit circle: |z + s e| = 1.
      const double bb = (std::conj(z) * e).real();
      const double smax = -bb + std::sqrt(bb * bb + 1.0 - std::norm(z));
      const int n_s = 16;
      for (int ps = 0; ps < n_s; ++ps) {
        for (int gs = 0; gs < 8; ++gs) {
          const double s = smax * (ps + 0.5 * (xg[gs] + 1)) / n_s;
          const double ws = wg[gs] * 0.5 * smax / n_s;
          acc += wphi * ws * g(z + s * e) / e;
        }
      }
    }
  }
  return -acc / std::numbers::pi;
}

double interior_error(const ComplexField& a, const std::function<cplx(cplx)>& exact) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.grid().is_boundary(i)) continue;
    err = std::max(err, std::abs(a[i] - exact(a.grid().point(i))));
  }
  return err;
}

}  // namespace

TEST_CASE("closed-form oracle agrees with brute-force quadrature") {
  for (cplx z : {cplx(0.0), cplx(0.3, 0.2), cplx(-0.5, 0.6)}) {
    for (auto [a, b] : {std::pair{0, 0}, std::pair{0, 1}, std::pair{1, 0}, std::pair{2, 1}}) {
      const cplx bf = brute_force_transform(
          [a, b](cplx w) { return std::pow(w, a) * std::pow(std::conj(w), b); }, z);
      CHECK(std::abs(bf - monomial_transform(a, b, z)) < 1e-8);
    }
  }
}

TEST_CASE("transform of zero and of constants") {
  const PolarGrid g(1.0, 32, 32);
  const CauchyTransform T(g);
  CHECK(sup_abs(T.apply(ComplexField::constant(g, 0.0))).value == 0.0);
  const ComplexField t1 = T.apply(ComplexField::constant(g, 1.0));
  CHECK(interior_error(t1, [](cplx z) { return std::conj(z); }) < 1e-12);
  CHECK(std::abs(t1.origin()) < 1e-14);
}

TEST_CASE("transform matches the closed form on monomials with shrinking error") {
  for (auto [a, b] : {std::pair{0, 1}, std::pair{1, 0}, std::pair{2, 0}, std::pair{1, 1}, std::pair{0, 2}}) {
    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
      const PolarGrid g(1.0, n, n);
      const ComplexField gw = ComplexField::sample(
          g, [a, b](cplx w) { return std::pow(w, a) * std::pow(std::conj(w), b); });
      const ComplexField t = CauchyTransform(g).apply(gw);
      double err = 0.0;
      for (std::size_t i = 0; i < t.size(); ++i) {
        err = std::max(err, std::abs(t[i] - monomial_transform(a, b, g.point(i))));
      }
      errs.push_back(err);
    }
    CAPTURE(a);
    CAPTURE(b);
    CHECK(errs[2] < 1e-3);
    // Some monomials are integrated exactly; those sit at roundoff on every grid.
    for (int k = 0; k < 2; ++k) CHECK((errs[k + 1] < 1e-12 || errs[k] / errs[k + 1] > 3.0));
  }
}

TEST_CASE("transform matches brute-force quadrature on a non-polynomial density") {
  auto g = [](cplx w) { return std::exp(w) * std::cos(std::conj(w)) + std::norm(w); };
  const PolarGrid grid(1.0, 64, 64);
  const ComplexField t = CauchyTransform(grid).apply(ComplexField::sample(grid, g));
  for (std::size_t idx : {std::size_t{0}, grid.index(10, 3), grid.index(40, 17), grid.index(63, 50)}) {
    const cplx ref = brute_force_transform(g, grid.point(idx));
    CHECK(std::abs(t[idx] - ref) < 2e-3);
  }
}

TEST_CASE("right-inverse property converges") {
  const std::vector<std::function<cplx(cplx)>> dens = {
      [](cplx w) { return std::conj(w); },
      [](cplx w) { return std::exp(w) + std::norm(w); },
      [](cplx w) { return std::sin(w.real()) * std::cos(2 * w.imag()) + cplx(0, 1) * w * w; },
  };
  for (const auto& d : dens) {
    std::vector<double> errs;
    for (int n : {32, 64, 128}) {
      const PolarGrid g(1.0, n, n);
      const ComplexField gf = ComplexField::sample(g, d);
      const ComplexField r = wirtinger_dbar(CauchyTransform(g).apply(gf)) - gf;
      errs.push_back(sup_abs(r, [&g](std::size_t i) { return g.is_interior(i); }).value);
    }
    CHECK(std::log2(errs[0] / errs[1]) >= 0.9);
    CHECK(std::log2(errs[1] / errs[2]) >= 0.9);
  }
}
