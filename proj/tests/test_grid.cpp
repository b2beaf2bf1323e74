#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dbarlab/error.hpp"
#include "dbarlab/grid.hpp"
#include "dbarlab/lattice.hpp"

using namespace dbarlab;

namespace {

double interior_error(const ComplexField& a, const std::function<cplx(cplx)>& exact,
                      bool include_boundary = false) {
  double err = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!include_boundary && a.grid().is_boundary(i)) continue;
    err = std::max(err, std::abs(a[i] - exact(a.grid().point(i))));
  }
  return err;
}

const cplx I(0.0, 1.0);

}  // namespace

TEST_CASE("polar grid geometry") {
  const PolarGrid g(1.0, 16, 32);
  CHECK(g.size() == 16 * 32 + 1);
  CHECK(g.ring_nodes() == 16u * 32u);
  double area = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) area += g.cell_area(g.ring_of(i));
  CHECK(std::abs(area - std::numbers::pi) < 1e-10 * std::numbers::pi);
  CHECK(g.index(3, -1) == g.index(3, 31));
  CHECK(g.ring_of(g.index(5, 7)) == 5);
  CHECK(g.theta_index_of(g.index(5, 7)) == 7);
  CHECK(std::abs(g.point(g.index(16, 16)) - cplx(-1.0, 0.0)) < 1e-15);
  CHECK_THROWS_AS(PolarGrid(1.0, 4, 32), InvalidParameter);
  CHECK_THROWS_AS(PolarGrid(1.0, 16, 8), InvalidParameter);
  CHECK_THROWS_AS(PolarGrid(0.0, 16, 32), InvalidParameter);
}

TEST_CASE("Wirtinger stencils are exact on quadratics, boundary included") {
  const PolarGrid g(1.3, 12, 24);
  struct Case {
    std::function<cplx(cplx)> f, dbar, d;
  };
  const std::vector<Case> cases = {
      {[](cplx z) { return std::conj(z); }, [](cplx) { return cplx(1.0); }, [](cplx) { return cplx(0.0); }},
      {[](cplx z) { return z; }, [](cplx) { return cplx(0.0); }, [](cplx) { return cplx(1.0); }},
      {[](cplx z) { return std::norm(z); }, [](cplx z) { return z; }, [](cplx z) { return std::conj(z); }},
      {[](cplx z) { return z * z + 2.0 * I * std::conj(z) * std::conj(z) - 3.0; },
       [](cplx z) { return 4.0 * I * std::conj(z); }, [](cplx z) { return 2.0 * z; }},
  };
  for (const auto& c : cases) {
    const ComplexField f = ComplexField::sample(g, c.f);
    CHECK(interior_error(wirtinger_dbar(f), c.dbar, true) < 1e-11);
    CHECK(interior_error(wirtinger_d(f), c.d, true) < 1e-11);
  }
  // Laplacian of x^2 + 3 y^2 - x y is 8.
  const ComplexField q = ComplexField::sample(g, [](cplx z) {
    return cplx(z.real() * z.real() + 3 * z.imag() * z.imag() - z.real() * z.imag());
  });
  CHECK(interior_error(laplacian(q), [](cplx) { return cplx(8.0); }, true) < 1e-9);
  const PlanarGradient gr = gradient(q);
  CHECK(interior_error(gr.dx, [](cplx z) { return cplx(2 * z.real() - z.imag()); }, true) < 1e-11);
  CHECK(interior_error(gr.dy, [](cplx z) { return cplx(6 * z.imag() - z.real()); }, true) < 1e-11);
}

TEST_CASE("stencils converge at second order on smooth non-polynomial fields") {
  auto f = [](cplx z) { return std::exp(z * std::conj(z) * 0.7 + 0.3 * z) + std::sin(std::conj(z)); };
  // dbar: conj-derivative of exp(0.7 z zbar + 0.3 z) is 0.7 z exp(...), of sin(zbar) is cos(zbar).
  auto fdbar = [](cplx z) {
    return 0.7 * z * std::exp(z * std::conj(z) * 0.7 + 0.3 * z) + std::cos(std::conj(z));
  };
  auto lap_exact = [](cplx z) {
    // Delta = 4 d dbar; d of 0.7 z e^E with E_z = 0.7 zbar + 0.3.
    const cplx E = std::exp(z * std::conj(z) * 0.7 + 0.3 * z);
    return 4.0 * (0.7 * E + 0.7 * z * (0.7 * std::conj(z) + 0.3) * E);
  };
  std::vector<double> e_dbar, e_lap;
  for (int n : {32, 64, 128}) {
    const PolarGrid g(1.0, n, n);
    const ComplexField F = ComplexField::sample(g, f);
    e_dbar.push_back(interior_error(wirtinger_dbar(F), fdbar, true));
    e_lap.push_back(interior_error(laplacian(F), lap_exact, false));
  }
  for (int k = 0; k < 2; ++k) {
    const double rd = e_dbar[k] / e_dbar[k + 1];
    const double rl = e_lap[k] / e_lap[k + 1];
    CHECK(rd >= 3.5);
    CHECK(rd <= 4.5);
    CHECK(rl >= 3.5);
    CHECK(rl <= 4.5);
  }
}

TEST_CASE("Wirtinger identities") {
  const PolarGrid g(1.0, 48, 48);
  const ComplexField f =
      ComplexField::sample(g, [](cplx z) { return std::exp(0.5 * z) * std::conj(z) + z * z * std::conj(z); });
  const ComplexField conj_f = f.map([](cplx, cplx v) { return std::conj(v); });
  const ComplexField a = wirtinger_dbar(f);
  const ComplexField b = wirtinger_d(conj_f);
  double err = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) err = std::max(err, std::abs(a[i] - std::conj(b[i])));
  CHECK(err < 1e-12);
  // Delta = 4 d dbar up to O(h^2), compared away from the origin and the boundary.
  std::vector<double> diffs;
  for (int n : {24, 48, 96}) {
    const PolarGrid gg(1.0, n, n);
    const ComplexField ff = ComplexField::sample(
        gg, [](cplx z) { return std::exp(0.5 * z) * std::conj(z) + z * z * std::conj(z); });
    const ComplexField l1 = laplacian(ff);
    const ComplexField l2 = 4.0 * wirtinger_d(wirtinger_dbar(ff));
    double diff = 0.0;
    for (std::size_t i = 0; i < ff.size(); ++i) {
      const double r = std::abs(gg.point(i));
      if (r >= 0.25 && r <= 0.75) diff = std::max(diff, std::abs(l1[i] - l2[i]));
    }
    diffs.push_back(diff);
  }
  CHECK(diffs[2] < 1e-3);
  CHECK(diffs[0] / diffs[1] > 3.5);
  CHECK(diffs[1] / diffs[2] > 3.5);
}

TEST_CASE("sup_abs witnesses") {
  const PolarGrid g(1.0, 8, 16);
  const FieldExtremum z0 = sup_abs(ComplexField::constant(g, 0.0));
  CHECK(z0.value == 0.0);
  CHECK(z0.index == 0);
  const FieldExtremum zz = sup_abs(ComplexField::sample(g, [](cplx z) { return z; }));
  CHECK(zz.value == doctest::Approx(1.0));
  CHECK(g.is_boundary(zz.index));
  CHECK(zz.index == g.index(8, 0));
}

TEST_CASE("disk quadrature") {
  const PolarGrid g(1.0, 256, 256);
  const ComplexField one = ComplexField::constant(g, 1.0);
  CHECK(std::abs(integrate(one, 1.0) - std::numbers::pi) < 1e-6);
  CHECK(std::abs(integrate(one, 0.5) - std::numbers::pi / 4) < 1e-6);
  std::vector<double> errs;
  for (int n : {32, 64, 128}) {
    const PolarGrid gg(1.0, n, n);
    const ComplexField r2 = ComplexField::sample(gg, [](cplx z) { return cplx(std::norm(z)); });
    errs.push_back(std::abs(integrate(r2, 1.0) - std::numbers::pi / 2));
  }
  CHECK(errs[2] < 1e-4);
  CHECK(errs[0] / errs[1] > 3.5);
  CHECK(errs[1] / errs[2] > 3.5);
  // Monotone and linear.
  const PolarGrid gs(1.0, 16, 32);
  const ComplexField a = ComplexField::sample(gs, [](cplx z) { return cplx(std::norm(z)); });
  const ComplexField b = ComplexField::sample(gs, [](cplx z) { return cplx(std::norm(z) + 0.1); });
  CHECK(integrate(a, 0.8).real() <= integrate(b, 0.8).real());
  CHECK(std::abs(integrate(a + b, 0.8) - integrate(a, 0.8) - integrate(b, 0.8)) < 1e-13);
  CHECK_THROWS_AS(integrate(a, 1.5), InvalidParameter);
}

TEST_CASE("field csv export") {
  const PolarGrid g(1.0, 8, 16);
  const std::string csv = to_csv(ComplexField::constant(g, cplx(0.5, -1)));
  CHECK(csv.rfind("index,ring,theta_index,x,y,re,im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(g.size()) + 1);
}

TEST_CASE("ball lattice structure") {
  const BallLattice L(2, 8);
  CHECK(L.box_size() == 17u * 17u);
  CHECK(L.in_ball(L.center_index()));
  CHECK(L.radial(L.center_index()) == 0.0);
  // Mask symmetric under k -> -k.
  for (std::size_t idx = 0; idx < L.box_size(); ++idx) {
    CHECK(L.in_ball(idx) == L.in_ball(L.box_size() - 1 - idx));
  }
  CHECK_THROWS_AS(BallLattice(3, 4), InvalidParameter);  // 3 h = 0.75 > 0.5
  CHECK_THROWS_AS(BallLattice(6, 12), InvalidParameter);
  CHECK_THROWS_AS(BallLattice(5, 80), InvalidParameter);
}

TEST_CASE("lattice Laplacian exact on quadratics, second order on the comparison function") {
  for (int n = 1; n <= 4; ++n) {
    const BallLattice L(n, 2 * n + 4);
    const ScalarFieldND u = ScalarFieldND::sample(L, [](std::span<const double> x) {
      double s = 0.0;
      for (double v : x) s += v * v;
      return s;
    });
    const ScalarFieldND lap = laplacian(u);
    for (std::size_t idx : L.nodes()) {
      if (L.is_interior(idx)) CHECK(std::abs(lap[idx] - 2.0 * n) < 1e-9);
    }
    const ScalarFieldND c = ScalarFieldND::sample(L, [](std::span<const double>) { return 3.0; });
    const ScalarFieldND lc = laplacian(c);
    for (std::size_t idx : L.nodes()) CHECK(lc[idx] == doctest::Approx(0.0));
  }
  // u = x1^2 - x2^2 + x1 x2: gradient norm^2 = (2x1 + x2)^2 + (x1 - 2x2)^2 exactly.
  const BallLattice L2(2, 10);
  const ScalarFieldND w = ScalarFieldND::sample(
      L2, [](std::span<const double> x) { return x[0] * x[0] - x[1] * x[1] + x[0] * x[1]; });
  const ScalarFieldND gn = gradient_norm2(w);
  for (std::size_t idx : L2.nodes()) {
    if (!L2.is_interior(idx)) continue;
    const auto x = L2.point(idx);
    const double ex = std::pow(2 * x[0] + x[1], 2) + std::pow(x[0] - 2 * x[1], 2);
    CHECK(gn[idx] == doctest::Approx(ex).epsilon(1e-10));
  }
}

TEST_CASE("lattice sup and integral") {
  const BallLattice L(1, 50, 1.0);
  const ScalarFieldND u =
      ScalarFieldND::sample(L, [](std::span<const double> x) { return x[0] < 0 ? -x[0] * 2 : x[0]; });
  const FieldExtremum s = sup_abs(u);
  CHECK(s.value == doctest::Approx(2.0));
  CHECK(L.point(s.index)[0] == doctest::Approx(-1.0));
  const BallLattice L2(2, 200);
  const ScalarFieldND one = ScalarFieldND::sample(L2, [](std::span<const double>) { return 1.0; });
  CHECK(integrate(one, 1.0) == doctest::Approx(std::numbers::pi).epsilon(2e-2));
}
