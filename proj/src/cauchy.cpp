#include "dbarlab/cauchy.hpp"

#include <cmath>
#include <numbers>

#include "dbarlab/error.hpp"

namespace dbarlab {

CauchyTransform::CauchyTransform(const PolarGrid& grid) : grid_(grid) {
  const int nr = grid.n_r(), nt = grid.n_t();
  twiddle_.resize(nt);
  for (int k = 0; k < nt; ++k) twiddle_[k] = std::polar(1.0, -2.0 * std::numbers::pi * k / nt);

  const std::size_t cells = static_cast<std::size_t>(nr) * nt;
  inward_.assign(cells, 0.0);
  to_edge_.assign(cells, 0.0);
  outward_.assign(cells, 0.0);
  for (int i = 1; i <= nr; ++i) {
    const std::size_t row = static_cast<std::size_t>(i - 1) * nt;
    for (int m = 0; m < nt; ++m) {
      const int q = mode(m);
      if (q >= 1) {
        if (i < nr) inward_[row + m] = std::pow(static_cast<double>(i) / (i + 1), q - 1);
        to_edge_[row + m] = std::pow(static_cast<double>(i) / nr, q - 1);
      } else if (i >= 2) {
        outward_[row + m] = std::pow(static_cast<double>(i - 1) / i, 1 - q);
      }
    }
  }
}

ComplexField CauchyTransform::apply(const ComplexField& g) const {
  if (!(g.grid() == grid_)) throw InvalidParameter("field grid does not match the transform grid");
  const int nr = grid_.n_r(), nt = grid_.n_t();
  const double h = grid_.h();
  const std::size_t nts = static_cast<std::size_t>(nt);

  // Angular Fourier coefficients per ring: ghat[i][m] = mean_j g(i, j) e^{-i q_m theta_j}.
  std::vector<cplx> ghat(static_cast<std::size_t>(nr) * nt);
  for (int i = 1; i <= nr; ++i) {
    const std::size_t row = static_cast<std::size_t>(i - 1) * nt;
    for (int m = 0; m < nt; ++m) {
      cplx acc = 0.0;
      for (int j = 0; j < nt; ++j) {
        acc += g.at(i, j) * twiddle_[(static_cast<std::size_t>(m) * j) % nts];
      }
      ghat[row + m] = acc / static_cast<double>(nt);
    }
  }

  // Output mode coefficients c[i][m] on rings 1..n_r.
  std::vector<cplx> c(static_cast<std::size_t>(nr) * nt, 0.0);
  cplx origin_value = 0.0;
  for (int m = 0; m < nt; ++m) {
    const int q = mode(m);
    if (q >= 1) {
      // S_i = sum_{k >= i} h (r_i / r_k)^{q-1} ghat_k, built from the boundary inward.
      const cplx g_edge = ghat[static_cast<std::size_t>(nr - 1) * nt + m];
      cplx S = 0.0;
      for (int i = nr; i >= 1; --i) {
        const std::size_t k = static_cast<std::size_t>(i - 1) * nt + m;
        S = h * ghat[k] + (i < nr ? inward_[k] * S : cplx(0.0));
        const cplx trap = S - 0.5 * h * ghat[k] - 0.5 * h * to_edge_[k] * g_edge;
        c[k] = i == nr ? cplx(0.0) : -2.0 * trap;
      }
      // At the origin only q = 1 survives; the rho = 0 sample of g_1 is 0.
      if (q == 1) origin_value = -2.0 * (S - 0.5 * h * g_edge);
    } else {
      // U_i = sum_{1 <= k <= i} h (r_k / r_i)^{1-q} ghat_k; the rho = 0 end carries kernel 0.
      cplx U = 0.0;
      for (int i = 1; i <= nr; ++i) {
        const std::size_t k = static_cast<std::size_t>(i - 1) * nt + m;
        U = h * ghat[k] + outward_[k] * U;
        c[k] = 2.0 * (U - 0.5 * h * ghat[k]);
      }
    }
  }

  // T(r_i, theta_j) = e^{-i theta_j} sum_m c[i][m] e^{i q_m theta_j}.
  std::vector<cplx> out(grid_.size());
  out[0] = origin_value;
  for (int i = 1; i <= nr; ++i) {
    const std::size_t row = static_cast<std::size_t>(i - 1) * nt;
    for (int j = 0; j < nt; ++j) {
      cplx acc = 0.0;
      for (int m = 0; m < nt; ++m) {
        acc += c[row + m] * std::conj(twiddle_[(static_cast<std::size_t>(m) * j) % nts]);
      }
      out[grid_.index(i, j)] = acc * twiddle_[static_cast<std::size_t>(j)];
    }
  }
  return ComplexField(grid_, std::move(out));
}

ComplexField cauchy_transform(const ComplexField& g) { return CauchyTransform(g.grid()).apply(g); }

}  // namespace dbarlab
