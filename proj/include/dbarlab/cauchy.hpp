#pragma once

#include <vector>

#include "dbarlab/grid.hpp"

namespace dbarlab {

/// Solid Cauchy transform T g(z) = -(1/pi) \int_D g(w) / (w - z) dA(w) on the grid disk.
///
/// Each ring of g is expanded in angular Fourier modes g_q(rho). Integrating the
/// kernel exactly in angle leaves, for the output mode e^{i(q-1) theta},
///   c_q(r) = -2 \int_r^R (r/rho)^{q-1} g_q(rho) drho      (q >= 1)
///   c_q(r) = +2 \int_0^r (rho/r)^{1-q} g_q(rho) drho      (q <= 0)
/// and the radial integrals use the trapezoid rule on the ring radii, evaluated
/// with geometric recursions so every kernel factor stays <= 1.
///
/// Construction precomputes twiddles and kernel ratios for one grid; apply() is
/// then O(n_r n_t^2) and reentrant.
class CauchyTransform {
 public:
  explicit CauchyTransform(const PolarGrid& grid);

  const PolarGrid& grid() const { return grid_; }
  ComplexField apply(const ComplexField& g) const;

 private:
  int mode(int m) const { return m < (grid_.n_t() + 1) / 2 ? m : m - grid_.n_t(); }

  PolarGrid grid_;
  std::vector<cplx> twiddle_;      // e^{-2 pi i k / n_t}
  std::vector<double> inward_;     // (r_i / r_{i+1})^{q-1}, rings 1..n_r-1, q >= 1
  std::vector<double> to_edge_;    // (r_i / R)^{q-1}, rings 1..n_r, q >= 1
  std::vector<double> outward_;    // (r_{i-1} / r_i)^{1-q}, rings 2..n_r, q <= 0
};

/// One-shot convenience wrapper around CauchyTransform.
ComplexField cauchy_transform(const ComplexField& g);

}  // namespace dbarlab
