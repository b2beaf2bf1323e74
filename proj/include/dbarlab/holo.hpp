#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dbarlab/error.hpp"
#include "dbarlab/grid.hpp"
#include "dbarlab/report.hpp"

namespace dbarlab {

/// A holomorphic function given by value and derivative evaluators.
struct Holomorphic {
  std::function<cplx(cplx)> value;
  std::function<cplx(cplx)> derivative;
};

/// Polynomial a_0 + a_1 z + ... + a_d z^d with a nominal domain radius.
class PowerSeries {
 public:
  explicit PowerSeries(std::vector<cplx> coefficients, double radius = 1.0);
  static PowerSeries identity(double radius = 1.0);

  /// Horner evaluation.
  cplx operator()(cplx z) const;
  cplx derivative_at(cplx z) const;
  PowerSeries derivative() const;
  /// (*this)(inner(z)); degree deg * inner.deg, radius taken from inner.
  PowerSeries compose(const PowerSeries& inner) const;
  /// z -> factor * (*this)(scale * z), with radius divided by |scale|.
  PowerSeries rescale(cplx factor, cplx scale) const;

  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(cplx w) const;

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  cplx coefficient(int k) const;
  double radius() const { return radius_; }
  Holomorphic as_function() const;

 private:
  std::vector<cplx> coeffs_;
  double radius_;
};

/// Uniformly sampled circle.
struct ContourSpec {
  cplx center = 0.0;
  double radius = 1.0;
  int n_samples = 1024;

  void validate() const;
  cplx sample(int k) const;
  nlohmann::json to_json() const;
};

/// Raised when the argument-principle quadrature cannot be trusted.
class ContourError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

struct WindingCertificate {
  ContourSpec contour;
  int count = 0;
  double min_abs_on_contour = 0.0;
  /// Quadrature value before rounding.
  double raw = 0.0;

  /// {"contour", "count", "min_abs_on_contour"}.
  nlohmann::json to_json() const;
};

/// Trapezoid rule for (1/2 pi i) \oint f'/f dz rounded to an integer. Throws
/// ContourError when min |f| on the samples is below 1e-12 max(1, max |f|) or
/// when the quadrature is farther than 0.1 from an integer.
WindingCertificate winding_certificate(const Holomorphic& f, const ContourSpec& gamma);
int winding_zero_count(const Holomorphic& f, const ContourSpec& gamma);
int winding_zero_count(const PowerSeries& f, const ContourSpec& gamma);

/// Number of boundary samples used for "maps into the disk" hypotheses.
inline constexpr int kHypothesisSamples = 1024;

/// Checks |f(z)| > ((delta - eta)/(1 - eta delta)) |z| and the sharper
/// |f(z)| >= ((delta - |z|)/(1 - |z| delta)) |z| on samples of 0 < |z| < eta.
/// Throws InvalidParameter when f(0) != 0, |f'(0)| != delta, f leaves D_1 on the
/// sampled unit circle, or eta is not in (0, delta).
VerificationReport schwarz_pick_lower(const Holomorphic& f, double delta, double eta);
VerificationReport schwarz_pick_lower(const PowerSeries& f, double delta, double eta);

/// Damped Newton solve of f(z) = w from z0. Throws NumericalFailure with
/// diagnostics if the residual does not reach 1e-13 max(1, |w|).
cplx newton_solve(const Holomorphic& f, cplx w, cplx z0, int max_iter = 100);

/// Inverse of f restricted to D_eta, defined on D_s with s = schwarz_pick_radius(delta, eta).
class InjectiveInverse {
 public:
  InjectiveInverse(Holomorphic f, double delta, double eta);

  /// The unique z in D_eta with f(z) = w; rejects |w| >= s.
  cplx operator()(cplx w) const;
  /// 1 / f'(psi(w)).
  cplx derivative(cplx w) const;
  /// Zero count of f - w on the circle of radius 0.999 eta; throws
  /// NumericalFailure if the count is not 1.
  WindingCertificate certify(cplx w) const;

  double delta() const { return delta_; }
  double eta() const { return eta_; }
  double s() const { return s_; }
  const Holomorphic& function() const { return f_; }

 private:
  Holomorphic f_;
  double delta_, eta_, s_;
  cplx fprime0_;
};

InjectiveInverse injective_inverse(const Holomorphic& f, double delta, double eta);
InjectiveInverse injective_inverse(const PowerSeries& f, double delta, double eta);

/// phi(z) = r psi(z / 2), where psi inverts f(z) = Z1(r z) / 2 on D_eta with eta = 3r/8.
class NormalFormInverse {
 public:
  NormalFormInverse(PowerSeries z1, double r);

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  /// Checks |Z1(phi(z)) - z| <= 1e-10 and |phi(z)| < r on circles of radius
  /// 0, 1/4, 1/2, 3/4, 1 and certifies injectivity at 16 points of |w| = 1/2.
  VerificationReport certificate() const;

  double r() const { return r_; }
  const InjectiveInverse& psi() const { return psi_; }
  const PowerSeries& z1() const { return z1_; }

 private:
  PowerSeries z1_;
  double r_;
  InjectiveInverse psi_;
};

/// Throws InvalidParameter for r <= 4 sqrt(2)/3, Z1(0) != 0, Z1'(0) != 1, or a
/// sampled point of |z| = r where |Z1| >= 2.
NormalFormInverse lemma33_inverse(const PowerSeries& z1, double r);

}  // namespace dbarlab
