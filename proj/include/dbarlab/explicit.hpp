#pragma once

#include <optional>
#include <span>
#include <vector>

#include "dbarlab/grid.hpp"
#include "dbarlab/params.hpp"

namespace dbarlab {

/// amplitude * (slope * x - offset)^exponent on the half-line where the base is >= 0.
struct PowerPiece {
  double amplitude = 0.0;
  double slope = 1.0;
  double offset = 0.0;
  double exponent = 1.0;

  /// Zero of the base, i.e. the breakpoint where the piece attaches to 0.
  double root() const { return offset / slope; }
  /// k-th derivative (k = 0..2) of the piece, base clamped at 0.
  double derivative(double x, int k) const;
};

enum class Side { left, right };

/// Left power piece on x <= x1, zero on [x1, x2], right power piece on x >= x2.
/// Either piece may be absent (the function is then 0 on that side).
class PiecewisePower {
 public:
  PiecewisePower(std::optional<PowerPiece> left, std::optional<PowerPiece> right, double x1,
                 double x2, int smoothness);

  double x1() const { return x1_; }
  double x2() const { return x2_; }
  /// Order of continuous differentiability across the breakpoints.
  int smoothness() const { return smoothness_; }
  const std::optional<PowerPiece>& left() const { return left_; }
  const std::optional<PowerPiece>& right() const { return right_; }

  double value(double x) const { return derivative(x, 0); }
  /// k-th derivative, k = 0..2; at a breakpoint the flat-piece value is returned.
  double derivative(double x, int k) const;
  /// One-sided k-th derivative at x (the limit from the given side).
  double one_sided(double x, int k, Side side) const;

  struct Sup {
    double value;
    double at;
  };
  /// max |u| on [a, b]; |u| grows away from the flat interval, so it is attained at an end.
  Sup sup_abs(double a, double b) const;

 private:
  std::optional<PowerPiece> left_;
  std::optional<PowerPiece> right_;
  double x1_;
  double x2_;
  int smoothness_;
};

/// u'' = B|u|^eps with flat interval [c1, c2] and amplitude M of the n = 1 comparison bound.
PiecewisePower example22_family(double B, double epsilon, double c1, double c2);

/// u' = B|u|^alpha: ((1-alpha)(Bx - c2))^{1/(1-alpha)} on the right and
/// -((1-alpha)(c1 - Bx))^{1/(1-alpha)} on the left. The pieces vanish at
/// Bx = c2 and Bx = c1, so the flat interval is [c1/B, c2/B].
PiecewisePower example25_family(double B, double alpha, double c1, double c2);

/// v(x) = M |x|^{2/(1-eps)} on R^n with M = comparison_bound_m(n, B, eps).
class RadialComparison {
 public:
  explicit RadialComparison(const InequalityParams& p);
  RadialComparison(int n, double B, double epsilon);

  int n() const { return n_; }
  double M() const { return M_; }
  double exponent() const { return p_; }
  double B() const { return B_; }
  double epsilon() const { return eps_; }

  double value(std::span<const double> x) const;
  std::vector<double> gradient(std::span<const double> x) const;
  double laplacian(std::span<const double> x) const;
  /// Delta v - B v^eps evaluated analytically (0 up to rounding).
  double residual(std::span<const double> x) const;

 private:
  int n_;
  double B_;
  double eps_;
  double M_;
  double p_;
};

RadialComparison radial_comparison(const InequalityParams& p);

/// u' = 2|u|^alpha with u(0) = b > 0: u(x) = (2(1-alpha)x + b^{1-alpha})^{1/(1-alpha)}
/// to the right of x0 = -b^{1-alpha} / (2(1-alpha)), and 0 to its left.
class EscapeProfile {
 public:
  EscapeProfile(double alpha, double b);

  double alpha() const { return alpha_; }
  double b() const { return b_; }
  double x0() const;
  double value(double x) const { return u_.value(x); }
  double derivative(double x, int k) const { return u_.derivative(x, k); }
  const PiecewisePower& piecewise() const { return u_; }
  /// Abscissa where u reaches height S; u < S exactly for x below it.
  double escape_abscissa(double S) const;

 private:
  double alpha_;
  double b_;
  PiecewisePower u_;
};

struct ExplicitDisk {
  EscapeProfile profile;
  ComplexField z1;  // z
  ComplexField z2;  // u(x) + 0i
  double S;
};

/// Samples Z(z) = (z, u(Re z)) on the grid disk. Rejects when u reaches S on the
/// disk, i.e. when the grid radius is not below the escape abscissa.
ExplicitDisk example44_disk(double b, double alpha, const PolarGrid& grid,
                             std::optional<double> S = std::nullopt);

}  // namespace dbarlab
