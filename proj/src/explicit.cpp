#include "dbarlab/explicit.hpp"

#include <cmath>

#include "dbarlab/error.hpp"
#include "dbarlab/io.hpp"

namespace dbarlab {

namespace {

double piece_derivative(const PowerPiece& p, double base, int k) {
  require(k >= 0 && k <= 2, "derivative order 0..2", "k", k);
  double coeff = p.amplitude;
  for (int j = 0; j < k; ++j) coeff *= p.slope * (p.exponent - j);
  if (coeff == 0.0) return 0.0;
  return coeff * std::pow(std::max(0.0, base), p.exponent - k);
}

}  // namespace

double PowerPiece::derivative(double x, int k) const {
  return piece_derivative(*this, slope * x - offset, k);
}

PiecewisePower::PiecewisePower(std::optional<PowerPiece> left, std::optional<PowerPiece> right,
                               double x1, double x2, int smoothness)
    : left_(left), right_(right), x1_(x1), x2_(x2), smoothness_(smoothness) {
  require(x1 <= x2, "x1 <= x2", "x1", x1);
}

double PiecewisePower::derivative(double x, int k) const {
  if (x < x1_) return left_ ? left_->derivative(x, k) : 0.0;
  if (x > x2_) return right_ ? right_->derivative(x, k) : 0.0;
  require(k >= 0 && k <= 2, "derivative order 0..2", "k", k);
  return 0.0;
}

double PiecewisePower::one_sided(double x, int k, Side side) const {
  const bool use_left = side == Side::left ? x <= x1_ : x < x1_;
  const bool use_right = side == Side::left ? x > x2_ : x >= x2_;
  // At a breakpoint the base is exactly 0; evaluating slope * x - offset there
  // leaves a rounding residue that small exponents would amplify.
  auto eval = [&](const std::optional<PowerPiece>& p, double breakpoint) {
    if (!p) return 0.0;
    return x == breakpoint ? piece_derivative(*p, 0.0, k) : p->derivative(x, k);
  };
  if (use_left) return eval(left_, x1_);
  if (use_right) return eval(right_, x2_);
  require(k >= 0 && k <= 2, "derivative order 0..2", "k", k);
  return 0.0;
}

PiecewisePower::Sup PiecewisePower::sup_abs(double a, double b) const {
  require(a <= b, "a <= b", "a", a);
  const double ua = std::abs(value(a));
  const double ub = std::abs(value(b));
  return ua >= ub ? Sup{ua, a} : Sup{ub, b};
}

PiecewisePower example22_family(double B, double epsilon, double c1, double c2) {
  require(c1 < c2, "c1 < c2", "c1", c1);
  const double M = comparison_bound_m(1, B, epsilon);
  const double p = 2.0 / (1.0 - epsilon);
  return PiecewisePower(PowerPiece{M, -1.0, -c1, p}, PowerPiece{M, 1.0, c2, p}, c1, c2, 2);
}

PiecewisePower example25_family(double B, double alpha, double c1, double c2) {
  require(B > 0.0, "B > 0", "B", B);
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  require(c1 < c2, "c1 < c2", "c1", c1);
  const double p = 1.0 / (1.0 - alpha);
  const double amp = std::pow(1.0 - alpha, p);
  return PiecewisePower(PowerPiece{-amp, -B, -c1, p}, PowerPiece{amp, B, c2, p}, c1 / B, c2 / B, 1);
}

// --- radial comparison function -------------------------------------------------

RadialComparison::RadialComparison(int n, double B, double epsilon)
    : n_(n), B_(B), eps_(epsilon), M_(comparison_bound_m(n, B, epsilon)), p_(2.0 / (1.0 - epsilon)) {}

RadialComparison::RadialComparison(const InequalityParams& p)
    : RadialComparison(p.n(), p.B(), p.epsilon()) {}

namespace {

double norm_of(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

double RadialComparison::value(std::span<const double> x) const {
  require(static_cast<int>(x.size()) == n_, "point dimension == n", "dimension",
          static_cast<double>(x.size()));
  return M_ * std::pow(norm_of(x), p_);
}

std::vector<double> RadialComparison::gradient(std::span<const double> x) const {
  const double r = norm_of(x);
  const double c = M_ * p_ * std::pow(r, p_ - 2.0);
  std::vector<double> g(x.begin(), x.end());
  for (double& v : g) v *= c;
  return g;
}

double RadialComparison::laplacian(std::span<const double> x) const {
  return M_ * p_ * (p_ + n_ - 2.0) * std::pow(norm_of(x), p_ - 2.0);
}

double RadialComparison::residual(std::span<const double> x) const {
  return laplacian(x) - B_ * std::pow(std::abs(value(x)), eps_);
}

RadialComparison radial_comparison(const InequalityParams& p) { return RadialComparison(p); }

// --- Explicit disk ------------------------------------------------------------------------

namespace {

PiecewisePower example44_piecewise(double alpha, double b) {
  require(alpha > 0.0 && alpha < 1.0, "0 < alpha < 1", "alpha", alpha);
  require(b > 0.0, "b > 0", "b", b);
  const double one_m = 1.0 - alpha;
  const PowerPiece right{1.0, 2.0 * one_m, -std::pow(b, one_m), 1.0 / one_m};
  const double x0 = right.root();
  return PiecewisePower(std::nullopt, right, x0, x0, 1);
}

}  // namespace

EscapeProfile::EscapeProfile(double alpha, double b)
    : alpha_(alpha), b_(b), u_(example44_piecewise(alpha, b)) {}

double EscapeProfile::x0() const { return u_.x2(); }

double EscapeProfile::escape_abscissa(double S) const {
  require(S > 0.0, "S > 0", "S", S);
  const double one_m = 1.0 - alpha_;
  return (std::pow(S, one_m) - std::pow(b_, one_m)) / (2.0 * one_m);
}

ExplicitDisk example44_disk(double b, double alpha, const PolarGrid& grid, std::optional<double> S) {
  const double height = S ? *S : s_alpha(alpha);
  require(height > 0.0, "S > 0", "S", height);
  require(b > 0.0 && b < height, "0 < b < S", "b", b);
  EscapeProfile profile(alpha, b);
  const double escape = profile.escape_abscissa(height);
  if (!(grid.radius() < escape)) {
    throw InvalidParameter("u reaches S = " + fmt12(height) + " at x = " + fmt12(escape) +
                           "; the domain radius " + fmt12(grid.radius()) +
                           " must be below this escape abscissa");
  }
  ComplexField z1 = ComplexField::sample(grid, [](cplx z) { return z; });
  ComplexField z2 = ComplexField::sample(grid, [&profile](cplx z) { return cplx(profile.value(z.real())); });
  return ExplicitDisk{profile, std::move(z1), std::move(z2), height};
}

}  // namespace dbarlab
