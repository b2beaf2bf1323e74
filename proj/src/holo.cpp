#include "dbarlab/holo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dbarlab/io.hpp"
#include "dbarlab/params.hpp"

namespace dbarlab {

PowerSeries::PowerSeries(std::vector<cplx> coefficients, double radius)
    : coeffs_(std::move(coefficients)), radius_(radius) {
  require(radius > 0.0, "radius > 0", "radius", radius);
  if (coeffs_.empty()) coeffs_.push_back(0.0);
  for (cplx c : coeffs_) {
    require(std::isfinite(c.real()) && std::isfinite(c.imag()), "finite coefficients");
  }
}

PowerSeries PowerSeries::identity(double radius) { return PowerSeries({0.0, 1.0}, radius); }

cplx PowerSeries::coefficient(int k) const {
  return k >= 0 && k <= degree() ? coeffs_[static_cast<std::size_t>(k)] : cplx(0.0);
}

cplx PowerSeries::operator()(cplx z) const {
  cplx acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

cplx PowerSeries::derivative_at(cplx z) const {
  cplx acc = 0.0;
  for (int k = degree(); k >= 1; --k) acc = acc * z + static_cast<double>(k) * coeffs_[k];
  return acc;
}

PowerSeries PowerSeries::derivative() const {
  std::vector<cplx> d;
  for (int k = 1; k <= degree(); ++k) d.push_back(static_cast<double>(k) * coeffs_[k]);
  return PowerSeries(std::move(d), radius_);
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  std::vector<cplx> c(coeffs_.size() + o.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return PowerSeries(std::move(c), std::min(radius_, o.radius_));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  std::vector<cplx> c(std::max(coeffs_.size(), o.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = coefficient(static_cast<int>(i)) + o.coefficient(static_cast<int>(i));
  }
  return PowerSeries(std::move(c), std::min(radius_, o.radius_));
}

PowerSeries PowerSeries::operator-(cplx w) const {
  std::vector<cplx> c = coeffs_;
  c[0] -= w;
  return PowerSeries(std::move(c), radius_);
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
  // Horner in the ring of polynomials.
  PowerSeries acc({coeffs_.back()}, inner.radius_);
  for (auto it = std::next(coeffs_.rbegin()); it != coeffs_.rend(); ++it) {
    acc = acc * inner;
    acc.coeffs_[0] += *it;
  }
  acc.radius_ = inner.radius_;
  return acc;
}

PowerSeries PowerSeries::rescale(cplx factor, cplx scale) const {
  require(std::abs(scale) > 0.0, "scale != 0", "|scale|", std::abs(scale));
  std::vector<cplx> c(coeffs_.size());
  cplx p = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = factor * coeffs_[k] * p;
    p *= scale;
  }
  return PowerSeries(std::move(c), radius_ / std::abs(scale));
}

Holomorphic PowerSeries::as_function() const {
  return Holomorphic{[p = *this](cplx z) { return p(z); },
                     [p = *this](cplx z) { return p.derivative_at(z); }};
}

// --- argument principle --------------------------------------------------------------

void ContourSpec::validate() const {
  require(radius > 0.0, "contour radius > 0", "radius", radius);
  require(n_samples >= 64, "n_samples >= 64", "n_samples", n_samples);
}

cplx ContourSpec::sample(int k) const {
  return center + std::polar(radius, 2.0 * std::numbers::pi * k / n_samples);
}

nlohmann::json ContourSpec::to_json() const {
  return {{"center", complex_json(center)}, {"radius", round12(radius)}, {"n_samples", n_samples}};
}

nlohmann::json WindingCertificate::to_json() const {
  return {{"contour", contour.to_json()},
          {"count", count},
          {"min_abs_on_contour", round12(min_abs_on_contour)}};
}

WindingCertificate winding_certificate(const Holomorphic& f, const ContourSpec& gamma) {
  gamma.validate();
  WindingCertificate cert;
  cert.contour = gamma;
  double min_abs = std::numeric_limits<double>::infinity(), max_abs = 0.0;
  cplx sum = 0.0;
  for (int k = 0; k < gamma.n_samples; ++k) {
    const cplx z = gamma.sample(k);
    const cplx v = f.value(z);
    min_abs = std::min(min_abs, std::abs(v));
    max_abs = std::max(max_abs, std::abs(v));
    if (std::abs(v) > 0.0) sum += f.derivative(z) / v * (z - gamma.center);
  }
  cert.min_abs_on_contour = min_abs;
  if (!(min_abs > 1e-12 * std::max(1.0, max_abs))) {
    throw ContourError("min |f| on the contour is " + fmt12(min_abs) +
                       ": a zero lies too close to the contour of radius " + fmt12(gamma.radius));
  }
  cert.raw = (sum / static_cast<double>(gamma.n_samples)).real();
  const double rounded = std::round(cert.raw);
  if (std::abs(cert.raw - rounded) > 0.1) {
    throw ContourError("argument-principle quadrature " + fmt12(cert.raw) +
                       " is not within 0.1 of an integer; raise n_samples (now " +
                       std::to_string(gamma.n_samples) + ")");
  }
  cert.count = static_cast<int>(rounded);
  return cert;
}

int winding_zero_count(const Holomorphic& f, const ContourSpec& gamma) {
  return winding_certificate(f, gamma).count;
}

int winding_zero_count(const PowerSeries& f, const ContourSpec& gamma) {
  return winding_zero_count(f.as_function(), gamma);
}

// --- Schwarz-Pick bounds ----------------------------------------------------------------

namespace {

/// Hypotheses shared by the Schwarz-Pick bound and the injective inverse.
cplx check_unit_disk_hypotheses(const Holomorphic& f, double delta, double eta) {
  require(delta > 0.0 && delta <= 1.0, "0 < delta <= 1", "delta", delta);
  require(eta > 0.0 && eta < delta, "0 < eta < delta", "eta", eta);
  const double f0 = std::abs(f.value(0.0));
  require(f0 <= 1e-12, "f(0) = 0", "|f(0)|", f0);
  const cplx d0 = f.derivative(0.0);
  require(std::abs(std::abs(d0) - delta) <= 1e-12 * std::max(1.0, delta), "|f'(0)| = delta",
          "|f'(0)|", std::abs(d0));
  const ContourSpec unit{0.0, 1.0, kHypothesisSamples};
  double worst = 0.0;
  for (int k = 0; k < unit.n_samples; ++k) worst = std::max(worst, std::abs(f.value(unit.sample(k))));
  require(worst <= 1.0 + 1e-12, "|f| <= 1 on the sampled unit circle", "max sampled |f|", worst);
  return d0;
}

}  // namespace

VerificationReport schwarz_pick_lower(const Holomorphic& f, double delta, double eta) {
  check_unit_disk_hypotheses(f, delta, eta);
  const double c = (delta - eta) / (1.0 - eta * delta);
  const int n_radii = 64, n_angles = 128;
  double linear = std::numeric_limits<double>::infinity();
  double nonlinear = std::numeric_limits<double>::infinity();
  cplx linear_at = 0.0, nonlinear_at = 0.0;
  int violations = 0;
  nlohmann::json first_violation = nullptr;
  for (int i = 1; i <= n_radii; ++i) {
    const double rho = i < n_radii ? eta * i / n_radii : eta * (1.0 - 1e-9);
    const double sharp = (delta - rho) / (1.0 - rho * delta);
    for (int j = 0; j < n_angles; ++j) {
      const cplx z = std::polar(rho, 2.0 * std::numbers::pi * (j + 0.5 * (i % 2)) / n_angles);
      const double q = std::abs(f.value(z)) / rho;
      if (q - c < linear) {
        linear = q - c;
        linear_at = z;
      }
      if (q - sharp < nonlinear) {
        nonlinear = q - sharp;
        nonlinear_at = z;
      }
      if (std::min(q - c, q - sharp) <= -1e-12 && ++violations == 1) {
        first_violation = {{"point", complex_json(z)}, {"ratio", round12(q)}};
      }
    }
  }
  VerificationReport r;
  r.check_id = "schwarz_pick.lower";
  r.params = {{"delta", round12(delta)}, {"eta", round12(eta)}, {"samples", n_radii * n_angles}};
  // The sharp bound is attained by extremal maps, so margins are compared to -tolerance.
  r.margin = std::min(linear, nonlinear);
  r.tolerance = 1e-12;
  r.witness = {{"linear_min_at", complex_json(linear_at)}, {"sharp_min_at", complex_json(nonlinear_at)}};
  r.details = {{"linear_margin", round12(linear)},
               {"sharp_margin", round12(nonlinear)},
               {"linear_coefficient", round12(c)},
               {"violations", violations},
               {"first_violation", first_violation}};
  r.decide();
  r.add_note("hypothesis f(D_1) in D_1 verified on " + std::to_string(kHypothesisSamples) +
             " boundary samples (sampled, not proven)");
  return r;
}

VerificationReport schwarz_pick_lower(const PowerSeries& f, double delta, double eta) {
  return schwarz_pick_lower(f.as_function(), delta, eta);
}

// --- inverses ----------------------------------------------------------------------------

cplx newton_solve(const Holomorphic& f, cplx w, cplx z0, int max_iter) {
  const double target = 1e-13 * std::max(1.0, std::abs(w));
  cplx z = z0;
  double res = std::abs(f.value(z) - w);
  int it = 0;
  for (; it < max_iter && res > 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(w));
       ++it) {
    const cplx d = f.derivative(z);
    if (std::abs(d) == 0.0) break;
    const cplx step = (f.value(z) - w) / d;
    double t = 1.0;
    cplx trial = z - step;
    double trial_res = std::abs(f.value(trial) - w);
    while (trial_res >= res && t > 1e-9) {
      t *= 0.5;
      trial = z - t * step;
      trial_res = std::abs(f.value(trial) - w);
    }
    if (trial_res >= res) break;
    z = trial;
    res = trial_res;
  }
  if (!(res <= target)) {
    throw NumericalFailure("Newton did not converge for w = " + fmt12(w.real()) + "+" +
                           fmt12(w.imag()) + "i: residual " + fmt12(res) + " after " +
                           std::to_string(it) + " iterations from |z0| = " + fmt12(std::abs(z0)));
  }
  return z;
}

InjectiveInverse::InjectiveInverse(Holomorphic f, double delta, double eta)
    : f_(std::move(f)), delta_(delta), eta_(eta), s_(0.0) {
  fprime0_ = check_unit_disk_hypotheses(f_, delta, eta);
  s_ = schwarz_pick_radius(delta, eta);
}

cplx InjectiveInverse::operator()(cplx w) const {
  require(std::abs(w) < s_, "|w| < s (guaranteed range)", "|w|", std::abs(w));
  const cplx z = newton_solve(f_, w, w / fprime0_);
  if (!(std::abs(z) < eta_)) {
    throw NumericalFailure("Newton converged to |z| = " + fmt12(std::abs(z)) +
                           " outside D_eta, eta = " + fmt12(eta_));
  }
  return z;
}

cplx InjectiveInverse::derivative(cplx w) const { return 1.0 / f_.derivative((*this)(w)); }

WindingCertificate InjectiveInverse::certify(cplx w) const {
  require(std::abs(w) < s_, "|w| < s (guaranteed range)", "|w|", std::abs(w));
  const Holomorphic shifted{[this, w](cplx z) { return f_.value(z) - w; }, f_.derivative};
  WindingCertificate cert = winding_certificate(shifted, ContourSpec{0.0, 0.999 * eta_, 1024});
  if (cert.count != 1) {
    throw NumericalFailure("injectivity certificate counted " + std::to_string(cert.count) +
                           " preimages of w in D_eta'; expected exactly 1");
  }
  return cert;
}

InjectiveInverse injective_inverse(const Holomorphic& f, double delta, double eta) {
  return InjectiveInverse(f, delta, eta);
}

InjectiveInverse injective_inverse(const PowerSeries& f, double delta, double eta) {
  return InjectiveInverse(f.as_function(), delta, eta);
}

namespace {

PowerSeries checked_z1(const PowerSeries& z1, double r) {
  require(r > inverse_radius_threshold(), "r > 4*sqrt(2)/3 ~ 1.8856", "r", r);
  require(std::abs(z1(0.0)) <= 1e-12, "Z1(0) = 0", "|Z1(0)|", std::abs(z1(0.0)));
  require(std::abs(z1.derivative_at(0.0) - 1.0) <= 1e-12, "Z1'(0) = 1", "|Z1'(0) - 1|",
          std::abs(z1.derivative_at(0.0) - 1.0));
  const ContourSpec edge{0.0, r, kHypothesisSamples};
  double worst = 0.0;
  for (int k = 0; k < edge.n_samples; ++k) worst = std::max(worst, std::abs(z1(edge.sample(k))));
  require(worst < 2.0, "|Z1| < 2 on the sampled circle |z| = r", "max sampled |Z1|", worst);
  return z1;
}

}  // namespace

NormalFormInverse::NormalFormInverse(PowerSeries z1, double r)
    : z1_(checked_z1(z1, r)),
      r_(r),
      psi_(injective_inverse(z1_.rescale(0.5, r), r / 2.0, 3.0 * r / 8.0)) {}

cplx NormalFormInverse::operator()(cplx z) const {
  require(std::abs(z) <= 1.0, "|z| <= 1", "|z|", std::abs(z));
  return r_ * psi_(0.5 * z);
}

cplx NormalFormInverse::derivative(cplx z) const { return 1.0 / z1_.derivative_at((*this)(z)); }

VerificationReport NormalFormInverse::certificate() const {
  const int n_angles = 1024;
  double worst = 0.0, max_phi = 0.0;
  cplx worst_at = 0.0;
  for (double rho : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (int k = 0; k < (rho == 0.0 ? 1 : n_angles); ++k) {
      const cplx z = std::polar(rho, 2.0 * std::numbers::pi * k / n_angles);
      const cplx p = (*this)(z);
      max_phi = std::max(max_phi, std::abs(p));
      const double e = std::abs(z1_(p) - z);
      if (e > worst) {
        worst = e;
        worst_at = z;
      }
    }
  }
  nlohmann::json certs = nlohmann::json::array();
  for (int k = 0; k < 16; ++k) {
    certs.push_back(psi_.certify(std::polar(0.5, 2.0 * std::numbers::pi * k / 16)).to_json());
  }
  VerificationReport rep;
  rep.check_id = "normal_form.inverse";
  rep.params = {{"r", round12(r_)}, {"eta", round12(psi_.eta())}, {"s", round12(psi_.s())},
                {"degree", z1_.degree()}};
  rep.margin = -worst;
  rep.tolerance = 1e-10;
  rep.witness = {{"worst_point", complex_json(worst_at)}};
  rep.details = {{"max_roundtrip_error", round12(worst)},
                 {"max_abs_phi", round12(max_phi)},
                 {"phi_0", complex_json((*this)(0.0))},
                 {"phi_prime_0", complex_json(derivative(0.0))},
                 {"injectivity_certificates", certs}};
  rep.decide();
  if (!(max_phi < r_)) {
    rep.status = CheckStatus::failed;
    rep.add_note("|phi| reached r");
  }
  rep.add_note("hypothesis |Z1| < 2 on |z| = r verified on " + std::to_string(kHypothesisSamples) +
               " samples (sampled, not proven)");
  return rep;
}

NormalFormInverse lemma33_inverse(const PowerSeries& z1, double r) { return NormalFormInverse(z1, r); }

}  // namespace dbarlab
