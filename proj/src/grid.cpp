#include "dbarlab/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dbarlab/error.hpp"
#include "dbarlab/io.hpp"

namespace dbarlab {

PolarGrid::PolarGrid(double radius, int n_r, int n_t) : radius_(radius), n_r_(n_r), n_t_(n_t) {
  require(std::isfinite(radius) && radius > 0.0, "radius > 0", "radius", radius);
  require(n_r >= 8, "n_r >= 8", "n_r", n_r);
  require(n_t >= 16, "n_t >= 16", "n_t", n_t);
}

double PolarGrid::dtheta() const { return 2.0 * std::numbers::pi / n_t_; }

std::size_t PolarGrid::index(int ring, int t) const {
  if (ring == 0) return 0;
  const int tt = ((t % n_t_) + n_t_) % n_t_;
  return 1 + static_cast<std::size_t>(ring - 1) * n_t_ + tt;
}

int PolarGrid::ring_of(std::size_t idx) const {
  return idx == 0 ? 0 : static_cast<int>((idx - 1) / n_t_) + 1;
}

int PolarGrid::theta_index_of(std::size_t idx) const {
  return idx == 0 ? 0 : static_cast<int>((idx - 1) % n_t_);
}

double PolarGrid::theta(int t) const { return dtheta() * t; }

cplx PolarGrid::point(std::size_t idx) const {
  if (idx == 0) return {0.0, 0.0};
  return std::polar(r(ring_of(idx)), theta(theta_index_of(idx)));
}

double PolarGrid::cell_inner(int ring) const { return ring == 0 ? 0.0 : r(ring) - 0.5 * h(); }

double PolarGrid::cell_outer(int ring) const {
  return ring == n_r_ ? radius_ : r(ring) + 0.5 * h();
}

double PolarGrid::cell_area(int ring) const {
  const double lo = cell_inner(ring);
  const double hi = cell_outer(ring);
  if (ring == 0) return std::numbers::pi * hi * hi;
  return 0.5 * (hi * hi - lo * lo) * dtheta();
}

// --- ComplexField -------------------------------------------------------------

ComplexField::ComplexField(PolarGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    throw InvalidParameter("field has " + std::to_string(values_.size()) +
                           " values but the grid has " + std::to_string(grid_.size()) + " nodes");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i].real()) || !std::isfinite(values_[i].imag())) {
      throw NumericalFailure("non-finite field value at node " + std::to_string(i));
    }
  }
}

ComplexField ComplexField::sample(const PolarGrid& grid, const std::function<cplx(cplx)>& fn) {
  std::vector<cplx> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid.point(i));
  return ComplexField(grid, std::move(v));
}

ComplexField ComplexField::constant(const PolarGrid& grid, cplx value) {
  return ComplexField(grid, std::vector<cplx>(grid.size(), value));
}

ComplexField ComplexField::map(const std::function<cplx(cplx, cplx)>& fn) const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(grid_.point(i), values_[i]);
  return ComplexField(grid_, std::move(v));
}

namespace {

void require_same_grid(const ComplexField& a, const ComplexField& b) {
  if (!(a.grid() == b.grid())) throw InvalidParameter("fields live on different grids");
}

template <class Op>
ComplexField zip(const ComplexField& a, const ComplexField& b, Op op) {
  require_same_grid(a, b);
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
  return ComplexField(a.grid(), std::move(v));
}

}  // namespace

ComplexField operator+(const ComplexField& a, const ComplexField& b) {
  return zip(a, b, [](cplx x, cplx y) { return x + y; });
}

ComplexField operator-(const ComplexField& a, const ComplexField& b) {
  return zip(a, b, [](cplx x, cplx y) { return x - y; });
}

ComplexField operator*(cplx s, const ComplexField& a) {
  return a.map([s](cplx, cplx v) { return s * v; });
}

// --- stencils -----------------------------------------------------------------

namespace {

struct AngularWeights {
  double a1, a2;      // first derivative: a1 (f+1 - f-1) + a2 (f+2 - f-2)
  double b0, b1, b2;  // second derivative: b0 f + b1 (f+1 + f-1) + b2 (f+2 + f-2)
};

// Weights are fixed by exactness on e^{ik theta}, k = 1, 2 (and k = 0 for the
// second derivative). sin^2 forms keep the small-dtheta system well conditioned.
AngularWeights angular_weights(double d) {
  AngularWeights w{};
  {
    const double m11 = 2.0 * std::sin(d), m12 = 2.0 * std::sin(2.0 * d);
    const double m21 = 2.0 * std::sin(2.0 * d), m22 = 2.0 * std::sin(4.0 * d);
    const double det = m11 * m22 - m12 * m21;
    w.a1 = (1.0 * m22 - m12 * 2.0) / det;
    w.a2 = (m11 * 2.0 - m21 * 1.0) / det;
  }
  {
    auto s2 = [](double x) { return std::sin(x) * std::sin(x); };
    const double m11 = 4.0 * s2(0.5 * d), m12 = 4.0 * s2(d);
    const double m21 = 4.0 * s2(d), m22 = 4.0 * s2(2.0 * d);
    const double det = m11 * m22 - m12 * m21;
    w.b1 = (1.0 * m22 - m12 * 4.0) / det;
    w.b2 = (m11 * 4.0 - m21 * 1.0) / det;
    w.b0 = -2.0 * (w.b1 + w.b2);
  }
  return w;
}

struct PolarDerivatives {
  std::vector<cplx> fr, frr, ft, ftt;  // ring nodes only, ring-major
};

PolarDerivatives polar_derivatives(const ComplexField& f) {
  const PolarGrid& g = f.grid();
  const int nr = g.n_r(), nt = g.n_t();
  const double h = g.h();
  const AngularWeights w = angular_weights(g.dtheta());
  PolarDerivatives d;
  d.fr.resize(g.ring_nodes());
  d.frr.resize(g.ring_nodes());
  d.ft.resize(g.ring_nodes());
  d.ftt.resize(g.ring_nodes());
  // Ring 0 means the origin for every theta index.
  auto at = [&](int ring, int t) { return f.at(ring, t); };
  for (int i = 1; i <= nr; ++i) {
    for (int t = 0; t < nt; ++t) {
      const std::size_t k = g.index(i, t) - 1;
      // f_r enters divided by r, so near the origin it needs O(h^3) accuracy
      // to keep the Laplacian second order; rings 1..n_r-2 use fourth-order stencils.
      if (i == 1) {
        d.fr[k] = (-3.0 * at(0, t) - 10.0 * at(1, t) + 18.0 * at(2, t) - 6.0 * at(3, t) +
                   at(4, t)) / (12.0 * h);
      } else if (i < nr - 1) {
        d.fr[k] = (at(i - 2, t) - 8.0 * at(i - 1, t) + 8.0 * at(i + 1, t) - at(i + 2, t)) /
                  (12.0 * h);
      }
      if (i < nr) {
        if (i == nr - 1) d.fr[k] = (at(i + 1, t) - at(i - 1, t)) / (2.0 * h);
        d.frr[k] = (at(i + 1, t) - 2.0 * at(i, t) + at(i - 1, t)) / (h * h);
      } else {
        d.fr[k] = (3.0 * at(i, t) - 4.0 * at(i - 1, t) + at(i - 2, t)) / (2.0 * h);
        d.frr[k] =
            (2.0 * at(i, t) - 5.0 * at(i - 1, t) + 4.0 * at(i - 2, t) - at(i - 3, t)) / (h * h);
      }
      const cplx p1 = at(i, t + 1), m1 = at(i, t - 1), p2 = at(i, t + 2), m2 = at(i, t - 2);
      d.ft[k] = w.a1 * (p1 - m1) + w.a2 * (p2 - m2);
      d.ftt[k] = w.b0 * at(i, t) + w.b1 * (p1 + m1) + w.b2 * (p2 + m2);
    }
  }
  return d;
}

// Mean over ring i of f e^{i s theta}.
cplx ring_moment(const ComplexField& f, int ring, int s) {
  const PolarGrid& g = f.grid();
  cplx acc = 0.0;
  for (int t = 0; t < g.n_t(); ++t) acc += f.at(ring, t) * std::polar(1.0, s * g.theta(t));
  return acc / static_cast<double>(g.n_t());
}

// Wirtinger derivative at the origin: the first angular moment over r is the
// derivative plus O(r^2), removed by Richardson extrapolation from rings 1, 2.
cplx origin_wirtinger(const ComplexField& f, int s) {
  const double h = f.grid().h();
  const cplx c1 = ring_moment(f, 1, s) / h;
  const cplx c2 = ring_moment(f, 2, s) / (2.0 * h);
  return (4.0 * c1 - c2) / 3.0;
}

ComplexField wirtinger(const ComplexField& f, int s) {
  const PolarGrid& g = f.grid();
  const PolarDerivatives d = polar_derivatives(f);
  std::vector<cplx> out(g.size());
  out[0] = origin_wirtinger(f, s);
  const cplx I(0.0, 1.0);
  for (std::size_t idx = 1; idx < g.size(); ++idx) {
    const int i = g.ring_of(idx);
    const double r = g.r(i);
    const double th = g.theta(g.theta_index_of(idx));
    const std::size_t k = idx - 1;
    // s = +1: dbar = e^{i th} (f_r + i f_t / r) / 2; s = -1: d = e^{-i th} (f_r - i f_t / r) / 2.
    out[idx] = 0.5 * std::polar(1.0, s * th) * (d.fr[k] + static_cast<double>(s) * I * d.ft[k] / r);
  }
  return ComplexField(g, std::move(out));
}

}  // namespace

ComplexField wirtinger_dbar(const ComplexField& f) { return wirtinger(f, +1); }

ComplexField wirtinger_d(const ComplexField& f) { return wirtinger(f, -1); }

ComplexField laplacian(const ComplexField& f) {
  const PolarGrid& g = f.grid();
  const PolarDerivatives d = polar_derivatives(f);
  std::vector<cplx> out(g.size());
  const double h = g.h();
  const cplx f0 = f.origin();
  const cplx l1 = 4.0 * (ring_moment(f, 1, 0) - f0) / (h * h);
  const cplx l2 = 4.0 * (ring_moment(f, 2, 0) - f0) / (4.0 * h * h);
  out[0] = (4.0 * l1 - l2) / 3.0;
  for (std::size_t idx = 1; idx < g.size(); ++idx) {
    const double r = g.r(g.ring_of(idx));
    const std::size_t k = idx - 1;
    out[idx] = d.frr[k] + d.fr[k] / r + d.ftt[k] / (r * r);
  }
  return ComplexField(g, std::move(out));
}

PlanarGradient gradient(const ComplexField& f) {
  const ComplexField dz = wirtinger_d(f);
  const ComplexField dzb = wirtinger_dbar(f);
  const cplx I(0.0, 1.0);
  return PlanarGradient{dz + dzb, I * (dz - dzb)};
}

FieldExtremum sup_abs(const ComplexField& f, const std::function<bool(std::size_t)>& keep) {
  FieldExtremum best{};
  bool found = false;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (keep && !keep(i)) continue;
    const double a = std::abs(f[i]);
    if (!found || a > best.value) {
      best = {a, i};
      found = true;
    }
  }
  return best;
}

cplx integrate(const ComplexField& f, double region) {
  const PolarGrid& g = f.grid();
  require(region > 0.0, "region > 0", "region", region);
  require(region <= g.radius() * (1.0 + 1e-12), "region <= grid radius", "region", region);
  cplx acc = 0.0;
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const int ring = g.ring_of(idx);
    const double lo = g.cell_inner(ring);
    const double hi = std::min(g.cell_outer(ring), region);
    if (hi <= lo) continue;
    const double area =
        ring == 0 ? std::numbers::pi * hi * hi : 0.5 * (hi * hi - lo * lo) * g.dtheta();
    acc += area * f[idx];
  }
  return acc;
}

std::string to_csv(const ComplexField& f) {
  const PolarGrid& g = f.grid();
  std::ostringstream os;
  os << "index,ring,theta_index,x,y,re,im\n";
  for (std::size_t idx = 0; idx < g.size(); ++idx) {
    const cplx z = g.point(idx);
    os << idx << ',' << g.ring_of(idx) << ',' << g.theta_index_of(idx) << ',' << fmt12(z.real())
       << ',' << fmt12(z.imag()) << ',' << fmt12(f[idx].real()) << ',' << fmt12(f[idx].imag())
       << '\n';
  }
  return os.str();
}

}  // namespace dbarlab
