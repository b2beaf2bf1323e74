#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace dbarlab {

using cplx = std::complex<double>;

/// Polar lattice over the closed disk of a given radius.
///
/// Ring k = 1..n_r sits at r_k = k h with h = radius / n_r, so the outermost
/// ring lies on the boundary circle. Each ring carries n_t nodes at
/// theta_j = 2 pi j / n_t. The origin is a single node (index 0); ring nodes
/// follow ring-major: index = 1 + (k-1) n_t + j.
///
/// Cells: the origin owns the disk of radius h/2, ring k owns the annular
/// sector [r_k - h/2, r_k + h/2] (clipped to the radius on the last ring).
class PolarGrid {
 public:
  PolarGrid(double radius, int n_r, int n_t);

  double radius() const { return radius_; }
  int n_r() const { return n_r_; }
  int n_t() const { return n_t_; }
  double h() const { return radius_ / n_r_; }
  double dtheta() const;
  std::size_t size() const { return 1 + static_cast<std::size_t>(n_r_) * n_t_; }
  std::size_t ring_nodes() const { return static_cast<std::size_t>(n_r_) * n_t_; }

  std::size_t index(int ring, int t) const;
  int ring_of(std::size_t idx) const;
  int theta_index_of(std::size_t idx) const;

  double r(int ring) const { return ring * h(); }
  double theta(int t) const;
  cplx point(std::size_t idx) const;

  double cell_inner(int ring) const;
  double cell_outer(int ring) const;
  /// Area of one cell on the ring (the whole origin disk for ring 0).
  double cell_area(int ring) const;

  bool is_boundary(std::size_t idx) const { return ring_of(idx) == n_r_; }
  bool is_interior(std::size_t idx) const { return !is_boundary(idx); }

  bool operator==(const PolarGrid&) const = default;

 private:
  double radius_;
  int n_r_;
  int n_t_;
};

/// Complex samples on a PolarGrid. Immutable after construction; every value is finite.
class ComplexField {
 public:
  ComplexField(PolarGrid grid, std::vector<cplx> values);

  static ComplexField sample(const PolarGrid& grid, const std::function<cplx(cplx)>& fn);
  static ComplexField constant(const PolarGrid& grid, cplx value);

  const PolarGrid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t idx) const { return values_[idx]; }
  cplx at(int ring, int t) const { return values_[grid_.index(ring, t)]; }
  cplx origin() const { return values_[0]; }

  /// Pointwise image under fn(z, value).
  ComplexField map(const std::function<cplx(cplx z, cplx v)>& fn) const;

 private:
  PolarGrid grid_;
  std::vector<cplx> values_;
};

ComplexField operator+(const ComplexField& a, const ComplexField& b);
ComplexField operator-(const ComplexField& a, const ComplexField& b);
ComplexField operator*(cplx s, const ComplexField& a);

// --- stencils ----------------------------------------------------------------
//
// Radial derivatives use central differences (fourth order for f_r away from
// the boundary, second-order one-sided on the boundary ring). Angular derivatives use five-point stencils whose weights make
// them exact on the Fourier modes e^{+-i theta}, e^{+-2i theta}, so all stencils
// reproduce polynomials of degree <= 2 in (x, y) exactly. The origin uses
// Richardson-extrapolated ring averages from rings 1 and 2.

/// d/dzbar = (d/dx + i d/dy) / 2.
ComplexField wirtinger_dbar(const ComplexField& f);
/// d/dz = (d/dx - i d/dy) / 2.
ComplexField wirtinger_d(const ComplexField& f);
/// Polar Laplacian u_rr + u_r / r + u_tt / r^2, applied to real and imaginary parts.
ComplexField laplacian(const ComplexField& f);

struct PlanarGradient {
  ComplexField dx;
  ComplexField dy;
};

PlanarGradient gradient(const ComplexField& f);

struct FieldExtremum {
  double value = 0.0;
  std::size_t index = 0;
};

/// max |f| over nodes (optionally only those passing `keep`); ties go to the lowest index.
FieldExtremum sup_abs(const ComplexField& f,
                      const std::function<bool(std::size_t)>& keep = nullptr);

/// Cell-area weighted sum over the cells of D_region (cells clipped at the region radius).
cplx integrate(const ComplexField& f, double region);

/// CSV with header index,ring,theta_index,x,y,re,im.
std::string to_csv(const ComplexField& f);

}  // namespace dbarlab
