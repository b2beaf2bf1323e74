#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dbarlab/grid.hpp"

namespace dbarlab {

/// Uniform Cartesian lattice x = center + h k, k in {-K..K}^n, masked to the
/// closed ball of the given radius (h = radius / K).
class BallLattice {
 public:
  BallLattice(int n, int K, double radius = 1.0, std::vector<double> center = {});

  int n() const { return n_; }
  int K() const { return K_; }
  double h() const { return radius_ / K_; }
  double radius() const { return radius_; }
  const std::vector<double>& center() const { return center_; }

  /// Number of box nodes (2K+1)^n; indices range over the full box.
  std::size_t box_size() const { return box_size_; }
  std::size_t center_index() const { return center_index_; }

  std::vector<int> offsets(std::size_t idx) const;
  std::vector<double> point(std::size_t idx) const;
  /// Distance from the lattice center.
  double radial(std::size_t idx) const;

  bool in_ball(std::size_t idx) const { return mask_[idx]; }
  /// In the ball with all 2n axis neighbours also in the ball.
  bool is_interior(std::size_t idx) const { return interior_[idx]; }
  /// Index of the axis neighbour, or box_size() when it leaves the box.
  std::size_t neighbor(std::size_t idx, int axis, int step) const;

  /// Masked nodes in increasing index order.
  const std::vector<std::size_t>& nodes() const { return nodes_; }

  bool operator==(const BallLattice& o) const {
    return n_ == o.n_ && K_ == o.K_ && radius_ == o.radius_ && center_ == o.center_;
  }

 private:
  int n_;
  int K_;
  double radius_;
  std::vector<double> center_;
  std::size_t box_size_ = 1;
  std::size_t center_index_ = 0;
  std::vector<std::size_t> stride_;
  std::vector<char> mask_;
  std::vector<char> interior_;
  std::vector<std::size_t> nodes_;
};

/// Real samples on a BallLattice; entries outside the ball are stored as 0 and never read.
class ScalarFieldND {
 public:
  ScalarFieldND(BallLattice lattice, std::vector<double> values);

  static ScalarFieldND sample(const BallLattice& lattice,
                              const std::function<double(std::span<const double>)>& fn);

  const BallLattice& lattice() const { return lattice_; }
  double operator[](std::size_t idx) const { return values_[idx]; }
  std::span<const double> values() const { return values_; }

 private:
  BallLattice lattice_;
  std::vector<double> values_;
};

/// (2n+1)-point Laplacian on interior nodes; other entries are 0.
ScalarFieldND laplacian(const ScalarFieldND& u);
/// |grad u|^2 by central differences on interior nodes; other entries are 0.
ScalarFieldND gradient_norm2(const ScalarFieldND& u);

/// max |u| over in-ball nodes; ties go to the lowest index.
FieldExtremum sup_abs(const ScalarFieldND& u);
/// max u (signed) over in-ball nodes; ties go to the lowest index.
FieldExtremum sup_value(const ScalarFieldND& u);

/// Sum of h^n u over in-ball nodes within `region` of the center.
double integrate(const ScalarFieldND& u, double region);

/// CSV with header index,x1..xn,value over in-ball nodes.
std::string to_csv(const ScalarFieldND& u);

}  // namespace dbarlab
