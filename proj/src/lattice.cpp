#include "dbarlab/lattice.hpp"

#include <cmath>
#include <sstream>

#include "dbarlab/error.hpp"
#include "dbarlab/io.hpp"

namespace dbarlab {

namespace {

constexpr std::size_t kMaxBoxNodes = 20'000'000;

}  // namespace

BallLattice::BallLattice(int n, int K, double radius, std::vector<double> center)
    : n_(n), K_(K), radius_(radius), center_(std::move(center)) {
  require(n >= 1 && n <= 5, "1 <= n <= 5", "n", n);
  require(radius > 0.0 && std::isfinite(radius), "radius > 0", "radius", radius);
  require(K >= 1, "K >= 1", "K", K);
  require(n * h() <= 0.5 * radius, "n*h <= radius/2 (ball resolved)", "n*h", n * h());
  if (center_.empty()) center_.assign(n, 0.0);
  require(static_cast<int>(center_.size()) == n, "center has n coordinates", "center size",
          static_cast<double>(center_.size()));

  const std::size_t side = 2 * static_cast<std::size_t>(K) + 1;
  stride_.assign(n, 1);
  for (int a = 0; a < n; ++a) {
    stride_[a] = box_size_;
    if (box_size_ > kMaxBoxNodes / side) {
      throw InvalidParameter("lattice too large: (2K+1)^n exceeds " +
                             std::to_string(kMaxBoxNodes) + " nodes");
    }
    box_size_ *= side;
  }
  for (int a = 0; a < n; ++a) center_index_ += static_cast<std::size_t>(K) * stride_[a];

  mask_.assign(box_size_, 0);
  interior_.assign(box_size_, 0);
  // Integer test |k|^2 <= K^2 keeps the mask exactly symmetric.
  const long long K2 = static_cast<long long>(K) * K;
  for (std::size_t idx = 0; idx < box_size_; ++idx) {
    long long s = 0;
    for (int k : offsets(idx)) s += static_cast<long long>(k) * k;
    if (s <= K2) {
      mask_[idx] = 1;
      nodes_.push_back(idx);
    }
  }
  for (std::size_t idx : nodes_) {
    bool full = true;
    for (int a = 0; a < n && full; ++a) {
      for (int step : {-1, 1}) {
        const std::size_t j = neighbor(idx, a, step);
        if (j == box_size_ || !mask_[j]) full = false;
      }
    }
    interior_[idx] = full ? 1 : 0;
  }
}

std::vector<int> BallLattice::offsets(std::size_t idx) const {
  std::vector<int> k(n_);
  const std::size_t side = 2 * static_cast<std::size_t>(K_) + 1;
  for (int a = 0; a < n_; ++a) {
    k[a] = static_cast<int>(idx % side) - K_;
    idx /= side;
  }
  return k;
}

std::vector<double> BallLattice::point(std::size_t idx) const {
  const std::vector<int> k = offsets(idx);
  std::vector<double> x(n_);
  for (int a = 0; a < n_; ++a) x[a] = center_[a] + h() * k[a];
  return x;
}

double BallLattice::radial(std::size_t idx) const {
  double s = 0.0;
  for (int k : offsets(idx)) s += static_cast<double>(k) * k;
  return h() * std::sqrt(s);
}

std::size_t BallLattice::neighbor(std::size_t idx, int axis, int step) const {
  const std::size_t side = 2 * static_cast<std::size_t>(K_) + 1;
  const std::size_t digit = (idx / stride_[axis]) % side;
  const long long moved = static_cast<long long>(digit) + step;
  if (moved < 0 || moved >= static_cast<long long>(side)) return box_size_;
  return idx + static_cast<std::size_t>(moved - static_cast<long long>(digit)) * stride_[axis];
}

// --- ScalarFieldND -------------------------------------------------------------

ScalarFieldND::ScalarFieldND(BallLattice lattice, std::vector<double> values)
    : lattice_(std::move(lattice)), values_(std::move(values)) {
  if (values_.size() != lattice_.box_size()) {
    throw InvalidParameter("field size does not match the lattice box");
  }
  for (std::size_t idx : lattice_.nodes()) {
    if (!std::isfinite(values_[idx])) {
      throw NumericalFailure("non-finite field value at node " + std::to_string(idx));
    }
  }
}

ScalarFieldND ScalarFieldND::sample(const BallLattice& lattice,
                                    const std::function<double(std::span<const double>)>& fn) {
  std::vector<double> v(lattice.box_size(), 0.0);
  for (std::size_t idx : lattice.nodes()) {
    const std::vector<double> x = lattice.point(idx);
    v[idx] = fn(x);
  }
  return ScalarFieldND(lattice, std::move(v));
}

ScalarFieldND laplacian(const ScalarFieldND& u) {
  const BallLattice& L = u.lattice();
  const double h2 = L.h() * L.h();
  std::vector<double> out(L.box_size(), 0.0);
  for (std::size_t idx : L.nodes()) {
    if (!L.is_interior(idx)) continue;
    double acc = -2.0 * L.n() * u[idx];
    for (int a = 0; a < L.n(); ++a) acc += u[L.neighbor(idx, a, -1)] + u[L.neighbor(idx, a, 1)];
    out[idx] = acc / h2;
  }
  return ScalarFieldND(L, std::move(out));
}

ScalarFieldND gradient_norm2(const ScalarFieldND& u) {
  const BallLattice& L = u.lattice();
  std::vector<double> out(L.box_size(), 0.0);
  for (std::size_t idx : L.nodes()) {
    if (!L.is_interior(idx)) continue;
    double acc = 0.0;
    for (int a = 0; a < L.n(); ++a) {
      const double d = (u[L.neighbor(idx, a, 1)] - u[L.neighbor(idx, a, -1)]) / (2.0 * L.h());
      acc += d * d;
    }
    out[idx] = acc;
  }
  return ScalarFieldND(L, std::move(out));
}

FieldExtremum sup_abs(const ScalarFieldND& u) {
  FieldExtremum best{};
  bool found = false;
  for (std::size_t idx : u.lattice().nodes()) {
    const double a = std::abs(u[idx]);
    if (!found || a > best.value) {
      best = {a, idx};
      found = true;
    }
  }
  return best;
}

FieldExtremum sup_value(const ScalarFieldND& u) {
  FieldExtremum best{};
  bool found = false;
  for (std::size_t idx : u.lattice().nodes()) {
    if (!found || u[idx] > best.value) {
      best = {u[idx], idx};
      found = true;
    }
  }
  return best;
}

double integrate(const ScalarFieldND& u, double region) {
  const BallLattice& L = u.lattice();
  require(region > 0.0, "region > 0", "region", region);
  require(region <= L.radius() * (1.0 + 1e-12), "region <= lattice radius", "region", region);
  const double cell = std::pow(L.h(), L.n());
  double acc = 0.0;
  for (std::size_t idx : L.nodes()) {
    if (L.radial(idx) <= region * (1.0 + 1e-12)) acc += cell * u[idx];
  }
  return acc;
}

std::string to_csv(const ScalarFieldND& u) {
  const BallLattice& L = u.lattice();
  std::ostringstream os;
  os << "index";
  for (int a = 1; a <= L.n(); ++a) os << ",x" << a;
  os << ",value\n";
  for (std::size_t idx : L.nodes()) {
    os << idx;
    for (double x : L.point(idx)) os << ',' << fmt12(x);
    os << ',' << fmt12(u[idx]) << '\n';
  }
  return os.str();
}

}  // namespace dbarlab
