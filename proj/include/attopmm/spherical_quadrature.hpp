#pragma once

#include <vector>

#include <Eigen/Core>

namespace attopmm {

/// Gauss–Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Product rule on the unit sphere: `order` Gauss–Legendre nodes in cos θ
/// times 2·order equispaced azimuths. Exact for spherical harmonics up to
/// degree 2·order - 1 and invariant under the rotations by π about every
/// Cartesian axis as well as the three coordinate reflections.
class SphericalQuadrature {
 public:
  static constexpr int kMinOrder = 2;
  static constexpr int kMaxOrder = 1024;

  explicit SphericalQuadrature(int order);

  int order() const { return order_; }
  std::size_t size() const { return directions_.size(); }
  const std::vector<Eigen::Vector3d>& directions() const { return directions_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int order_;
  std::vector<Eigen::Vector3d> directions_;
  std::vector<double> weights_;
};

}  // namespace attopmm
