#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "attopmm/error.hpp"

namespace attopmm {

/// Regular 3D grid of samples; values stored with the third index fastest
/// (cube-file order). Lengths in bohr. Columns of `axes` are the step vectors.
template <typename T>
class VolumetricGrid {
 public:
  VolumetricGrid() = default;

  VolumetricGrid(const Eigen::Vector3d& origin, const Eigen::Matrix3d& axes,
                 std::array<int, 3> counts, std::vector<T> values)
      : origin_(origin), axes_(axes), counts_(counts), values_(std::move(values)) {
    for (int n : counts_) {
      if (n < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points per axis");
    }
    if (std::abs(axes_.determinant()) < 1e-14) {
      throw Error(ErrorKind::InvalidArgument, "grid axes are linearly dependent");
    }
    if (values_.size() != size()) {
      throw Error(ErrorKind::InvalidArgument, "grid value count does not match dimensions");
    }
    inverse_axes_ = axes_.inverse();
  }

  VolumetricGrid(const Eigen::Vector3d& origin, const Eigen::Matrix3d& axes,
                 std::array<int, 3> counts)
      : VolumetricGrid(origin, axes, counts,
                       std::vector<T>(static_cast<std::size_t>(counts[0]) * counts[1] * counts[2])) {}

  const Eigen::Vector3d& origin() const { return origin_; }
  const Eigen::Matrix3d& axes() const { return axes_; }
  const std::array<int, 3>& counts() const { return counts_; }
  std::size_t size() const {
    return static_cast<std::size_t>(counts_[0]) * counts_[1] * counts_[2];
  }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * counts_[1] + j) * counts_[2] + k;
  }

  Eigen::Vector3d point(int i, int j, int k) const {
    return origin_ + axes_.col(0) * i + axes_.col(1) * j + axes_.col(2) * k;
  }

  T& operator()(int i, int j, int k) { return values_[index(i, j, k)]; }
  const T& operator()(int i, int j, int k) const { return values_[index(i, j, k)]; }

  std::vector<T>& values() { return values_; }
  const std::vector<T>& values() const { return values_; }

  double voxel_volume() const { return std::abs(axes_.determinant()); }

  bool has_orthogonal_axes(double tol = 1e-10) const {
    const Eigen::Matrix3d g = axes_.transpose() * axes_;
    return std::abs(g(0, 1)) <= tol * g(0, 0) && std::abs(g(0, 2)) <= tol * g(0, 0) &&
           std::abs(g(1, 2)) <= tol * g(1, 1);
  }

  /// Riemann sum of the values times the voxel volume.
  T integrate() const {
    T sum{};
    for (const T& v : values_) sum += v;
    return sum * voxel_volume();
  }

  /// Trilinear interpolation; zero outside the sampled box.
  T interpolate(const Eigen::Vector3d& r) const {
    const Eigen::Vector3d f = inverse_axes_ * (r - origin_);
    std::array<int, 3> base{};
    std::array<double, 3> w{};
    for (int a = 0; a < 3; ++a) {
      if (!(f[a] >= 0.0) || f[a] > counts_[a] - 1) return T{};
      base[a] = std::min(static_cast<int>(std::floor(f[a])), counts_[a] - 2);
      w[a] = f[a] - base[a];
    }
    T acc{};
    for (int di = 0; di < 2; ++di) {
      const double wi = di ? w[0] : 1.0 - w[0];
      for (int dj = 0; dj < 2; ++dj) {
        const double wj = dj ? w[1] : 1.0 - w[1];
        for (int dk = 0; dk < 2; ++dk) {
          const double wk = dk ? w[2] : 1.0 - w[2];
          acc += (*this)(base[0] + di, base[1] + dj, base[2] + dk) * (wi * wj * wk);
        }
      }
    }
    return acc;
  }

 private:
  Eigen::Vector3d origin_ = Eigen::Vector3d::Zero();
  Eigen::Matrix3d axes_ = Eigen::Matrix3d::Identity();
  Eigen::Matrix3d inverse_axes_ = Eigen::Matrix3d::Identity();
  std::array<int, 3> counts_{2, 2, 2};
  std::vector<T> values_ = std::vector<T>(8);
};

}  // namespace attopmm
