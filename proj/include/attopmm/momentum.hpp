#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "attopmm/gaussian.hpp"
#include "attopmm/orbital.hpp"

namespace attopmm {

class SphericalQuadrature;

enum class MomentumGridMode { CartesianSlab, Hemisphere, FullSphere };

/// Sample set in momentum space (atomic units). Hemisphere grids are a
/// uniform (q_x, q_y) raster lifted onto |q|² = 2ε with q_z ≥ 0; raster points
/// outside the kinematic disc are kept but flagged invalid.
class MomentumGrid {
 public:
  MomentumGridMode mode() const { return mode_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<Eigen::Vector3d>& samples() const { return samples_; }
  const Eigen::Vector3d& sample(std::size_t i) const { return samples_[i]; }
  bool valid(std::size_t i) const { return valid_[i] != 0; }
  std::size_t valid_count() const;
  /// Quadrature weight per sample: Δ³q for slabs, solid angle for spheres,
  /// raster cell area for hemispheres.
  double weight(std::size_t i) const { return weights_[i]; }
  /// Photoelectron energy (hartree) for hemisphere/sphere grids.
  double energy() const { return energy_; }
  /// Raster shape (nx, ny[, nz]).
  const std::vector<int>& shape() const { return shape_; }
  double extent() const { return extent_; }
  /// Identity of the sample set, used as a cache key.
  std::uint64_t fingerprint() const { return fingerprint_; }

  static MomentumGrid hemisphere(double energy, int nx, int ny, double q_max);
  static MomentumGrid cartesian_slab(const Eigen::Vector3d& lower, const Eigen::Vector3d& upper,
                                     std::array<int, 3> counts);
  static MomentumGrid sphere(double energy, const SphericalQuadrature& quadrature);

 private:
  void finalize();

  MomentumGridMode mode_ = MomentumGridMode::Hemisphere;
  std::vector<Eigen::Vector3d> samples_;
  std::vector<unsigned char> valid_;
  std::vector<double> weights_;
  std::vector<int> shape_;
  double energy_ = 0.0;
  double extent_ = 0.0;
  std::uint64_t fingerprint_ = 0;
};

/// Uniform raster over [-q_max, q_max]² at photoelectron energy `energy`
/// (hartree). Requires energy > 0 and q_max ≤ √(2 energy).
MomentumGrid build_hemisphere(double energy, int nx, int ny, double q_max);

/// Closed-form transform of one primitive (e^{-iq·r} convention).
inline std::complex<double> gaussian_ft(const GaussianPrimitive& prim, const Eigen::Vector3d& q) {
  return fourier_transform(prim, q);
}

/// (2π)^{-3/2} ∫ d³r e^{-iq·r} φ(r) at every grid sample; zero at invalid samples.
/// Grid-backed orbitals use a voxel-volume Riemann sum and need orthogonal axes.
Eigen::VectorXcd orbital_ft(const MolecularOrbital& mo, const MomentumGrid& grid, int threads = 1);

/// Transforms of every orbital in the set; column s belongs to orbitals()[s].
/// Orbitals sharing one primitive list go through a single primitive-FT matrix.
Eigen::MatrixXcd orbital_set_ft(const OrbitalSet& set, const MomentumGrid& grid, int threads = 1);

/// Amplitude tables keyed on (orbital set, grid). Time scans reuse them since
/// t_p enters only through Dyson coefficients. Thread-safe.
class AmplitudeCache {
 public:
  std::shared_ptr<const Eigen::MatrixXcd> get(const OrbitalSet& set, const MomentumGrid& grid, int threads = 1);
  std::size_t size() const;
  std::size_t misses() const { return misses_; }

 private:
  mutable std::mutex mutex_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const Eigen::MatrixXcd>> tables_;
  std::size_t misses_ = 0;
};

}  // namespace attopmm
