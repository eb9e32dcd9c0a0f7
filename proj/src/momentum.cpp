#include "attopmm/momentum.hpp"

#include <cmath>
#include <cstring>

#include "attopmm/error.hpp"
#include "attopmm/parallel.hpp"
#include "attopmm/spherical_quadrature.hpp"
#include "attopmm/units.hpp"

namespace attopmm {

namespace {

// FNV-1a over the raw sample coordinates and flags.
std::uint64_t hash_bytes(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

std::size_t MomentumGrid::valid_count() const {
  std::size_t n = 0;
  for (unsigned char v : valid_) n += v;
  return n;
}

void MomentumGrid::finalize() {
  std::uint64_t h = 14695981039346656037ULL;
  const int mode = static_cast<int>(mode_);
  h = hash_bytes(h, &mode, sizeof mode);
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    h = hash_bytes(h, samples_[i].data(), 3 * sizeof(double));
    h = hash_bytes(h, &valid_[i], 1);
  }
  fingerprint_ = h;
}

MomentumGrid MomentumGrid::hemisphere(double energy, int nx, int ny, double q_max) {
  if (!(energy > 0.0)) throw Error(ErrorKind::InvalidArgument, "photoelectron energy must be positive");
  if (nx < 2 || ny < 2) throw Error(ErrorKind::InvalidArgument, "hemisphere raster needs at least 2x2 samples");
  const double q = std::sqrt(2.0 * energy);
  if (!(q_max > 0.0) || q_max > q * (1.0 + 1e-12)) {
    throw Error(ErrorKind::InvalidArgument, "q_max must lie in (0, sqrt(2 energy)]");
  }
  MomentumGrid g;
  g.mode_ = MomentumGridMode::Hemisphere;
  g.energy_ = energy;
  g.extent_ = q_max;
  g.shape_ = {nx, ny};
  const double dx = 2.0 * q_max / (nx - 1);
  const double dy = 2.0 * q_max / (ny - 1);
  const double q2 = 2.0 * energy;
  g.samples_.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    // Symmetric raster: sample i and nx-1-i are exact negatives.
    const double qx = (2 * i - (nx - 1)) * 0.5 * dx;
    for (int j = 0; j < ny; ++j) {
      const double qy = (2 * j - (ny - 1)) * 0.5 * dy;
      const double rest = q2 - qx * qx - qy * qy;
      const bool ok = rest >= 0.0;
      g.samples_.emplace_back(qx, qy, ok ? std::sqrt(rest) : 0.0);
      g.valid_.push_back(ok ? 1 : 0);
      g.weights_.push_back(dx * dy);
    }
  }
  g.finalize();
  return g;
}

MomentumGrid build_hemisphere(double energy, int nx, int ny, double q_max) {
  return MomentumGrid::hemisphere(energy, nx, ny, q_max);
}

MomentumGrid MomentumGrid::cartesian_slab(const Eigen::Vector3d& lower, const Eigen::Vector3d& upper,
                                          std::array<int, 3> counts) {
  for (int a = 0; a < 3; ++a) {
    if (counts[static_cast<std::size_t>(a)] < 2 || !(upper[a] > lower[a])) {
      throw Error(ErrorKind::InvalidArgument, "invalid cartesian momentum slab");
    }
  }
  MomentumGrid g;
  g.mode_ = MomentumGridMode::CartesianSlab;
  g.shape_ = {counts[0], counts[1], counts[2]};
  Eigen::Vector3d step;
  for (int a = 0; a < 3; ++a) step[a] = (upper[a] - lower[a]) / (counts[static_cast<std::size_t>(a)] - 1);
  const double dv = step.prod();
  g.extent_ = std::max(lower.cwiseAbs().maxCoeff(), upper.cwiseAbs().maxCoeff());
  for (int i = 0; i < counts[0]; ++i) {
    for (int j = 0; j < counts[1]; ++j) {
      for (int k = 0; k < counts[2]; ++k) {
        g.samples_.emplace_back(lower.x() + i * step.x(), lower.y() + j * step.y(), lower.z() + k * step.z());
        g.valid_.push_back(1);
        g.weights_.push_back(dv);
      }
    }
  }
  g.finalize();
  return g;
}

MomentumGrid MomentumGrid::sphere(double energy, const SphericalQuadrature& quadrature) {
  if (!(energy > 0.0)) throw Error(ErrorKind::InvalidArgument, "photoelectron energy must be positive");
  MomentumGrid g;
  g.mode_ = MomentumGridMode::FullSphere;
  g.energy_ = energy;
  const double q = std::sqrt(2.0 * energy);
  g.extent_ = q;
  g.shape_ = {static_cast<int>(quadrature.size())};
  for (std::size_t i = 0; i < quadrature.size(); ++i) {
    g.samples_.push_back(q * quadrature.directions()[i]);
    g.valid_.push_back(1);
    g.weights_.push_back(quadrature.weights()[i]);
  }
  g.finalize();
  return g;
}

namespace {

Eigen::VectorXcd grid_orbital_ft(const VolumetricGrid<double>& vg, const MomentumGrid& grid, int threads) {
  if (!vg.has_orthogonal_axes()) {
    throw Error(ErrorKind::Unsupported, "numeric transform needs a grid with orthogonal axes");
  }
  const auto& n = vg.counts();
  const double scale = vg.voxel_volume() / std::pow(2.0 * units::pi, 1.5);
  const Eigen::Matrix3d& axes = vg.axes();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
  parallel_for(grid.size(), threads, [&](std::size_t s) {
    if (!grid.valid(s)) return;
    const Eigen::Vector3d& q = grid.sample(s);
    std::array<std::vector<std::complex<double>>, 3> ph;
    for (int a = 0; a < 3; ++a) {
      const double step_phase = q.dot(axes.col(a));
      ph[static_cast<std::size_t>(a)].resize(static_cast<std::size_t>(n[static_cast<std::size_t>(a)]));
      for (int i = 0; i < n[static_cast<std::size_t>(a)]; ++i) {
        ph[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] = std::polar(1.0, -step_phase * i);
      }
    }
    std::complex<double> total = 0.0;
    for (int i = 0; i < n[0]; ++i) {
      std::complex<double> plane = 0.0;
      for (int j = 0; j < n[1]; ++j) {
        std::complex<double> line = 0.0;
        const double* row = &vg.values()[vg.index(i, j, 0)];
        for (int k = 0; k < n[2]; ++k) line += row[k] * ph[2][static_cast<std::size_t>(k)];
        plane += line * ph[1][static_cast<std::size_t>(j)];
      }
      total += plane * ph[0][static_cast<std::size_t>(i)];
    }
    out[static_cast<Eigen::Index>(s)] = scale * std::polar(1.0, -q.dot(vg.origin())) * total;
  });
  return out;
}

// Rows: samples, columns: primitives.
Eigen::MatrixXcd primitive_ft_matrix(const std::vector<GaussianPrimitive>& prims, const MomentumGrid& grid,
                                     int threads) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.size()),
                                              static_cast<Eigen::Index>(prims.size()));
  parallel_for(grid.size(), threads, [&](std::size_t s) {
    if (!grid.valid(s)) return;
    for (std::size_t p = 0; p < prims.size(); ++p) {
      m(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(p)) = gaussian_ft(prims[p], grid.sample(s));
    }
  });
  return m;
}

}  // namespace

Eigen::VectorXcd orbital_ft(const MolecularOrbital& mo, const MomentumGrid& grid, int threads) {
  if (mo.is_grid()) return grid_orbital_ft(mo.grid(), grid, threads);
  const auto& lcao = mo.lcao();
  const Eigen::MatrixXcd m = primitive_ft_matrix(*lcao.primitives, grid, threads);
  Eigen::VectorXcd out(m.rows());
  // Row-wise dot products keep a fixed summation order per sample.
  for (Eigen::Index s = 0; s < m.rows(); ++s) {
    std::complex<double> acc = 0.0;
    for (Eigen::Index p = 0; p < m.cols(); ++p) acc += m(s, p) * lcao.coefficients[p];
    out[s] = acc;
  }
  return out;
}

Eigen::MatrixXcd orbital_set_ft(const OrbitalSet& set, const MomentumGrid& grid, int threads) {
  const auto n_orb = static_cast<Eigen::Index>(set.orbitals().size());
  Eigen::MatrixXcd out(static_cast<Eigen::Index>(grid.size()), n_orb);
  if (auto prims = set.shared_primitives()) {
    const Eigen::MatrixXcd m = primitive_ft_matrix(*prims, grid, threads);
    const Eigen::MatrixXd c = set.coefficient_matrix();
    parallel_for(grid.size(), threads, [&](std::size_t s) {
      const auto row = static_cast<Eigen::Index>(s);
      for (Eigen::Index o = 0; o < n_orb; ++o) {
        std::complex<double> acc = 0.0;
        for (Eigen::Index p = 0; p < m.cols(); ++p) acc += m(row, p) * c(p, o);
        out(row, o) = acc;
      }
    });
    return out;
  }
  for (Eigen::Index o = 0; o < n_orb; ++o) {
    out.col(o) = orbital_ft(set.orbitals()[static_cast<std::size_t>(o)], grid, threads);
  }
  return out;
}

std::shared_ptr<const Eigen::MatrixXcd> AmplitudeCache::get(const OrbitalSet& set, const MomentumGrid& grid,
                                                            int threads) {
  const auto key = std::make_pair(set.id(), grid.fingerprint());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
  }
  auto table = std::make_shared<const Eigen::MatrixXcd>(orbital_set_ft(set, grid, threads));
  std::lock_guard<std::mutex> lock(mutex_);
  ++misses_;
  auto [it, inserted] = tables_.emplace(key, table);
  return it->second;
}

std::size_t AmplitudeCache::size() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return tables_.size();
}

}  // namespace attopmm
