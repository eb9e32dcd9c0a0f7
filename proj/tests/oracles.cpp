#include "oracles.hpp"

#include <bit>
#include <cmath>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <unsupported/Eigen/KroneckerProduct>

namespace oracle {

FockSpace::FockSpace(int modes) : modes_(modes) {
  Eigen::Matrix2d id = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d z;
  z << 1, 0, 0, -1;
  Eigen::Matrix2d lower;  // |0⟩⟨1|
  lower << 0, 1, 0, 0;
  for (int j = 0; j < modes; ++j) {
    Eigen::MatrixXd op = Eigen::MatrixXd::Identity(1, 1);
    // Most significant mode first so that the Kronecker index equals the bit pattern.
    for (int k = modes - 1; k >= 0; --k) {
      const Eigen::Matrix2d& f = k < j ? z : (k == j ? lower : id);
      Eigen::MatrixXd next = Eigen::kroneckerProduct(op, f).eval();
      op = next;
    }
    a_.push_back(op);
  }
}

Eigen::VectorXd FockSpace::state(const std::map<std::uint64_t, double>& dets) const {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(Eigen::Index(1) << modes_);
  for (const auto& [bits, c] : dets) v[static_cast<Eigen::Index>(bits)] += c;
  return v;
}

std::map<std::uint64_t, double> flatten(const attopmm::ConfigurationStateFunction& csf) {
  std::map<std::uint64_t, double> out;
  for (const auto& t : csf.expansion) out[t.det.bits()] += t.coefficient;
  return out;
}

std::map<std::uint64_t, double> flatten(const attopmm::ElectronicState& state) {
  std::map<std::uint64_t, double> out;
  for (const auto& t : state.expansion) {
    for (const auto& [bits, c] : flatten(t.csf)) out[bits] += t.coefficient * c;
  }
  return out;
}

namespace {

double integrate(const std::function<double(double)>& f, double a, double b) {
  double error = 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-13, &error);
}

std::complex<double> axis_integral(int power, double alpha, double centre, double q) {
  const double half = std::sqrt(60.0 / alpha);
  auto g = [&](double x) {
    const double u = x - centre;
    return std::pow(u, power) * std::exp(-alpha * u * u);
  };
  // Split at the centre so each half is smooth and single-signed in its envelope.
  auto re = [&](double x) { return g(x) * std::cos(q * x); };
  auto im = [&](double x) { return -g(x) * std::sin(q * x); };
  const double lo = centre - half, hi = centre + half;
  return {integrate(re, lo, centre) + integrate(re, centre, hi), integrate(im, lo, centre) + integrate(im, centre, hi)};
}

}  // namespace

std::complex<double> quadrature_ft(const attopmm::GaussianPrimitive& g, const Eigen::Vector3d& q) {
  std::complex<double> v = g.normalization * std::pow(2.0 * M_PI, -1.5);
  for (int d = 0; d < 3; ++d) v *= axis_integral(g.powers[d], g.exponent, g.center[d], q[d]);
  return v;
}

double quadrature_self_overlap(const attopmm::GaussianPrimitive& g) {
  double v = g.normalization * g.normalization;
  for (int d = 0; d < 3; ++d) {
    const int p = g.powers[d];
    const double a = g.exponent;
    const double half = std::sqrt(60.0 / a);
    auto f = [&](double u) { return std::pow(u, 2 * p) * std::exp(-2.0 * a * u * u); };
    v *= integrate(f, -half, 0.0) + integrate(f, 0.0, half);
  }
  return v;
}

double quadrature_overlap(const attopmm::GaussianPrimitive& a, const attopmm::GaussianPrimitive& b) {
  double v = a.normalization * b.normalization;
  for (int d = 0; d < 3; ++d) {
    const double ca = a.center[d], cb = b.center[d];
    auto f = [&](double x) {
      const double u = x - ca, w = x - cb;
      return std::pow(u, a.powers[d]) * std::pow(w, b.powers[d]) *
             std::exp(-a.exponent * u * u - b.exponent * w * w);
    };
    const double mid = (a.exponent * ca + b.exponent * cb) / (a.exponent + b.exponent);
    const double half = std::sqrt(60.0 / (a.exponent + b.exponent)) + std::abs(ca - cb);
    v *= integrate(f, mid - half, mid) + integrate(f, mid, mid + half);
  }
  return v;
}

namespace {

// a†_p a_q on a bit pattern; returns sign (0 if the result vanishes) and the new pattern.
std::pair<int, std::uint64_t> excite(std::uint64_t bits, int p, int q) {
  if (!((bits >> q) & 1U)) return {0, 0};
  int sign = (std::popcount(bits & ((std::uint64_t(1) << q) - 1)) % 2) ? -1 : 1;
  bits &= ~(std::uint64_t(1) << q);
  if ((bits >> p) & 1U) return {0, 0};
  sign *= (std::popcount(bits & ((std::uint64_t(1) << p) - 1)) % 2) ? -1 : 1;
  bits |= std::uint64_t(1) << p;
  return {sign, bits};
}

Eigen::MatrixXcd one_rdm(const std::map<std::uint64_t, std::complex<double>>& psi, int n_orbitals) {
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n_orbitals, n_orbitals);
  for (const auto& [bits, c] : psi) {
    for (int p = 0; p < n_orbitals; ++p) {
      for (int q = 0; q < n_orbitals; ++q) {
        for (int s = 0; s < 2; ++s) {
          auto [sign, out] = excite(bits, 2 * p + s, 2 * q + s);
          if (sign == 0) continue;
          auto it = psi.find(out);
          if (it == psi.end()) continue;
          g(p, q) += std::conj(it->second) * static_cast<double>(sign) * c;
        }
      }
    }
  }
  return g;
}

}  // namespace

Eigen::MatrixXcd density_matrix_change(const attopmm::WavePacket& wp, double t) {
  std::map<std::uint64_t, std::complex<double>> psi;
  for (std::size_t i = 0; i < wp.size(); ++i) {
    const auto phase = attopmm::wave_packet_phase(wp, i, t);
    for (const auto& [bits, c] : flatten(wp.members()[i].state)) psi[bits] += phase * c;
  }
  const int n = wp.members().front().state.basis_size();
  const int n_occ = wp.members().front().state.n_occupied();
  std::map<std::uint64_t, std::complex<double>> ref{{(std::uint64_t(1) << (2 * n_occ)) - 1, 1.0}};
  return one_rdm(psi, n) - one_rdm(ref, n);
}

double lcao_value(const attopmm::MolecularOrbital& mo, const Eigen::Vector3d& r) {
  const auto& l = mo.lcao();
  double sum = 0.0;
  for (std::size_t k = 0; k < l.primitives->size(); ++k) {
    const auto& g = (*l.primitives)[k];
    const Eigen::Vector3d d = r - g.center;
    double v = g.normalization * std::exp(-g.exponent * d.squaredNorm());
    for (int a = 0; a < 3; ++a) v *= std::pow(d[a], g.powers[a]);
    sum += l.coefficients[static_cast<Eigen::Index>(k)] * v;
  }
  return sum;
}

double density_from_matrix(const Eigen::MatrixXcd& gamma, const attopmm::OrbitalSet& orbitals,
                           const Eigen::Vector3d& r) {
  const int n = static_cast<int>(gamma.rows());
  Eigen::VectorXd phi(n);
  for (int p = 0; p < n; ++p) phi[p] = lcao_value(orbitals.at_index(p), r);
  double rho = 0.0;
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) rho += gamma(p, q).real() * phi[p] * phi[q];
  }
  return rho;
}

}  // namespace oracle
