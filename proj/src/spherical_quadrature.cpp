#include "attopmm/spherical_quadrature.hpp"

#include <cmath>

#include "attopmm/error.hpp"
#include "attopmm/units.hpp"

namespace attopmm {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Legendre order must be positive");
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  weights.assign(static_cast<std::size_t>(n), 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(units::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = n == 1 ? x : p1;
      const double pn1 = n == 1 ? 1.0 : p0;
      dp = n * (x * pn - pn1) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n == 1 ? 1.0 : n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

SphericalQuadrature::SphericalQuadrature(int order) : order_(order) {
  if (order < kMinOrder || order > kMaxOrder) {
    throw Error(ErrorKind::Unsupported, "spherical quadrature order " + std::to_string(order) + " unsupported");
  }
  std::vector<double> ct;
  std::vector<double> wt;
  gauss_legendre(order, ct, wt);
  const int n_phi = 2 * order;
  const double dphi = 2.0 * units::pi / n_phi;
  directions_.reserve(static_cast<std::size_t>(order * n_phi));
  weights_.reserve(static_cast<std::size_t>(order * n_phi));
  for (int i = 0; i < order; ++i) {
    const double c = ct[static_cast<std::size_t>(i)];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (int j = 0; j < n_phi; ++j) {
      // Half-step azimuthal offset keeps the node set closed under x→-x and y→-y.
      const double phi = (j + 0.5) * dphi;
      directions_.emplace_back(s * std::cos(phi), s * std::sin(phi), c);
      weights_.push_back(wt[static_cast<std::size_t>(i)] * dphi);
    }
  }
}

}  // namespace attopmm
