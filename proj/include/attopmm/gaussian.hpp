#pragma once

#include <array>
#include <cmath>
#include <complex>

#include <Eigen/Core>

#include "attopmm/error.hpp"

namespace attopmm {

template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;

namespace detail {

template <typename Scalar>
Scalar pi_v() {
  return static_cast<Scalar>(3.141592653589793238462643383279502884L);
}

// (2k-1)!! with (-1)!! = 1.
template <typename Scalar>
Scalar odd_double_factorial(int k) {
  Scalar r = 1;
  for (int i = 2 * k - 1; i > 1; i -= 2) r *= static_cast<Scalar>(i);
  return r;
}

// Physicists' Hermite polynomial H_n(x).
template <typename Scalar>
Scalar hermite(int n, Scalar x) {
  if (n == 0) return Scalar(1);
  Scalar h0 = 1;
  Scalar h1 = 2 * x;
  for (int k = 1; k < n; ++k) {
    const Scalar h2 = 2 * x * h1 - 2 * static_cast<Scalar>(k) * h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

template <typename Scalar>
Scalar binomial(int n, int k) {
  Scalar r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<Scalar>(n - k + i) / static_cast<Scalar>(i);
  return r;
}

template <typename Scalar>
Scalar int_power(Scalar x, int n) {
  Scalar r = 1;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

// ∫ (x-A)^l (x-B)^m exp(-a(x-A)^2 - b(x-B)^2) dx
template <typename Scalar>
Scalar overlap_1d(int l, int m, Scalar a, Scalar b, Scalar A, Scalar B) {
  using std::exp;
  using std::sqrt;
  const Scalar p = a + b;
  const Scalar P = (a * A + b * B) / p;
  const Scalar K = exp(-a * b / p * (A - B) * (A - B));
  const Scalar PA = P - A;
  const Scalar PB = P - B;
  Scalar sum = 0;
  for (int i = 0; i <= l; ++i) {
    for (int j = 0; j <= m; ++j) {
      const int k = i + j;
      if (k % 2 != 0) continue;
      const Scalar moment = odd_double_factorial<Scalar>(k / 2) /
                            int_power(2 * p, k / 2) * sqrt(pi_v<Scalar>() / p);
      sum += binomial<Scalar>(l, i) * binomial<Scalar>(m, j) *
             int_power(PA, l - i) * int_power(PB, m - j) * moment;
    }
  }
  return K * sum;
}

}  // namespace detail

/// Cartesian Gaussian primitive N (x-X)^l (y-Y)^m (z-Z)^n exp(-alpha |r-R|^2).
/// Lengths in bohr, exponent in bohr^-2.
template <typename Scalar>
struct BasicGaussianPrimitive {
  Vector3<Scalar> center = Vector3<Scalar>::Zero();
  Scalar exponent = 1;
  std::array<int, 3> powers{0, 0, 0};
  Scalar normalization = 1;

  int angular_momentum() const { return powers[0] + powers[1] + powers[2]; }

  static BasicGaussianPrimitive make(const Vector3<Scalar>& center, Scalar exponent,
                                     std::array<int, 3> powers = {0, 0, 0});
};

using GaussianPrimitive = BasicGaussianPrimitive<double>;

/// Analytic normalization making the primitive's self-overlap exactly one.
template <typename Scalar>
Scalar primitive_normalization(Scalar alpha, const std::array<int, 3>& powers) {
  using std::pow;
  const int L = powers[0] + powers[1] + powers[2];
  const Scalar base = pow(2 * alpha / detail::pi_v<Scalar>(), Scalar(0.75)) *
                      pow(4 * alpha, static_cast<Scalar>(L) / 2);
  const Scalar df = detail::odd_double_factorial<Scalar>(powers[0]) *
                    detail::odd_double_factorial<Scalar>(powers[1]) *
                    detail::odd_double_factorial<Scalar>(powers[2]);
  return base / std::sqrt(df);
}

template <typename Scalar>
BasicGaussianPrimitive<Scalar> BasicGaussianPrimitive<Scalar>::make(
    const Vector3<Scalar>& center, Scalar exponent, std::array<int, 3> powers) {
  if (!(exponent > 0)) {
    throw Error(ErrorKind::InvalidArgument, "Gaussian exponent must be positive");
  }
  for (int p : powers) {
    if (p < 0) throw Error(ErrorKind::InvalidArgument, "negative angular power");
  }
  BasicGaussianPrimitive g;
  g.center = center;
  g.exponent = exponent;
  g.powers = powers;
  g.normalization = primitive_normalization(exponent, powers);
  return g;
}

template <typename Scalar>
Scalar evaluate(const BasicGaussianPrimitive<Scalar>& g, const Vector3<Scalar>& r) {
  using std::exp;
  const Vector3<Scalar> d = r - g.center;
  return g.normalization * detail::int_power(d.x(), g.powers[0]) *
         detail::int_power(d.y(), g.powers[1]) * detail::int_power(d.z(), g.powers[2]) *
         exp(-g.exponent * d.squaredNorm());
}

/// Momentum-space amplitude (2π)^{-3/2} ∫ d³r e^{-i q·r} g(r), in closed form.
/// Each Cartesian factor u^l e^{-αu²} transforms to
///   sqrt(π/α) (-i/(2√α))^l H_l(q/(2√α)) e^{-q²/(4α)}.
template <typename Scalar>
std::complex<Scalar> fourier_transform(const BasicGaussianPrimitive<Scalar>& g,
                                       const Vector3<Scalar>& q) {
  using std::cos;
  using std::exp;
  using std::sin;
  using std::sqrt;
  using Complex = std::complex<Scalar>;
  const Scalar alpha = g.exponent;
  const Scalar two_sqrt_alpha = 2 * sqrt(alpha);
  const Scalar pi = detail::pi_v<Scalar>();

  Scalar poly = 1;
  for (int axis = 0; axis < 3; ++axis) {
    const int l = g.powers[axis];
    if (l > 0) poly *= detail::hermite(l, q[axis] / two_sqrt_alpha) / detail::int_power(two_sqrt_alpha, l);
  }
  // (-i)^L
  static constexpr int re_of_minus_i_pow[4] = {1, 0, -1, 0};
  static constexpr int im_of_minus_i_pow[4] = {0, -1, 0, 1};
  const int L = g.angular_momentum() % 4;
  const Complex phase_l(static_cast<Scalar>(re_of_minus_i_pow[L]),
                        static_cast<Scalar>(im_of_minus_i_pow[L]));

  const Scalar radial = g.normalization * sqrt(pi / alpha) * (pi / alpha) /
                        (2 * pi * sqrt(2 * pi)) * exp(-q.squaredNorm() / (4 * alpha));
  const Scalar qr = q.dot(g.center);
  const Complex center_phase(cos(qr), -sin(qr));
  return phase_l * (radial * poly) * center_phase;
}

/// Analytic overlap ⟨a|b⟩ of two real primitives.
template <typename Scalar>
Scalar overlap(const BasicGaussianPrimitive<Scalar>& a, const BasicGaussianPrimitive<Scalar>& b) {
  Scalar s = a.normalization * b.normalization;
  for (int axis = 0; axis < 3; ++axis) {
    s *= detail::overlap_1d(a.powers[axis], b.powers[axis], a.exponent, b.exponent,
                            a.center[axis], b.center[axis]);
  }
  return s;
}

}  // namespace attopmm
