#pragma once

// Hopf map between spinors kappa = (xi1 + i xi2, xi3 + i xi4) and wave
// vectors, its inverse on the chart k + kz > 0, and the measure factor.

#include <array>
#include <cmath>
#include <stdexcept>

#include "hopfion/core.hpp"
#include "hopfion/spinor.hpp"

namespace hopfion {

/// Inverse map evaluated on (or too close to) the fiber over k = (0, 0, -|k|).
class DegenerateFiberError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct HopfPoint {
  double xi1 = 0.0;
  double xi2 = 0.0;
  double xi3 = 0.0;
  double xi4 = 0.0;

  double norm2() const { return xi1 * xi1 + xi2 * xi2 + xi3 * xi3 + xi4 * xi4; }
  std::array<double, 4> as_array() const { return {xi1, xi2, xi3, xi4}; }
  static HopfPoint from_array(const std::array<double, 4>& a) { return {a[0], a[1], a[2], a[3]}; }
  static HopfPoint from_spinor(const Spinor& kappa) {
    return {kappa[0].real(), kappa[0].imag(), kappa[1].real(), kappa[1].imag()};
  }
  Spinor to_spinor() const { return {Complex{xi1, xi2}, Complex{xi3, xi4}, Variance::lower, false}; }
};

struct WaveVector {
  double kx = 0.0;
  double ky = 0.0;
  double kz = 0.0;

  double k() const { return std::sqrt(kx * kx + ky * ky + kz * kz); }
  Vec3 as_vec() const { return {kx, ky, kz}; }
};

/// kx = 2(xi1 xi3 + xi2 xi4), ky = 2(xi1 xi4 - xi2 xi3), kz = xi1^2 + xi2^2 - xi3^2 - xi4^2.
/// The ky sign makes this the space part of kappa^dag sigma kappa.
inline WaveVector hopf_forward(const HopfPoint& p) {
  return {2.0 * (p.xi1 * p.xi3 + p.xi2 * p.xi4), 2.0 * (p.xi1 * p.xi4 - p.xi2 * p.xi3),
          p.xi1 * p.xi1 + p.xi2 * p.xi2 - p.xi3 * p.xi3 - p.xi4 * p.xi4};
}

/// Fiber phase atan2(xi2, xi1) folded into [0, 2 pi).
inline double hopf_phase(const HopfPoint& p) {
  double phi = std::atan2(p.xi2, p.xi1);
  if (phi < 0.0) phi += 2.0 * pi;
  if (phi >= 2.0 * pi) phi -= 2.0 * pi;
  return phi;
}

inline constexpr double degenerate_fiber_tolerance = 1e-14;

/// xi1 + i xi2 = sqrt((k + kz)/2) e^{i phi}, xi3 + i xi4 = (kx + i ky) e^{i phi} / sqrt(2(k + kz)).
inline HopfPoint hopf_inverse(const WaveVector& kv, double phi) {
  const double k = kv.k();
  const double kp = k + kv.kz;
  if (!(kp > degenerate_fiber_tolerance * std::max(k, 1.0)))
    throw DegenerateFiberError("hopf_inverse: k + kz = 0, the phase chart breaks down on this fiber");
  const Complex e = std::polar(1.0, phi);
  const Complex k0 = std::sqrt(0.5 * kp) * e;
  const Complex k1 = Complex{kv.kx, kv.ky} * e / std::sqrt(2.0 * kp);
  return {k0.real(), k0.imag(), k1.real(), k1.imag()};
}

/// (kx, ky, kz, phi) as a map from R^4, for numerical differentiation.
inline std::array<double, 4> hopf_coordinates(const HopfPoint& p) {
  const WaveVector k = hopf_forward(p);
  return {k.kx, k.ky, k.kz, std::atan2(p.xi2, p.xi1)};
}

namespace detail {

inline double det4(std::array<std::array<double, 4>, 4> m) {
  double det = 1.0;
  for (int c = 0; c < 4; ++c) {
    int pivot = c;
    for (int r = c + 1; r < 4; ++r)
      if (std::abs(m[r][c]) > std::abs(m[pivot][c])) pivot = r;
    if (m[pivot][c] == 0.0) return 0.0;
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < 4; ++r) {
      const double f = m[r][c] / m[c][c];
      for (int k = c; k < 4; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

// Unwraps the phase difference so a central difference across the
// atan2 branch cut stays small.
inline double wrap_angle(double d) {
  while (d > pi) d -= 2.0 * pi;
  while (d < -pi) d += 2.0 * pi;
  return d;
}

}  // namespace detail

struct JacobianResult {
  double k = 0.0;              // |k| = sum xi^2
  double forward_det = 0.0;    // |det d(kx,ky,kz,phi)/d xi|, analytically 8k
  double inverse_det = 0.0;    // |det d xi/d(kx,ky,kz,phi)|, analytically 1/(8k)
  double expected_inverse = 0.0;
  double relative_error = 0.0; // of inverse_det against 1/(8k)
};

/// Both Jacobian determinants by fourth-order central differences. The
/// inverse one differentiates hopf_inverse, so it fails on the degenerate fiber.
inline JacobianResult jacobian_check(const HopfPoint& p, double h = 1e-4) {
  const WaveVector kv = hopf_forward(p);
  const double k = kv.k();
  if (!(k + kv.kz > 1e-10 * std::max(k, 1.0)))
    throw DegenerateFiberError("jacobian_check: point lies on the degenerate fiber");
  const double scale = std::sqrt(p.norm2());
  const double step = h * std::max(scale, 1e-300);

  std::array<std::array<double, 4>, 4> fwd{};
  const auto x0 = p.as_array();
  for (int j = 0; j < 4; ++j) {
    auto at = [&](double d) {
      auto x = x0;
      x[static_cast<std::size_t>(j)] += d;
      return hopf_coordinates(HopfPoint::from_array(x));
    };
    const auto p1 = at(step), m1 = at(-step), p2 = at(2 * step), m2 = at(-2 * step);
    for (int i = 0; i < 4; ++i) {
      if (i == 3) {
        const double d1 = detail::wrap_angle(p1[3] - m1[3]), d2 = detail::wrap_angle(p2[3] - m2[3]);
        fwd[i][j] = (8.0 * d1 - d2) / (12.0 * step);
      } else {
        fwd[i][j] = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * step);
      }
    }
  }

  std::array<std::array<double, 4>, 4> inv{};
  const double phi = std::atan2(p.xi2, p.xi1);
  const std::array<double, 4> y0{kv.kx, kv.ky, kv.kz, phi};
  const double ystep = h * std::max(k, 1e-300);
  for (int j = 0; j < 4; ++j) {
    const double d = j == 3 ? h : ystep;
    auto at = [&](double s) {
      auto y = y0;
      y[static_cast<std::size_t>(j)] += s;
      return hopf_inverse({y[0], y[1], y[2]}, y[3]).as_array();
    };
    const auto p1 = at(d), m1 = at(-d), p2 = at(2 * d), m2 = at(-2 * d);
    for (int i = 0; i < 4; ++i) inv[i][j] = (8.0 * (p1[i] - m1[i]) - (p2[i] - m2[i])) / (12.0 * d);
  }

  JacobianResult r;
  r.k = k;
  r.forward_det = std::abs(detail::det4(fwd));
  r.inverse_det = std::abs(detail::det4(inv));
  r.expected_inverse = 1.0 / (8.0 * k);
  r.relative_error = std::abs(r.inverse_det - r.expected_inverse) / r.expected_inverse;
  return r;
}

struct SpinorConsistency {
  double vector_mismatch = 0.0;  // |hopf_forward(xi) - space part of k^mu|
  double energy_mismatch = 0.0;  // |k^0 - sum xi^2|
  bool consistent(double tol) const { return vector_mismatch <= tol && energy_mismatch <= tol; }
};

/// Compares the Hopf map with the spinor's null vector; errors are relative to k^0.
inline SpinorConsistency spinor_consistency(const Spinor& kappa) {
  const HopfPoint p = HopfPoint::from_spinor(kappa);
  const WaveVector h = hopf_forward(p);
  const FourVector k = lightlike_vector(kappa);
  const double scale = std::max(k[0], 1e-300);
  const Vec3 diff{h.kx - k[1], h.ky - k[2], h.kz - k[3]};
  return {norm(diff) / scale, std::abs(k[0] - p.norm2()) / scale};
}

}  // namespace hopfion
