#pragma once

// Closed-form hopfion-family solutions of the Weyl, Maxwell and Dirac
// equations built from the Gaussian spinorial generating function with
// a^mu = (a, 0, 0, 0).
//
// Massless fields use the helper quantities
//   D(x) = ((a + i t)^2 + r^2)^-1,  t_pm = t pm z - i a,  x_pm = x pm i y,
// and the spinor psi_A(x) = D(x) g_{mu AB'} eta^{B'} (x^mu - i a^mu).
// Dirac fields use frak_K_n = K_n(m s)/s^n with s the complex distance.
// Overall constants are kept exactly as printed: none for the massless
// fields, pi m^2 / 4 for the base Dirac solutions, and the Appendix-style
// prefactors m^k pi / c for the higher ones.

#include <array>
#include <concepts>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>

#include "hopfion/core.hpp"
#include "hopfion/special_functions.hpp"
#include "hopfion/spinor.hpp"

namespace hopfion {

/// Riemann-Silberstein vector F = E + i B.
struct RSVector {
  Complex x;
  Complex y;
  Complex z;

  Complex operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  Vec3 E() const { return {x.real(), y.real(), z.real()}; }
  Vec3 B() const { return {x.imag(), y.imag(), z.imag()}; }
  /// F.F (no conjugation); zero for null fields.
  Complex self_dot() const { return x * x + y * y + z * z; }
  /// |Fx|^2 + |Fy|^2 + |Fz|^2.
  double norm2() const { return std::norm(x) + std::norm(y) + std::norm(z); }
  RSVector scaled(Complex s) const { return {s * x, s * y, s * z}; }
};

/// Weyl-representation bispinor Psi = (phi_A, chi^{A'}).
struct Bispinor {
  Complex phi0;
  Complex phi1;
  Complex chi0;
  Complex chi1;

  Complex operator[](int i) const {
    switch (i) {
      case 0: return phi0;
      case 1: return phi1;
      case 2: return chi0;
      default: return chi1;
    }
  }
  Spinor phi() const { return {phi0, phi1, Variance::lower, false}; }
  Spinor chi() const { return {chi0, chi1, Variance::upper, true}; }
  double density() const { return std::norm(phi0) + std::norm(phi1) + std::norm(chi0) + std::norm(chi1); }
  Bispinor scaled(Complex s) const { return {s * phi0, s * phi1, s * chi0, s * chi1}; }
};

/// t_pm = t pm z - i a and x_pm = x pm i y, shared by every massless formula.
struct LightconeVars {
  Complex t_plus;
  Complex t_minus;
  Complex x_plus;
  Complex x_minus;

  static LightconeVars at(const SpacetimePoint& p, double a) {
    return {{p.t + p.z, -a}, {p.t - p.z, -a}, {p.x, p.y}, {p.x, -p.y}};
  }
};

inline Spinor default_eta_bar() { return {1.0, 0.0, Variance::upper, true}; }

/// D(x) = ((a + i t)^2 + x^2 + y^2 + z^2)^-1.
inline Complex d_factor(const SpacetimePoint& p, double a) {
  require_positive_scale(a, "scale a");
  const Complex at{a, p.t};
  return 1.0 / (at * at + p.r2());
}

namespace detail {

// x^mu - i a^mu
inline std::array<Complex, 4> shifted_position(const SpacetimePoint& p, double a) {
  return {Complex{p.t, -a}, Complex{p.x}, Complex{p.y}, Complex{p.z}};
}

// a^mu + i x^mu
inline std::array<Complex, 4> complexified_position(const SpacetimePoint& p, double a) {
  return {Complex{a, p.t}, Complex{0.0, p.x}, Complex{0.0, p.y}, Complex{0.0, p.z}};
}

}  // namespace detail

/// Generating function D exp(-i D eta^A g_{mu AB'} (x^mu - i a^mu) eta^{B'}),
/// with the constant pi^2 dropped. eta is upper undotted, eta_bar upper
/// dotted; they are independent arguments (eta_bar need not be conj(eta)).
inline Complex upsilon_massless(const Spinor& eta, const Spinor& eta_bar, const SpacetimePoint& p, double a) {
  const Complex d = d_factor(p, a);
  const Mat2 g = contract(SpinTensorKind::lower_undotted_dotted, detail::shifted_position(p, a));
  const auto g_eta_bar = g * eta_bar.components();
  const Complex bilinear = eta[0] * g_eta_bar[0] + eta[1] * g_eta_bar[1];
  return d * std::exp(-I * d * bilinear);
}

/// psi_A(x) = D(x) g_{mu AB'} eta^{B'} (x^mu - i a^mu); lower undotted.
inline Spinor psi_spinor(const SpacetimePoint& p, const Spinor& eta_bar, double a) {
  const Complex d = d_factor(p, a);
  const Mat2 g = contract(SpinTensorKind::lower_undotted_dotted, detail::shifted_position(p, a));
  const auto v = g * eta_bar.components();
  return {d * v[0], d * v[1], Variance::lower, false};
}

/// d_mu psi_A for mu = t, x, y, z, coded analytically.
inline std::array<Spinor, 4> psi_spinor_gradient(const SpacetimePoint& p, const Spinor& eta_bar, double a) {
  const Complex d = d_factor(p, a);
  const Mat2 g = contract(SpinTensorKind::lower_undotted_dotted, detail::shifted_position(p, a));
  const auto v = g * eta_bar.components();
  // d_mu (1/D): 2i(a + i t) for t, 2 x_i for space.
  const std::array<Complex, 4> d_inv{2.0 * I * Complex{a, p.t}, 2.0 * p.x, 2.0 * p.y, 2.0 * p.z};
  std::array<Spinor, 4> out;
  for (int mu = 0; mu < 4; ++mu) {
    const Complex d_d = -d * d * d_inv[static_cast<std::size_t>(mu)];
    const auto w = spin_tensor(SpinTensorKind::lower_undotted_dotted, mu) * eta_bar.components();
    out[static_cast<std::size_t>(mu)] =
        Spinor{d_d * v[0] + d * w[0], d_d * v[1] + d * w[1], Variance::lower, false};
  }
  return out;
}

/// phi_C = D h1(psi_0, psi_1) psi_C: a Weyl solution for any holomorphic h1.
template <class H>
  requires std::invocable<H, Complex, Complex>
Spinor weyl_field(H&& h1, const Spinor& eta_bar, const SpacetimePoint& p, double a) {
  const Spinor psi = psi_spinor(p, eta_bar, a);
  const Complex amp = d_factor(p, a) * Complex(h1(psi[0], psi[1]));
  return psi.scaled(amp);
}

/// The symmetric spinor (phi_00, phi_01, phi_11) behind an RS vector.
struct SymmetricSpinor {
  Complex s00;
  Complex s01;
  Complex s11;
};

/// F_x = phi_11 - phi_00, F_y = -i(phi_11 + phi_00), F_z = 2 phi_01.
inline RSVector rs_from_spinor(const SymmetricSpinor& s) {
  return {s.s11 - s.s00, -I * (s.s11 + s.s00), 2.0 * s.s01};
}

inline SymmetricSpinor spinor_from_rs(const RSVector& f) {
  const Complex sum = I * f.y;  // phi_11 + phi_00
  return {0.5 * (sum - f.x), 0.5 * f.z, 0.5 * (sum + f.x)};
}

/// phi_CD = D h2(psi) psi_C psi_D, assembled into an RS vector.
template <class H>
  requires std::invocable<H, Complex, Complex>
RSVector maxwell_field(H&& h2, const Spinor& eta_bar, const SpacetimePoint& p, double a) {
  const Spinor psi = psi_spinor(p, eta_bar, a);
  const Complex amp = d_factor(p, a) * Complex(h2(psi[0], psi[1]));
  return rs_from_spinor({amp * psi[0] * psi[0], amp * psi[0] * psi[1], amp * psi[1] * psi[1]});
}

/// The two simplest Weyl hopfions: D^2 (t_+, x_+) and D^2 (x_-, t_-).
inline Spinor weyl_hopfion(int which, const SpacetimePoint& p, double a) {
  const Complex d = d_factor(p, a);
  const auto v = LightconeVars::at(p, a);
  if (which == 1) return {d * d * v.t_plus, d * d * v.x_plus, Variance::lower, false};
  if (which == 2) return {d * d * v.x_minus, d * d * v.t_minus, Variance::lower, false};
  throw DomainError("weyl_hopfion: which must be 1 or 2");
}

/// The two Maxwell hopfions, transcribed directly (independent of maxwell_field).
inline RSVector maxwell_hopfion(int which, const SpacetimePoint& p, double a) {
  const Complex d = d_factor(p, a);
  const Complex d3 = d * d * d;
  const auto v = LightconeVars::at(p, a);
  if (which == 1) {
    const Complex tt = v.t_plus * v.t_plus, xx = v.x_plus * v.x_plus;
    return {d3 * (tt - xx), d3 * I * (tt + xx), -2.0 * d3 * v.t_plus * v.x_plus};
  }
  if (which == 2) {
    const Complex tt = v.t_minus * v.t_minus, xx = v.x_minus * v.x_minus;
    return {d3 * (xx - tt), d3 * I * (tt + xx), -2.0 * d3 * v.x_minus * v.t_minus};
  }
  throw DomainError("maxwell_hopfion: which must be 1 or 2");
}

inline void require_knot_exponents(int p, int q) {
  if (p < 1 || q < 1) throw DomainError("knot_field: p and q must be positive");
  if (std::gcd(p, q) != 1)
    throw DomainError("knot_field: p=" + std::to_string(p) + " and q=" + std::to_string(q) + " are not coprime");
}

/// maxwell_field with h = psi_0^p psi_1^q, (p, q) coprime.
inline RSVector knot_field(int p, int q, const SpacetimePoint& x, double a,
                           const Spinor& eta_bar = default_eta_bar()) {
  require_knot_exponents(p, q);
  return maxwell_field([p, q](Complex u, Complex v) { return std::pow(u, p) * std::pow(v, q); }, eta_bar, x, a);
}

/// F_B = grad alpha x grad beta with alpha = psi_1, beta = psi_0 and
/// analytic gradients. With this assignment F_B = -i F_H.
inline RSVector bateman_field(const SpacetimePoint& x, double a, const Spinor& eta_bar = default_eta_bar()) {
  const auto g = psi_spinor_gradient(x, eta_bar, a);
  const std::array<Complex, 3> ga{g[1][1], g[2][1], g[3][1]};
  const std::array<Complex, 3> gb{g[1][0], g[2][0], g[3][0]};
  return {ga[1] * gb[2] - ga[2] * gb[1], ga[2] * gb[0] - ga[0] * gb[2], ga[0] * gb[1] - ga[1] * gb[0]};
}

/// The four base Dirac hopfions (pi m^2/4)[delta frak_K_1 ; g (a + i x) frak_K_2]
/// (index undotted) and (pi m^2/4)[g (a + i x) frak_K_2 ; delta frak_K_1] (dotted).
inline Bispinor dirac_base(int index, bool dotted, const SpacetimePoint& x, double a, double m) {
  if (index != 0 && index != 1) throw DomainError("dirac_base: index must be 0 or 1");
  require_positive_scale(m, "mass m");
  const auto k = frak_K_sequence(2, m, complex_distance(x, a));
  const Complex c = pi * m * m / 4.0;
  const auto w = detail::complexified_position(x, a);
  const auto col = static_cast<std::size_t>(index);
  const Complex delta0 = index == 0 ? 1.0 : 0.0;
  const Complex delta1 = index == 1 ? 1.0 : 0.0;
  if (!dotted) {
    const Mat2 g = contract(SpinTensorKind::lower_dotted_undotted, w);
    return {c * delta0 * k[1], c * delta1 * k[1], c * g[0][col] * k[2], c * g[1][col] * k[2]};
  }
  const Mat2 g = contract(SpinTensorKind::lower_undotted_dotted, w);
  return {c * g[0][col] * k[2], c * g[1][col] * k[2], c * delta0 * k[1], c * delta1 * k[1]};
}

namespace detail {

struct DiracVars {
  LightconeVars v;
  Complex q;  // (a + i t)^2 - x^2 - y^2 + z^2
  std::array<Complex, 6> k;

  DiracVars(const SpacetimePoint& x, double a, double m) : v(LightconeVars::at(x, a)) {
    require_positive_scale(m, "mass m");
    const Complex at{a, x.t};
    q = at * at - x.x * x.x - x.y * x.y + x.z * x.z;
    const auto seq = frak_K_sequence(5, m, complex_distance(x, a));
    std::copy(seq.begin(), seq.end(), k.begin());
  }
};

}  // namespace detail

/// Higher Dirac solutions Psi_2, Psi_4, Psi_6, Psi_8 exactly as tabulated.
/// Psi_6 and Psi_8 in this printed form do not satisfy the Dirac equation;
/// see repaired::psi6/psi8 and verify::dirac_diagnostics.
inline Bispinor psi_k(int k, const SpacetimePoint& x, double a, double m) {
  const detail::DiracVars d(x, a, m);
  const auto& [tp, tm, xp, xm] = d.v;
  const auto& K = d.k;
  switch (k) {
    case 2: {
      const Complex c = m * m * pi / 4.0;
      return {c * K[1], 0.0, c * I * tm * K[2], -c * I * xp * K[2]};
    }
    case 4: {
      const Complex c = m * m * m * pi / 24.0;
      return {-c * I * xm * K[2], c * I * tm * K[2], c * 2.0 * xm * tm * K[3], c * d.q * K[3]};
    }
    case 6: {
      const Complex c = std::pow(m, 4) * pi / 96.0;
      const double rho2 = x.x * x.x + x.y * x.y;
      return {c * xm * tm * K[3], -c * d.q * K[3], c * (4.0 * I * xm * K[3] / m - I * xm * rho2 * K[4]),
              c * (4.0 * I * tp * K[3] / m + tm * tp * tp * K[4])};
    }
    case 8: {
      const Complex c = std::pow(m, 5) * pi / 960.0;
      return {c * xp * tm * d.q * K[5], -c * 2.0 * xp * xp * tm * tm * K[5], c * I * xp * tm * tm * K[4],
              c * I * xm * xm * tm * K[4]};
    }
    default: throw DomainError("psi_k: k must be one of 2, 4, 6, 8");
  }
}

/// Dirac solutions that differ from the tabulated Psi_6/Psi_8 only where the
/// tabulated forms fail the Dirac equation. Diagnostics only.
namespace repaired {

/// Upper spinor of Psi_6 as tabulated; lower spinor (i/m)(d_t + sigma.grad) phi.
inline Bispinor psi6(const SpacetimePoint& x, double a, double m) {
  const detail::DiracVars d(x, a, m);
  const auto& [tp, tm, xp, xm] = d.v;
  const auto& K = d.k;
  const Complex c = std::pow(m, 4) * pi / 96.0;
  const Complex t_shift{x.t, -a};
  return {c * xm * tm * K[3], -c * d.q * K[3],
          c * (2.0 * I * xm * K[3] / m - I * xm * (xp * xm + 2.0 * x.z * tm) * K[4]),
          c * (4.0 * I * t_shift * K[3] / m + I * (tm * tp * tp + 2.0 * x.z * xp * xm) * K[4])};
}

/// Psi_8 with chi^1 = i x_+^2 t_- frak_K_4 (tabulated with x_-^2).
inline Bispinor psi8(const SpacetimePoint& x, double a, double m) {
  Bispinor b = psi_k(8, x, a, m);
  const detail::DiracVars d(x, a, m);
  const Complex c = std::pow(m, 5) * pi / 960.0;
  b.chi1 = c * I * d.v.x_plus * d.v.x_plus * d.v.t_minus * d.k[4];
  return b;
}

}  // namespace repaired

/// Gamma matrices in the Weyl representation, gamma^mu = [[0, g^mu_{AB'}], [g^{mu A'B}, 0]].
using Mat4 = std::array<std::array<Complex, 4>, 4>;

inline Mat4 gamma_matrix(int mu) {
  Mat4 g{};
  const SpinTensor s = SpinTensor::of(mu);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) {
      g[r][c + 2] = s.undotted_dotted[r][c];
      g[r + 2][c] = s.dotted_undotted[r][c];
    }
  return g;
}

/// Psi^dag gamma^0 gamma^mu Psi without taking the real part.
inline ComplexFourVector dirac_bilinear(const Bispinor& psi) {
  const Mat4 g0 = gamma_matrix(0);
  ComplexFourVector j;
  for (int mu = 0; mu < 4; ++mu) {
    const Mat4 gm = gamma_matrix(mu);
    Complex acc{0.0};
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        Complex m{0.0};
        for (int k = 0; k < 4; ++k) m += g0[r][k] * gm[k][c];
        acc += std::conj(psi[r]) * m * psi[c];
      }
    j[mu] = acc;
  }
  return j;
}

/// Dirac current j^mu = Psi-bar gamma^mu Psi. j^0 = |phi|^2 + |chi|^2,
/// j^i = phi^dag sigma_i phi - chi^dag sigma_i chi.
inline FourVector dirac_current(const Bispinor& psi) {
  const ComplexFourVector j = dirac_bilinear(psi);
  return {{j[0].real(), j[1].real(), j[2].real(), j[3].real()}};
}

/// j^mu = phi-bar_{A'} g^{mu A'B} phi_B, null and future pointing.
inline FourVector weyl_current(const Spinor& phi) { return lightlike_vector(phi); }

struct MaxwellStress {
  double energy_density;  // (|E|^2 + |B|^2) / 2
  Vec3 poynting;          // E x B
};

inline MaxwellStress maxwell_stress(const RSVector& f) {
  const Vec3 e = f.E(), b = f.B();
  return {0.5 * (dot(e, e) + dot(b, b)), cross(e, b)};
}

}  // namespace hopfion
