#pragma once

// Macdonald functions K_n(z) of integer order and complex argument with
// Re z > 0, the composite frak_K_n = K_n(m s) / s^n, and the complex
// spacetime distance s = sqrt((a + i t)^2 + r^2).
//
// K_0 and K_1 come from one of three regimes, K_n (n >= 2) from the upward
// recurrence K_{n+1} = K_{n-1} + (2n/z) K_n, which is stable for K.
//   |z| <= 2        ascending series (through I_0, I_1)
//   2 < |z| < 30    Temme's continued fraction (Steed's algorithm)
//   |z| >= 30       Hankel asymptotic series, truncated at its smallest term

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "hopfion/core.hpp"

namespace hopfion {

enum class MacdonaldRegime { series, continued_fraction, asymptotic };

inline MacdonaldRegime macdonald_regime(Complex z) {
  const double r = std::abs(z);
  if (r <= 2.0) return MacdonaldRegime::series;
  if (r < 30.0) return MacdonaldRegime::continued_fraction;
  return MacdonaldRegime::asymptotic;
}

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct KPair {
  Complex k0;
  Complex k1;
};

inline KPair k01_series(Complex z) {
  const Complex q = 0.25 * z * z;
  const Complex log_half = std::log(0.5 * z);

  Complex i0{0.0}, i1_sum{0.0}, k0_sum{0.0}, k1_sum{0.0};
  Complex term0{1.0};  // q^k / (k!)^2
  Complex term1{1.0};  // q^k / (k! (k+1)!)
  double harmonic = 0.0;  // H_k
  for (int k = 0; k < 200; ++k) {
    if (k > 0) {
      term0 *= q / (double(k) * double(k));
      term1 *= q / (double(k) * double(k + 1));
      harmonic += 1.0 / k;
    }
    const double harmonic_next = harmonic + 1.0 / (k + 1);
    i0 += term0;
    i1_sum += term1;
    k0_sum += harmonic * term0;
    // psi(k+1) + psi(k+2) = H_k + H_{k+1} - 2 gamma
    k1_sum += (harmonic + harmonic_next - 2.0 * euler_gamma) * term1;
    if (std::abs(term0) < 1e-18 * std::abs(i0) && std::abs(term1) < 1e-18 * std::abs(i1_sum) && k > 2) break;
  }
  const Complex i1 = 0.5 * z * i1_sum;
  const Complex k0 = -(log_half + euler_gamma) * i0 + k0_sum;
  const Complex k1 = 1.0 / z + log_half * i1 - 0.25 * z * k1_sum;
  return {k0, k1};
}

// Temme's CF2 evaluated with Steed's algorithm at order 0.
inline KPair k01_continued_fraction(Complex z) {
  constexpr int max_iterations = 100000;
  constexpr double eps = 1e-17;
  const double a1 = 0.25;
  Complex b = 2.0 * (1.0 + z);
  Complex d = 1.0 / b;
  Complex h = d;
  Complex delh = d;
  Complex q1{0.0}, q2{1.0};
  double a = -a1;
  double c = a1;
  Complex q{a1};
  Complex s = 1.0 + q * delh;
  for (int i = 2; i <= max_iterations; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const Complex qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const Complex dels = q * delh;
    s += dels;
    if (std::abs(dels) < eps * std::abs(s)) break;
  }
  h = a1 * h;
  const Complex k0 = std::sqrt(pi / (2.0 * z)) * std::exp(-z) / s;
  const Complex k1 = k0 * (z + 0.5 - h) / z;
  return {k0, k1};
}

inline Complex k_asymptotic(int n, Complex z) {
  const double mu = 4.0 * n * n;
  Complex sum{1.0};
  Complex term{1.0};
  double previous = 1.0;
  for (int k = 1; k < 400; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= (mu - odd * odd) / (8.0 * k * z);
    const double size = std::abs(term);
    if (size == 0.0) break;
    if (size > previous) break;  // asymptotic series started to diverge
    sum += term;
    previous = size;
    if (size < 1e-18 * std::abs(sum)) break;
  }
  return std::sqrt(pi / (2.0 * z)) * std::exp(-z) * sum;
}

inline void check_macdonald_args(int n, Complex z) {
  if (n < 0) throw DomainError("macdonald_K: negative order " + std::to_string(n) + " is not supported");
  if (!(z.real() > 0.0)) throw DomainError("macdonald_K: requires Re z > 0");
}

inline KPair k01(Complex z) {
  switch (macdonald_regime(z)) {
    case MacdonaldRegime::series: return k01_series(z);
    case MacdonaldRegime::continued_fraction: return k01_continued_fraction(z);
    case MacdonaldRegime::asymptotic: return {k_asymptotic(0, z), k_asymptotic(1, z)};
  }
  return {};
}

}  // namespace detail

/// K_0(z) .. K_nmax(z) in one pass.
inline std::vector<Complex> macdonald_K_sequence(int nmax, Complex z) {
  detail::check_macdonald_args(nmax, z);
  const detail::KPair base = detail::k01(z);
  std::vector<Complex> k(static_cast<std::size_t>(std::max(nmax, 1) + 1));
  k[0] = base.k0;
  k[1] = base.k1;
  for (int j = 1; j < nmax; ++j) k[j + 1] = k[j - 1] + (2.0 * j / z) * k[j];
  k.resize(static_cast<std::size_t>(nmax + 1));
  return k;
}

/// Modified Bessel function of the second kind K_n(z), n >= 0, Re z > 0.
inline Complex macdonald_K(int n, Complex z) {
  detail::check_macdonald_args(n, z);
  return macdonald_K_sequence(n, z).back();
}

/// frak_K_n = K_n(m s) / s^n.
inline Complex frak_K(int n, double m, Complex s) {
  require_positive_scale(m, "mass m");
  if (!(s.real() > 0.0)) throw DomainError("frak_K: requires Re s > 0");
  return macdonald_K(n, m * s) / std::pow(s, n);
}

/// frak_K_0 .. frak_K_nmax at one (m, s).
inline std::vector<Complex> frak_K_sequence(int nmax, double m, Complex s) {
  require_positive_scale(m, "mass m");
  if (!(s.real() > 0.0)) throw DomainError("frak_K: requires Re s > 0");
  std::vector<Complex> k = macdonald_K_sequence(nmax, m * s);
  Complex power{1.0};
  for (auto& v : k) {
    v /= power;
    power *= s;
  }
  return k;
}

/// s = sqrt((a + i t)^2 + x^2 + y^2 + z^2) on the principal branch. For a > 0
/// the radicand never touches the negative real axis, and Re s >= a.
inline Complex complex_distance(const SpacetimePoint& p, double a) {
  require_positive_scale(a, "scale a");
  const Complex at{a, p.t};
  return std::sqrt(at * at + p.r2());
}

}  // namespace hopfion
