#pragma once

// Numerical-integration oracles for the closed forms.
//
// upsilon_by_quadrature integrates over kappa = (xi1 + i xi2, xi3 + i xi4)
//   exp(-kappa^dag M kappa - i eta^A kappa_A - i eta_bar^{A'} kappa-bar_{A'}),
//   M = (a + i t) I - i sigma.r,
// which is the spinorial Fourier integral with the Gaussian profile; the
// result should be pi^2 times upsilon_massless.
//
// uv_integral evaluates int du dv e^{imu} w(u, v) / (u^2 + v^2 + s^2)^3,
// whose closed forms are (pi m^2/4) frak_K_2 (w = 1) and (pi m^2/4) frak_K_1
// (w = -(v + i u)).

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "hopfion/quadrature.hpp"
#include "hopfion/spinor.hpp"

namespace hopfion {

enum class UpsilonMethod {
  semi_analytic,  // kappa_1 integrated in closed form, kappa_0 by 2D Gauss-Hermite
  tensor_4d,      // 4D tensor-product Gauss-Hermite over all four real variables
};

namespace detail {

struct GaussianForm {
  Complex m00, m01, m10, m11;
  Complex u0, u1;  // coefficients of kappa_0, kappa_1
  Complex v0, v1;  // coefficients of kappa-bar_0, kappa-bar_1

  GaussianForm(const Spinor& eta, const Spinor& eta_bar, const SpacetimePoint& x, double a) {
    const Complex at{a, x.t};
    m00 = at - I * x.z;
    m01 = -I * Complex{x.x, -x.y};
    m10 = -I * Complex{x.x, x.y};
    m11 = at + I * x.z;
    u0 = -I * eta[0];
    u1 = -I * eta[1];
    v0 = -I * eta_bar[0];
    v1 = -I * eta_bar[1];
  }

  Complex exponent(Complex k0, Complex k1) const {
    const Complex b0 = std::conj(k0), b1 = std::conj(k1);
    return -(m00 * b0 * k0 + m01 * b0 * k1 + m10 * b1 * k0 + m11 * b1 * k1) + u0 * k0 + u1 * k1 + v0 * b0 + v1 * b1;
  }
};

inline Complex upsilon_semi_analytic(const GaussianForm& g, int n) {
  // kappa_1 integral: int d^2z exp(-A|z|^2 + b z + c z-bar) = (pi/A) exp(bc/A), Re A = a > 0.
  const Complex schur = (g.m00 * g.m11 - g.m01 * g.m10) / g.m11;
  const double alpha = schur.real();
  const double scale = 1.0 / std::sqrt(alpha);
  const auto& rule = gauss_hermite(n);
  Complex sum{0.0};
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const Complex k0{scale * rule.nodes[i], scale * rule.nodes[j]};
      const Complex kb = std::conj(k0);
      const Complex b = g.u1 - g.m01 * kb;
      const Complex c = g.v1 - g.m10 * k0;
      const Complex e = -g.m00 * kb * k0 + g.u0 * k0 + g.v0 * kb + b * c / g.m11 + alpha * std::norm(k0);
      sum += rule.weights[i] * rule.weights[j] * std::exp(e);
    }
  return sum * (pi / g.m11) / alpha;
}

inline Complex upsilon_tensor_4d(const GaussianForm& g, double a, int n) {
  const auto& rule = gauss_hermite(n);
  const double scale = 1.0 / std::sqrt(a);
  const std::size_t N = rule.nodes.size();
  Complex sum{0.0};
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      const Complex k0{scale * rule.nodes[i], scale * rule.nodes[j]};
      const double wij = rule.weights[i] * rule.weights[j];
      for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < N; ++l) {
          const Complex k1{scale * rule.nodes[k], scale * rule.nodes[l]};
          const Complex e = g.exponent(k0, k1) + a * (std::norm(k0) + std::norm(k1));
          sum += wij * rule.weights[k] * rule.weights[l] * std::exp(e);
        }
    }
  return sum / (a * a);
}

}  // namespace detail

struct UpsilonQuadratureOptions {
  UpsilonMethod method = UpsilonMethod::semi_analytic;
  double tolerance = 1e-10;  // relative, on successive refinements
  int start_nodes = 32;
  int max_nodes = 256;
};

/// The Gaussian spinorial Fourier integral. `value` includes the pi^2 that
/// upsilon_massless drops. Refines the node count until two successive
/// rules agree to `tolerance`; their difference is the error estimate.
inline QuadratureResult upsilon_by_quadrature(const Spinor& eta, const Spinor& eta_bar, const SpacetimePoint& x,
                                              double a, const UpsilonQuadratureOptions& opt = {}) {
  require_positive_scale(a, "scale a");
  const detail::GaussianForm g(eta, eta_bar, x, a);
  auto eval = [&](int n) {
    return opt.method == UpsilonMethod::semi_analytic ? detail::upsilon_semi_analytic(g, n)
                                                      : detail::upsilon_tensor_4d(g, a, n);
  };
  const long per_rule_power = opt.method == UpsilonMethod::semi_analytic ? 2 : 4;
  QuadratureResult r;
  int n = opt.start_nodes;
  Complex previous = eval(n);
  r.value = previous;
  r.evaluations += static_cast<long>(std::pow(n, per_rule_power));
  while (true) {
    const int next = opt.method == UpsilonMethod::semi_analytic ? 2 * n : n + n / 2;
    if (next > opt.max_nodes) break;
    const Complex current = eval(next);
    r.evaluations += static_cast<long>(std::pow(next, per_rule_power));
    r.value = current;
    r.error = std::abs(current - previous);
    n = next;
    if (r.error <= opt.tolerance * std::abs(current)) {
      r.converged = true;
      return r;
    }
    previous = current;
  }
  return r;
}

enum class UvWeight { one, minus_v_plus_iu, v };

inline std::string to_string(UvWeight w) {
  switch (w) {
    case UvWeight::one: return "one";
    case UvWeight::minus_v_plus_iu: return "minus_v_plus_iu";
    default: return "v";
  }
}

struct UvIntegralOptions {
  double cutoff = 200.0;      // radial cutoff in u,v space
  double panel_tol = 1e-11;
};

/// int du dv e^{imu} w(u, v) / (u^2 + v^2 + s^2)^3 in polar coordinates:
/// trapezoid rule in the angle (spectrally accurate for periodic integrands),
/// Gauss-Kronrod panels of width <= pi/m in the radius up to the cutoff. The
/// error estimate adds the panel errors and the change from cutoff/2 to cutoff.
inline QuadratureResult uv_integral(UvWeight weight, double m, Complex s, const UvIntegralOptions& opt = {}) {
  require_positive_scale(m, "mass m");
  if (!(s.real() > 0.0)) throw DomainError("uv_integral: requires Re s > 0");
  const Complex s2 = s * s;
  auto angular = [&](double rho) {
    // exact once n exceeds m rho by a margin (the error is of order J_n(m rho))
    const int n = 4 * static_cast<int>(std::ceil((m * rho + 40.0) / 4.0));
    Complex sum{0.0};
    for (int k = 0; k < n; ++k) {
      const double th = 2.0 * pi * k / n;
      const double u = rho * std::cos(th), v = rho * std::sin(th);
      Complex w{1.0};
      if (weight == UvWeight::minus_v_plus_iu) w = -Complex{v, u};
      else if (weight == UvWeight::v) w = v;
      sum += std::polar(1.0, m * u) * w;
    }
    return sum * (2.0 * pi / n);
  };
  auto radial = [&](double rho) {
    const Complex d = rho * rho + s2;
    return rho * angular(rho) / (d * d * d);
  };
  const double width = std::min(0.5, pi / m);
  const double half = 0.5 * opt.cutoff;
  QuadratureResult inner = integrate_panels(radial, 0.0, half, width, opt.panel_tol);
  QuadratureResult outer = integrate_panels(radial, half, opt.cutoff, width, opt.panel_tol);
  QuadratureResult r;
  r.value = inner.value + outer.value;
  r.error = inner.error + outer.error + std::abs(outer.value);
  r.evaluations = inner.evaluations + outer.evaluations;
  r.converged = std::isfinite(r.value.real()) && std::isfinite(r.value.imag());
  return r;
}

/// Results of the algebraic identity behind the Klein-Gordon property.
struct KgSupportResult {
  int samples = 0;
  double max_dot_identity_error = 0.0;     // |k.l - 2|kappa_A lambda^A|^2| / (k^0 l^0)
  double max_square_identity_error = 0.0;  // |(k+l)^2 - 4|kappa_A lambda^A|^2| / (k^0 + l^0)^2
  double max_mass_shell_error = 0.0;       // |(k+l)^2 - m^2| / (k^0 + l^0)^2 on the constraint surface
  double max_parallel_product = 0.0;       // |k.l| / (k^0 l^0) for lambda proportional to kappa
  double max_antisymmetry = 0.0;           // |kappa_B kappa_C eps^{BC}| / |kappa|^2
};

/// kappa_A lambda^A with lambda given lower (raised internally).
inline Complex spinor_bracket(const Spinor& kappa, const Spinor& lambda) {
  return scalar_product(kappa, raise_lower(lambda));
}

/// Checks k.l = 2|kappa_A lambda^A|^2 for random pairs, the resulting mass
/// shell (k + l)^2 = m^2 once kappa_A lambda^A is rescaled to m/2, the zero
/// for proportional spinors, and eps^{BC} kappa_B kappa_C = 0.
inline KgSupportResult kg_support_check(double m, int samples, std::uint64_t seed) {
  require_positive_scale(m, "mass m");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  auto random_spinor = [&] {
    return Spinor{Complex{normal(rng), normal(rng)}, Complex{normal(rng), normal(rng)}, Variance::lower, false};
  };
  auto dot4 = [](const FourVector& p, const FourVector& q) {
    return p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3];
  };
  KgSupportResult r;
  r.samples = samples;
  for (int i = 0; i < samples; ++i) {
    const Spinor kappa = random_spinor(), lambda = random_spinor();
    const FourVector k = lightlike_vector(kappa), l = lightlike_vector(lambda);
    const Complex br = spinor_bracket(kappa, lambda);
    const double kl = dot4(k, l);
    r.max_dot_identity_error = std::max(r.max_dot_identity_error, std::abs(kl - 2.0 * std::norm(br)) / (k[0] * l[0]));
    FourVector sum;
    for (int mu = 0; mu < 4; ++mu) sum[mu] = k[mu] + l[mu];
    r.max_square_identity_error = std::max(r.max_square_identity_error,
                                           std::abs(minkowski_square(sum) - 4.0 * std::norm(br)) / (sum[0] * sum[0]));

    // Rescale lambda so that kappa_A lambda^A = m/2 (real): both delta
    // constraints then hold.
    const Spinor on_shell = lambda.scaled(0.5 * m / br);
    const FourVector l2 = lightlike_vector(on_shell);
    FourVector sum2;
    for (int mu = 0; mu < 4; ++mu) sum2[mu] = k[mu] + l2[mu];
    r.max_mass_shell_error = std::max(r.max_mass_shell_error, std::abs(minkowski_square(sum2) - m * m) / (sum2[0] * sum2[0]));

    const Spinor parallel = kappa.scaled(Complex{normal(rng), normal(rng)});
    const FourVector lp = lightlike_vector(parallel);
    r.max_parallel_product = std::max(r.max_parallel_product, std::abs(dot4(k, lp)) / (k[0] * lp[0]));
    r.max_antisymmetry = std::max(r.max_antisymmetry, std::abs(spinor_bracket(kappa, kappa)) / k[0]);
  }
  return r;
}

}  // namespace hopfion
