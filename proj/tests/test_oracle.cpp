#include <random>

#include <gtest/gtest.h>

#include "hopfion/oracle.hpp"
#include "hopfion/solutions.hpp"
#include "hopfion/special_functions.hpp"

using namespace hopfion;

namespace {

const Spinor zero_up{0.0, 0.0, Variance::upper, false};
const Spinor zero_up_dot{0.0, 0.0, Variance::upper, true};

// With eta = 0 the integrand is a plain Gaussian in C^2:
// int d^4 xi exp(-kappa^dag M kappa) = pi^2 / det M, det M = (a + i t)^2 + r^2.
Complex gaussian_volume(const SpacetimePoint& x, double a) {
  const Complex at{a, x.t};
  return pi * pi / (at * at + x.r2());
}

}  // namespace

TEST(UpsilonQuadrature, GaussianAtOrigin) {
  const QuadratureResult q = upsilon_by_quadrature(zero_up, zero_up_dot, {0, 0, 0, 0}, 1.0);
  EXPECT_TRUE(q.converged);
  EXPECT_LE(std::abs(q.value - pi * pi) / (pi * pi), 1e-4);
  EXPECT_LE(std::abs(q.value - pi * pi * upsilon_massless(zero_up, zero_up_dot, {0, 0, 0, 0}, 1.0)), 1e-10);
}

TEST(UpsilonQuadrature, TimeShift) {
  const Complex want = pi * pi * Complex(0.0, -0.5);
  const QuadratureResult q = upsilon_by_quadrature(zero_up, zero_up_dot, {1, 0, 0, 0}, 1.0);
  EXPECT_LE(std::abs(q.value - want) / std::abs(want), 1e-4);
  EXPECT_LE(std::abs(gaussian_volume({1, 0, 0, 0}, 1.0) - want), 1e-15);
}

TEST(UpsilonQuadrature, SourceDamping) {
  const Spinor eta{1.0, 0.0, Variance::upper, false}, eta_bar{1.0, 0.0, Variance::upper, true};
  const QuadratureResult q = upsilon_by_quadrature(eta, eta_bar, {0, 0, 0, 0}, 1.0);
  const double want = pi * pi * std::exp(-1.0);
  EXPECT_LE(std::abs(q.value - want) / want, 1e-4);
}

TEST(UpsilonQuadrature, ZeroSourceMatchesGaussianVolume) {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> n;
  for (int i = 0; i < 10; ++i) {
    const SpacetimePoint x{n(rng), n(rng), n(rng), n(rng)};
    const double a = 0.5 + std::abs(n(rng));
    const QuadratureResult q = upsilon_by_quadrature(zero_up, zero_up_dot, x, a);
    const Complex want = gaussian_volume(x, a);
    EXPECT_LE(std::abs(q.value - want) / std::abs(want), 1e-4) << i;
  }
}

TEST(UpsilonQuadrature, RandomSourcesAgainstClosedForm) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> n;
  for (int i = 0; i < 10; ++i) {
    const Spinor eta{Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, false};
    const Spinor eta_bar{Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, true};
    const SpacetimePoint x{n(rng), n(rng), n(rng), n(rng)};
    const QuadratureResult q = upsilon_by_quadrature(eta, eta_bar, x, 1.0);
    const Complex closed = pi * pi * upsilon_massless(eta, eta_bar, x, 1.0);
    EXPECT_LE(std::abs(q.value - closed) / std::abs(closed), 1e-4) << i;
    EXPECT_LE(q.relative_error(), 1e-4);
  }
}

TEST(UpsilonQuadrature, FourDimensionalRuleAgrees) {
  std::mt19937_64 rng(33);
  std::normal_distribution<double> n;
  UpsilonQuadratureOptions o;
  o.method = UpsilonMethod::tensor_4d;
  o.max_nodes = 72;
  o.tolerance = 1e-6;
  for (int i = 0; i < 3; ++i) {
    const Spinor eta{Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, false};
    const Spinor eta_bar{Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, true};
    const SpacetimePoint x{0.5 * n(rng), 0.5 * n(rng), 0.5 * n(rng), 0.5 * n(rng)};
    const Complex semi = upsilon_by_quadrature(eta, eta_bar, x, 1.0).value;
    const Complex full = upsilon_by_quadrature(eta, eta_bar, x, 1.0, o).value;
    EXPECT_LE(std::abs(semi - full) / std::abs(semi), 1e-4) << i;
  }
}

TEST(GaussHermite, MomentsExactForLargeRules) {
  for (int n : {1, 2, 7, 32, 64, 128, 256, 512}) {
    const auto& r = gauss_hermite(n);
    ASSERT_EQ(r.nodes.size(), static_cast<std::size_t>(n));
    double s0 = 0, s2 = 0, sc = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      s0 += r.weights[i];
      s2 += r.weights[i] * r.nodes[i] * r.nodes[i];
      sc += r.weights[i] * std::cos(3.0 * r.nodes[i]);
    }
    EXPECT_NEAR(s0, std::sqrt(pi), 1e-14) << n;
    if (n >= 2) {
      EXPECT_NEAR(s2, std::sqrt(pi) / 2, 1e-14) << n;
    }
    if (n >= 32) {
      EXPECT_NEAR(sc, std::sqrt(pi) * std::exp(-2.25), 1e-14) << n;
    }
    for (std::size_t i = 1; i < r.nodes.size(); ++i) EXPECT_LT(r.nodes[i - 1], r.nodes[i]);
  }
}

TEST(UvIntegral, ClosedFormExamples) {
  const QuadratureResult one = uv_integral(UvWeight::one, 1.0, 1.0);
  // (pi/4) K_2(1) from a 30-digit reference
  EXPECT_NEAR(one.value.real(), 1.2761454868048011, 1e-6);
  EXPECT_LE(std::abs(one.value - pi / 4.0 * macdonald_K(2, 1.0)), 1e-6 * 1.2761454868048011);
  const QuadratureResult w1 = uv_integral(UvWeight::minus_v_plus_iu, 1.0, 1.0);
  EXPECT_NEAR(w1.value.real(), 0.472737, 1e-6);
  EXPECT_LE(std::abs(w1.value - pi / 4.0 * macdonald_K(1, 1.0)), 1e-6 * 0.472737);
  const QuadratureResult wv = uv_integral(UvWeight::v, 1.0, 1.0);
  EXPECT_LE(std::abs(wv.value), 1e-10);
}

TEST(UvIntegral, ComplexDistanceParameter) {
  const double m = 0.7;
  const Complex s{0.6, 1.5};
  const Complex k2 = pi * m * m / 4.0 * frak_K(2, m, s), k1 = pi * m * m / 4.0 * frak_K(1, m, s);
  EXPECT_LE(std::abs(uv_integral(UvWeight::one, m, s).value - k2) / std::abs(k2), 1e-6);
  EXPECT_LE(std::abs(uv_integral(UvWeight::minus_v_plus_iu, m, s).value - k1) / std::abs(k1), 1e-6);
}

TEST(UvIntegral, DoublingCutoffStaysWithinErrorEstimate) {
  for (const auto& [m, s] : {std::pair{1.0, Complex{1.0, 0.0}}, std::pair{1.0, Complex{2.0, -0.7}}}) {
    for (UvWeight w : {UvWeight::one, UvWeight::minus_v_plus_iu}) {
      const QuadratureResult base = uv_integral(w, m, s);
      UvIntegralOptions wide;
      wide.cutoff = 400.0;
      const QuadratureResult doubled = uv_integral(w, m, s, wide);
      EXPECT_LE(std::abs(doubled.value - base.value), base.error) << to_string(w) << " s=" << s;
    }
  }
}

TEST(UvIntegral, RejectsBadArguments) {
  EXPECT_THROW(uv_integral(UvWeight::one, 0.0, 1.0), DomainError);
  EXPECT_THROW(uv_integral(UvWeight::one, 1.0, Complex{-1.0, 0.0}), DomainError);
}

TEST(KgSupport, IdentitiesHold) {
  const KgSupportResult r = kg_support_check(1.3, 1000, 34);
  EXPECT_EQ(r.samples, 1000);
  EXPECT_LE(r.max_dot_identity_error, 1e-12);
  EXPECT_LE(r.max_square_identity_error, 1e-12);
  EXPECT_LE(r.max_mass_shell_error, 1e-12);
  EXPECT_LE(r.max_parallel_product, 1e-12);
  EXPECT_LE(r.max_antisymmetry, 1e-12);
}

TEST(KgSupport, ExplicitPair) {
  // kappa = (1, 0), lambda = (0, 1): k = (1,0,0,1), l = (1,0,0,-1), k.l = 2,
  // kappa_A lambda^A = kappa_0 lambda^0 + kappa_1 lambda^1 = 1.
  const Spinor kappa{1.0, 0.0}, lambda{0.0, 1.0};
  EXPECT_EQ(std::norm(spinor_bracket(kappa, lambda)), 1.0);
}
