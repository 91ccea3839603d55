#include <random>

#include <gtest/gtest.h>

#include "hopfion/verify.hpp"

using namespace hopfion;

namespace {

ResidualConfig config(FdScheme s, double h) {
  ResidualConfig c;
  c.scheme = s;
  c.h = h;
  return c;
}

// Positive-helicity Weyl plane wave along k = w (1,1,1)/sqrt3: the spinor is
// the +1 eigenvector of sigma.khat, so (d_t + sigma.grad) phi = 0 exactly.
ComponentField weyl_plane_wave(double w) {
  const double c = 1.0 / std::sqrt(3.0);
  // eigenvector of [[c, c - ic], [c + ic, -c]] with eigenvalue 1
  const Complex u0 = 1.0 + c, u1 = Complex{c, c};
  return [=](const SpacetimePoint& x) {
    const Complex e = std::exp(Complex{0.0, -w * (x.t - c * (x.x + x.y + x.z))});
    return Components{u0 * e, u1 * e};
  };
}

std::vector<SpacetimePoint> off_origin_points() { return {{0.3, 0.1, -0.2, 0.5}, {-0.7, 0.4, 0.9, -0.1}, {1.1, 0, 0, 0}}; }

}  // namespace

TEST(Schemes, NamesAndOrders) {
  for (auto s : {FdScheme::central2, FdScheme::central4, FdScheme::richardson}) EXPECT_EQ(parse_scheme(to_string(s)), s);
  EXPECT_FALSE(parse_scheme("forward").has_value());
  EXPECT_EQ(scheme_order(FdScheme::central2), 2);
  EXPECT_EQ(scheme_order(FdScheme::central4), 4);
  EXPECT_EQ(scheme_order(FdScheme::richardson), 6);
}

TEST(DAlembert, TimeSquared) {
  const ComponentField f = [](const SpacetimePoint& x) { return Components{Complex{x.t * x.t}}; };
  for (auto s : {FdScheme::central2, FdScheme::central4, FdScheme::richardson}) {
    const PointResidual r = dalembert_at(f, {0.4, 1.0, -2.0, 0.5}, config(s, 1e-3));
    EXPECT_NEAR(r.absolute, 2.0, 1e-5) << to_string(s);
  }
}

TEST(DAlembert, PlaneWaveVanishes) {
  const ComponentField f = [](const SpacetimePoint& x) {
    return Components{std::exp(Complex{0.0, 2.0 * (x.z - x.t)}), std::cos(x.x + x.t)};
  };
  for (const auto& p : off_origin_points()) EXPECT_LE(dalembert_at(f, p, {}).relative(), 1e-8);
}

TEST(KleinGordon, MassiveMode) {
  const double m = 1.5, k = 0.8, w = std::sqrt(k * k + m * m);
  const ComponentField f = [=](const SpacetimePoint& x) { return Components{std::exp(Complex{0.0, k * x.y - w * x.t})}; };
  for (const auto& p : off_origin_points()) {
    EXPECT_LE(kleingordon_at(f, m, p, {}).relative(), 1e-8);
    EXPECT_GT(kleingordon_at(f, 1.1 * m, p, {}).relative(), 1e-2);
  }
}

TEST(Weyl, PlaneWaveAndOppositeHelicity) {
  const ComponentField f = weyl_plane_wave(2.0);
  for (const auto& p : off_origin_points()) EXPECT_LE(weyl_at(f, p, {}).relative(), 1e-9);
  const ComponentField reversed = [g = weyl_plane_wave(2.0)](const SpacetimePoint& x) {
    return g({-x.t, x.x, x.y, x.z});
  };
  EXPECT_GT(weyl_at(reversed, {0.2, 0.1, 0.1, 0.1}, {}).relative(), 0.1);
}

TEST(Weyl, ObservedOrderMatchesScheme) {
  const ComponentField f = weyl_plane_wave(3.0);
  const SpacetimePoint p{0.2, -0.1, 0.3, 0.05};
  const double h = 0.05;
  const double o2 = observed_order(weyl_at(f, p, config(FdScheme::central2, h)).absolute,
                                   weyl_at(f, p, config(FdScheme::central2, h / 2)).absolute);
  const double o4 = observed_order(weyl_at(f, p, config(FdScheme::central4, h)).absolute,
                                   weyl_at(f, p, config(FdScheme::central4, h / 2)).absolute);
  EXPECT_NEAR(o2, 2.0, 0.15);
  EXPECT_NEAR(o4, 4.0, 0.3);
}

TEST(Weyl, PlantedPerturbationIsCaught) {
  const ComponentField f = perturbed(weyl_plane_wave(1.0), 1e-3);
  const auto rec = run_residual_check("weyl", "plane", off_origin_points(),
                                      [&](const SpacetimePoint& x) { return weyl_at(f, x, {}); }, 1e-6);
  EXPECT_FALSE(rec.pass);
  EXPECT_GT(rec.max_relative, 1e-4);
  ASSERT_TRUE(rec.worst_point.has_value());
  EXPECT_NE(rec.worst_point->t, 0.0);
}

TEST(MaxwellRS, CircularlyPolarizedWave) {
  // F = (1, i, 0) e^{-iw(t - z)} satisfies i d_t F = curl F.
  const double w = 1.7;
  auto wave = [w](Complex pol_y) {
    return ComponentField{[=](const SpacetimePoint& x) {
      const Complex e = std::exp(Complex{0.0, -w * (x.t - x.z)});
      return Components{e, pol_y * e, 0.0};
    }};
  };
  for (const auto& p : off_origin_points()) {
    EXPECT_LE(maxwell_rs_at(wave(I), p, {}).relative(), 1e-9);
    EXPECT_LE(maxwell_spinor_at(wave(I), p, {}).relative(), 1e-9);
    EXPECT_GT(maxwell_rs_at(wave(-I), p, {}).relative(), 0.1);
  }
}

TEST(Dirac, RestFrameMode) {
  // psi = (phi, chi) e^{-imt} with chi = phi solves the Dirac rows at rest.
  const double m = 0.9;
  const ComponentField f = [m](const SpacetimePoint& x) {
    const Complex e = std::exp(Complex{0.0, -m * x.t});
    return Components{e, 2.0 * e, e, 2.0 * e};
  };
  for (const auto& p : off_origin_points()) EXPECT_LE(dirac_at(f, m, p, {}).relative(), 1e-9);
  const ComponentField g = [m](const SpacetimePoint& x) {
    const Complex e = std::exp(Complex{0.0, -m * x.t});
    return Components{e, 0.0, -e, 0.0};
  };
  const auto rows = dirac_rows_at(g, m, {0.5, 0, 0, 0}, {});
  EXPECT_GT(rows[0].relative(), 0.1);
  EXPECT_GT(rows[2].relative(), 0.1);
}

TEST(Conservation, Examples) {
  const ComponentField still = [](const SpacetimePoint&) { return Components{1.0, 0.0, 0.0, 0.0}; };
  EXPECT_EQ(conservation_at(still, {0.3, 1, 2, 3}, {}).absolute, 0.0);
  const ComponentField source = [](const SpacetimePoint& x) { return Components{x.t, x.x, 0.0, 0.0}; };
  EXPECT_NEAR(conservation_at(source, {0.3, 1, 2, 3}, {}).absolute, 2.0, 1e-9);
  const ComponentField flowing = [](const SpacetimePoint& x) {
    return Components{std::sin(x.x - x.t), std::sin(x.x - x.t), 0.0, 0.0};
  };
  EXPECT_LE(conservation_at(flowing, {0.3, 1, 2, 3}, {}).relative(), 1e-9);
}

TEST(Bateman, NullPair) {
  const ComponentField good = [](const SpacetimePoint& x) { return Components{Complex{x.x, x.y}, Complex{x.t - x.z}}; };
  EXPECT_LE(bateman_condition_at(good, {0.1, 0.2, 0.3, 0.4}, {}).relative(), 1e-10);
  const ComponentField bad = [](const SpacetimePoint& x) { return Components{Complex{x.x, x.y}, Complex{x.t + x.z}}; };
  EXPECT_GT(bateman_condition_at(bad, {0.1, 0.2, 0.3, 0.4}, {}).relative(), 0.5);
}

TEST(ResidualCheck, SkipsNonFiniteAndRecordsWorstPoint) {
  const std::vector<SpacetimePoint> pts{{0, 0, 0, 0}, {1, 0, 0, 0}, {2, 0, 0, 0}};
  const auto rec = run_residual_check(
      "demo", "demo", pts,
      [](const SpacetimePoint& x) -> PointResidual {
        if (x.t == 2.0) return {std::numeric_limits<double>::quiet_NaN(), 1.0};
        return {x.t * 0.1, 1.0};
      },
      0.5);
  EXPECT_EQ(rec.points, 2);
  EXPECT_EQ(rec.skipped, 1);
  EXPECT_NEAR(rec.max_relative, 0.1, 1e-15);
  EXPECT_TRUE(rec.pass);
  ASSERT_TRUE(rec.worst_point.has_value());
  EXPECT_EQ(rec.worst_point->t, 1.0);
  EXPECT_FALSE(rec.note.empty());
}

TEST(ResidualCheck, ZeroScaleZeroResidualIsExact) {
  EXPECT_EQ((PointResidual{0.0, 0.0}).relative(), 0.0);
  EXPECT_TRUE(std::isinf((PointResidual{1.0, 0.0}).relative()));
}

TEST(SamplePoints, DeterministicAndBounded) {
  const auto a = sample_points(200, 5, 2.0, 1.0), b = sample_points(200, 5, 2.0, 1.0), c = sample_points(200, 6, 2.0, 1.0);
  ASSERT_EQ(a.size(), 200u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].t, b[i].t);
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_LE(std::abs(a[i].t), 1.0);
    EXPECT_LE(a[i].r2(), 4.0 + 1e-12);
    differs = differs || a[i].x != c[i].x;
  }
  EXPECT_TRUE(differs);
}

TEST(Dispersion, SpreadingGaussian) {
  // rho = exp(-r^2 / (1 + t^2)) / (1 + t^2)^{3/2}: <r^2> = 3/2 (1 + t^2).
  const auto rho = [](const SpacetimePoint& x) {
    const double w = 1.0 + x.t * x.t;
    return std::exp(-x.r2() / w) / (w * std::sqrt(w));
  };
  const DispersionResult d = dispersion_check(rho, {-1.0, 0.0, 1.0, 2.0}, 1e-8);
  EXPECT_TRUE(d.converged);
  EXPECT_NEAR(d.A, 1.5, 1e-6);
  EXPECT_NEAR(d.B, 1.5, 1e-6);
  EXPECT_LE(d.fit_residual, 1e-6);
  EXPECT_LE(d.symmetry_error, 1e-6);
  for (double n : d.total) EXPECT_NEAR(n, std::pow(pi, 1.5), 1e-5);
}
