#pragma once

// Finite-difference residuals of the field equations and the records they
// produce.
//
// Every residual is reported two ways at a point: absolute, |operator|, and
// relative, |operator| / |sum of the magnitudes of the operator's terms|
// (norms taken over components). The relative form does not depend on the
// field's amplitude, so one tolerance serves fields that decay by orders
// of magnitude across the sampled region.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hopfion/core.hpp"
#include "hopfion/parallel.hpp"
#include "hopfion/quadrature.hpp"
#include "hopfion/solutions.hpp"

namespace hopfion {

enum class FdScheme { central2, central4, richardson };

inline std::string to_string(FdScheme s) {
  switch (s) {
    case FdScheme::central2: return "central-2";
    case FdScheme::central4: return "central-4";
    default: return "richardson";
  }
}

inline std::optional<FdScheme> parse_scheme(const std::string& s) {
  if (s == "central-2") return FdScheme::central2;
  if (s == "central-4") return FdScheme::central4;
  if (s == "richardson") return FdScheme::richardson;
  return std::nullopt;
}

/// Formal order of accuracy of each scheme.
inline int scheme_order(FdScheme s) {
  switch (s) {
    case FdScheme::central2: return 2;
    case FdScheme::central4: return 4;
    default: return 6;
  }
}

struct ResidualConfig {
  double h = 1e-3;
  FdScheme scheme = FdScheme::richardson;  // Neville extrapolation of central-2 over h, h/2, h/4
  double tolerance = 1e-6;                 // on the relative residual
  unsigned threads = 1;

  void validate() const {
    if (!(h > 0.0)) throw DomainError("finite-difference step must be > 0");
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be > 0");
  }
};

using Components = std::vector<Complex>;
using ComponentField = std::function<Components(const SpacetimePoint&)>;

namespace detail {

inline Components lincomb(double a, const Components& x, double b, const Components& y) {
  Components r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + b * y[i];
  return r;
}

// Central difference of order 1 or 2 with step h along mu.
inline Components central(const ComponentField& f, const SpacetimePoint& x, int mu, double h, int order,
                          const Components& center) {
  const Components p = f(shifted(x, mu, h)), m = f(shifted(x, mu, -h));
  Components r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    r[i] = order == 1 ? (p[i] - m[i]) / (2.0 * h) : (p[i] - 2.0 * center[i] + m[i]) / (h * h);
  return r;
}

inline Components derivative(const ComponentField& f, const SpacetimePoint& x, int mu, int order,
                             const ResidualConfig& cfg, const Components& center) {
  const double h = cfg.h;
  switch (cfg.scheme) {
    case FdScheme::central2: return central(f, x, mu, h, order, center);
    case FdScheme::central4: {
      const Components d1 = central(f, x, mu, h, order, center), d2 = central(f, x, mu, 2.0 * h, order, center);
      return lincomb(4.0 / 3.0, d1, -1.0 / 3.0, d2);
    }
    case FdScheme::richardson: {
      const Components d0 = central(f, x, mu, h, order, center);
      const Components d1 = central(f, x, mu, 0.5 * h, order, center);
      const Components d2 = central(f, x, mu, 0.25 * h, order, center);
      const Components t0 = lincomb(4.0 / 3.0, d1, -1.0 / 3.0, d0);
      const Components t1 = lincomb(4.0 / 3.0, d2, -1.0 / 3.0, d1);
      return lincomb(16.0 / 15.0, t1, -1.0 / 15.0, t0);
    }
  }
  return {};
}

}  // namespace detail

/// Field value and its first (or pure second) derivatives along t, x, y, z.
struct Jet {
  Components value;
  std::array<Components, 4> d;
};

inline Jet first_derivatives(const ComponentField& f, const SpacetimePoint& x, const ResidualConfig& cfg) {
  Jet j;
  j.value = f(x);
  for (int mu = 0; mu < 4; ++mu) j.d[static_cast<std::size_t>(mu)] = detail::derivative(f, x, mu, 1, cfg, j.value);
  return j;
}

inline Jet second_derivatives(const ComponentField& f, const SpacetimePoint& x, const ResidualConfig& cfg) {
  Jet j;
  j.value = f(x);
  for (int mu = 0; mu < 4; ++mu) j.d[static_cast<std::size_t>(mu)] = detail::derivative(f, x, mu, 2, cfg, j.value);
  return j;
}

/// Residual at one point: Euclidean norms over components of the operator
/// and of the summed term magnitudes.
struct PointResidual {
  double absolute = 0.0;
  double scale = 0.0;

  double relative() const {
    if (scale > 0.0) return absolute / scale;
    return absolute == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
};

namespace detail {

struct ResidualAccumulator {
  double abs2 = 0.0;
  double scale2 = 0.0;

  // One component of the operator: the sum of `terms`.
  template <std::size_t N>
  void add(const std::array<Complex, N>& terms) {
    Complex sum{0.0};
    double mag = 0.0;
    for (const Complex& t : terms) {
      sum += t;
      mag += std::abs(t);
    }
    abs2 += std::norm(sum);
    scale2 += mag * mag;
  }
  PointResidual result() const { return {std::sqrt(abs2), std::sqrt(scale2)}; }
};

// (d_t + s sigma.grad) acting on a two-component column, returned term by term.
inline std::array<std::array<Complex, 4>, 2> weyl_terms(const std::array<Complex, 2>& dt,
                                                        const std::array<std::array<Complex, 2>, 3>& grad,
                                                        double s) {
  std::array<std::array<Complex, 4>, 2> out{};
  for (int row = 0; row < 2; ++row) {
    out[row][0] = dt[row];
    for (int i = 0; i < 3; ++i) {
      const Mat2 sig = pauli(i + 1);
      out[row][i + 1] = s * (sig[row][0] * grad[i][0] + sig[row][1] * grad[i][1]);
    }
  }
  return out;
}

}  // namespace detail

/// (d_t^2 - laplacian + m^2) f for every component; m = 0 gives d'Alembert.
inline PointResidual kleingordon_at(const ComponentField& f, double m, const SpacetimePoint& x,
                                    const ResidualConfig& cfg) {
  const Jet j = second_derivatives(f, x, cfg);
  detail::ResidualAccumulator acc;
  for (std::size_t c = 0; c < j.value.size(); ++c)
    acc.add(std::array<Complex, 5>{j.d[0][c], -j.d[1][c], -j.d[2][c], -j.d[3][c], m * m * j.value[c]});
  return acc.result();
}

inline PointResidual dalembert_at(const ComponentField& f, const SpacetimePoint& x, const ResidualConfig& cfg) {
  return kleingordon_at(f, 0.0, x, cfg);
}

/// g^{mu A'B} d_mu phi_B = (d_t + sigma.grad) phi for a two-component field.
inline PointResidual weyl_at(const ComponentField& phi, const SpacetimePoint& x, const ResidualConfig& cfg) {
  const Jet j = first_derivatives(phi, x, cfg);
  std::array<std::array<Complex, 2>, 3> grad{};
  for (int i = 0; i < 3; ++i) grad[i] = {j.d[i + 1][0], j.d[i + 1][1]};
  detail::ResidualAccumulator acc;
  for (const auto& row : detail::weyl_terms({j.d[0][0], j.d[0][1]}, grad, 1.0)) acc.add(row);
  return acc.result();
}

/// The spinor form of Maxwell's equations, g^{mu A'C} d_mu phi_{CD} = 0,
/// with phi_CD rebuilt from the RS vector.
inline PointResidual maxwell_spinor_at(const ComponentField& rs, const SpacetimePoint& x, const ResidualConfig& cfg) {
  const Jet j = first_derivatives(rs, x, cfg);
  auto sym = [](const Components& f) { return spinor_from_rs({f[0], f[1], f[2]}); };
  auto column = [](const SymmetricSpinor& s, int d) {
    return d == 0 ? std::array<Complex, 2>{s.s00, s.s01} : std::array<Complex, 2>{s.s01, s.s11};
  };
  detail::ResidualAccumulator acc;
  for (int d = 0; d < 2; ++d) {
    std::array<std::array<Complex, 2>, 3> grad{};
    for (int i = 0; i < 3; ++i) grad[i] = column(sym(j.d[i + 1]), d);
    for (const auto& row : detail::weyl_terms(column(sym(j.d[0]), d), grad, 1.0)) acc.add(row);
  }
  return acc.result();
}

/// Sign s in i d_t F = s curl F. Fixed by the first Maxwell hopfion
/// (pinned by a test); the divergence-free condition carries no sign.
inline constexpr double rs_curl_sign = +1.0;

/// div F = 0 and i d_t F - s curl F = 0.
inline PointResidual maxwell_rs_at(const ComponentField& rs, const SpacetimePoint& x, const ResidualConfig& cfg) {
  const Jet j = first_derivatives(rs, x, cfg);
  auto d = [&](int mu, int c) { return j.d[static_cast<std::size_t>(mu)][static_cast<std::size_t>(c)]; };
  detail::ResidualAccumulator acc;
  acc.add(std::array<Complex, 3>{d(1, 0), d(2, 1), d(3, 2)});
  const double s = rs_curl_sign;
  acc.add(std::array<Complex, 3>{I * d(0, 0), -s * d(2, 2), s * d(3, 1)});
  acc.add(std::array<Complex, 3>{I * d(0, 1), -s * d(3, 0), s * d(1, 2)});
  acc.add(std::array<Complex, 3>{I * d(0, 2), -s * d(1, 1), s * d(2, 0)});
  return acc.result();
}

/// Per-row residuals of the coupled Dirac pair
///   rows 0,1: i (d_t + sigma.grad) phi - m chi
///   rows 2,3: i (d_t - sigma.grad) chi - m phi
inline std::array<PointResidual, 4> dirac_rows_at(const ComponentField& psi, double m, const SpacetimePoint& x,
                                                  const ResidualConfig& cfg) {
  const Jet j = first_derivatives(psi, x, cfg);
  std::array<PointResidual, 4> rows;
  for (int half = 0; half < 2; ++half) {
    const int own = 2 * half, other = 2 - own;
    const double s = half == 0 ? 1.0 : -1.0;
    std::array<std::array<Complex, 2>, 3> grad{};
    for (int i = 0; i < 3; ++i) grad[i] = {j.d[i + 1][own], j.d[i + 1][own + 1]};
    const auto terms = detail::weyl_terms({j.d[0][own], j.d[0][own + 1]}, grad, s);
    for (int r = 0; r < 2; ++r) {
      detail::ResidualAccumulator acc;
      std::array<Complex, 5> t{};
      for (int k = 0; k < 4; ++k) t[k] = I * terms[r][k];
      t[4] = -m * j.value[static_cast<std::size_t>(other + r)];
      acc.add(t);
      rows[static_cast<std::size_t>(own + r)] = acc.result();
    }
  }
  return rows;
}

inline PointResidual dirac_at(const ComponentField& psi, double m, const SpacetimePoint& x, const ResidualConfig& cfg) {
  double a2 = 0.0, s2 = 0.0;
  for (const auto& r : dirac_rows_at(psi, m, x, cfg)) {
    a2 += r.absolute * r.absolute;
    s2 += r.scale * r.scale;
  }
  return {std::sqrt(a2), std::sqrt(s2)};
}

/// d_mu j^mu for a field returning (j^0, j^1, j^2, j^3).
inline PointResidual conservation_at(const ComponentField& j, const SpacetimePoint& x, const ResidualConfig& cfg) {
  const Jet d = first_derivatives(j, x, cfg);
  detail::ResidualAccumulator acc;
  acc.add(std::array<Complex, 4>{d.d[0][0], d.d[1][1], d.d[2][2], d.d[3][3]});
  return acc.result();
}

/// grad alpha x grad beta - i (d_t alpha grad beta - d_t beta grad alpha) for
/// a field returning (alpha, beta), relative to |grad alpha x grad beta|.
inline PointResidual bateman_condition_at(const ComponentField& ab, const SpacetimePoint& x,
                                          const ResidualConfig& cfg) {
  const Jet j = first_derivatives(ab, x, cfg);
  std::array<Complex, 3> ga{}, gb{};
  for (int i = 0; i < 3; ++i) {
    ga[i] = j.d[i + 1][0];
    gb[i] = j.d[i + 1][1];
  }
  const Complex ta = j.d[0][0], tb = j.d[0][1];
  double abs2 = 0.0, cross2 = 0.0;
  for (int i = 0; i < 3; ++i) {
    const int p = (i + 1) % 3, q = (i + 2) % 3;
    const Complex c = ga[p] * gb[q] - ga[q] * gb[p];
    const Complex r = c - I * (ta * gb[i] - tb * ga[i]);
    abs2 += std::norm(r);
    cross2 += std::norm(c);
  }
  return {std::sqrt(abs2), std::sqrt(cross2)};
}

/// One line of a verification report.
struct CheckRecord {
  std::string check;
  std::string solution;
  int points = 0;
  int skipped = 0;  // non-finite stencil values
  double max_relative = 0.0;
  double max_absolute = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::optional<SpacetimePoint> worst_point;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckRecord> records;

  void add(CheckRecord r) { records.push_back(std::move(r)); }
  void append(const VerificationReport& other) {
    records.insert(records.end(), other.records.begin(), other.records.end());
  }
  bool all_pass() const {
    for (const auto& r : records)
      if (!r.pass) return false;
    return true;
  }
  int failures() const {
    int n = 0;
    for (const auto& r : records) n += r.pass ? 0 : 1;
    return n;
  }
};

/// Record for a scalar quantity that is compared against a tolerance once.
inline CheckRecord scalar_record(std::string check, std::string solution, double value, double tolerance,
                                 int points = 1, std::string note = {}) {
  CheckRecord r;
  r.check = std::move(check);
  r.solution = std::move(solution);
  r.points = points;
  r.max_relative = value;
  r.max_absolute = value;
  r.tolerance = tolerance;
  r.pass = std::isfinite(value) && value <= tolerance;
  r.note = std::move(note);
  return r;
}

using PointCheck = std::function<PointResidual(const SpacetimePoint&)>;

/// Evaluates `at` on every point (in parallel) and keeps the worst. A point
/// whose residual is not finite is skipped and counted; a check with every
/// point skipped fails.
inline CheckRecord run_residual_check(std::string check, std::string solution, const std::vector<SpacetimePoint>& pts,
                                      const PointCheck& at, double tolerance, unsigned threads = 1) {
  std::vector<PointResidual> res(pts.size());
  parallel_for(pts.size(), threads, [&](std::size_t i) { res[i] = at(pts[i]); });
  CheckRecord r;
  r.check = std::move(check);
  r.solution = std::move(solution);
  r.tolerance = tolerance;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double rel = res[i].relative();
    if (!std::isfinite(rel) || !std::isfinite(res[i].absolute)) {
      ++r.skipped;
      continue;
    }
    ++r.points;
    r.max_absolute = std::max(r.max_absolute, res[i].absolute);
    if (!r.worst_point || rel > r.max_relative) {
      r.max_relative = rel;
      r.worst_point = pts[i];
    }
  }
  r.pass = r.points > 0 && r.max_relative <= tolerance;
  if (r.skipped > 0) r.note = std::to_string(r.skipped) + " point(s) skipped: non-finite residual";
  return r;
}

/// n points with t uniform in [-t_max, t_max] and (x, y, z) uniform in the
/// ball of radius r_max; reproducible from `seed`.
inline std::vector<SpacetimePoint> sample_points(int n, std::uint64_t seed, double r_max = 2.0, double t_max = 2.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<SpacetimePoint> pts;
  pts.reserve(static_cast<std::size_t>(std::max(n, 0)));
  while (static_cast<int>(pts.size()) < n) {
    const double x = u(rng), y = u(rng), z = u(rng), t = u(rng);
    if (x * x + y * y + z * z > 1.0) continue;
    pts.push_back({t_max * t, r_max * x, r_max * y, r_max * z});
  }
  return pts;
}

/// Adds eps (1 + t^2) to every component: a planted violation for
/// demonstrating that the residual checks can fail.
inline ComponentField perturbed(ComponentField f, double eps) {
  return [f = std::move(f), eps](const SpacetimePoint& x) {
    Components c = f(x);
    for (auto& v : c) v += eps * (1.0 + x.t * x.t);
    return c;
  };
}

/// Observed order of a residual that behaves like C h^p.
inline double observed_order(double residual_h, double residual_half_h) {
  return std::log2(residual_h / residual_half_h);
}

struct DispersionResult {
  std::vector<double> times;
  std::vector<double> mean_r2;     // <r^2>_t
  std::vector<double> total;       // int rho d^3x at each t
  double A = 0.0;
  double B = 0.0;
  double fit_residual = 0.0;       // rms misfit / rms data
  double symmetry_error = 0.0;     // max |<r^2>_t - <r^2>_{-t}| / <r^2>_t over sampled pairs
  double quadrature_error = 0.0;   // max relative quadrature error estimate
  bool converged = true;
};

/// <r^2>_t = int r^2 rho / int rho at each t by adaptive 3D quadrature, then
/// a least-squares fit of A + B t^2.
inline DispersionResult dispersion_check(const std::function<double(const SpacetimePoint&)>& density,
                                         const std::vector<double>& times, double tol = 1e-9) {
  DispersionResult r;
  r.times = times;
  for (double t : times) {
    const QuadratureResult n0 = integrate_r3([&](const Vec3& p) { return density({t, p[0], p[1], p[2]}); }, {0, 0, 0}, tol);
    const QuadratureResult n2 = integrate_r3(
        [&](const Vec3& p) { return dot(p, p) * density({t, p[0], p[1], p[2]}); }, {0, 0, 0}, tol);
    r.converged = r.converged && n0.converged && n2.converged;
    r.quadrature_error = std::max({r.quadrature_error, n0.relative_error(), n2.relative_error()});
    r.total.push_back(n0.value.real());
    r.mean_r2.push_back(n2.value.real() / n0.value.real());
  }
  // Linear least squares in s = t^2.
  const double n = static_cast<double>(times.size());
  double ss = 0, sy = 0, sss = 0, ssy = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double s = times[i] * times[i], y = r.mean_r2[i];
    ss += s;
    sy += y;
    sss += s * s;
    ssy += s * y;
  }
  const double det = n * sss - ss * ss;
  if (det != 0.0) {
    r.B = (n * ssy - ss * sy) / det;
    r.A = (sy - r.B * ss) / n;
  } else {
    r.A = sy / n;
  }
  double mis2 = 0, dat2 = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double fit = r.A + r.B * times[i] * times[i];
    mis2 += (fit - r.mean_r2[i]) * (fit - r.mean_r2[i]);
    dat2 += r.mean_r2[i] * r.mean_r2[i];
  }
  r.fit_residual = dat2 > 0 ? std::sqrt(mis2 / dat2) : 0.0;
  for (std::size_t i = 0; i < times.size(); ++i)
    for (std::size_t k = 0; k < times.size(); ++k)
      if (times[i] > 0 && times[k] == -times[i])
        r.symmetry_error = std::max(r.symmetry_error, std::abs(r.mean_r2[i] - r.mean_r2[k]) / r.mean_r2[i]);
  return r;
}

}  // namespace hopfion
