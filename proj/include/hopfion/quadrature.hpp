#pragma once

// Quadrature building blocks: Gauss-Hermite rules, panelled Gauss-Kronrod
// on finite intervals, and an adaptive iterated integral over R^3 in
// spherical coordinates.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "hopfion/core.hpp"

namespace hopfion {

struct QuadratureResult {
  Complex value{0.0};
  double error = 0.0;       // estimated absolute error
  bool converged = false;
  long evaluations = 0;

  double relative_error() const { return error / std::max(std::abs(value), 1e-300); }
};

struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // for weight exp(-x^2)
};

namespace detail {

// Orthonormal Hermite functions psi_k(x) = h_k(x) exp(-x^2/2); returns
// (psi_n, psi_{n-1}). The recurrence stays in range where the polynomials
// alone would overflow.
inline std::pair<double, double> hermite_functions(int n, double x) {
  double p1 = 0.7511255444649425 * std::exp(-0.5 * x * x), p2 = 0.0;  // psi_0, psi_{-1}
  for (int j = 0; j < n; ++j) {
    const double p3 = p2;
    p2 = p1;
    p1 = x * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(double(j) / (j + 1)) * p3;
  }
  return {p1, p2};
}

// Positive roots are bracketed by sign changes on a grid finer than the
// smallest root spacing (about pi / sqrt(2n)), then bisected. Weights are
// exp(-x^2) / (n psi_{n-1}(x)^2).
inline GaussHermiteRule compute_gauss_hermite(int n) {
  GaussHermiteRule r;
  std::vector<double> roots;
  if (n % 2 == 1) roots.push_back(0.0);
  const double top = std::sqrt(2.0 * n + 1.0) + 1.0;
  const double step = 0.05 * pi / std::sqrt(2.0 * n + 1.0);
  double lo = 0.5 * step, flo = hermite_functions(n, lo).first;
  for (double hi = lo + step; lo < top; lo = hi, hi += step) {
    const double fhi = hermite_functions(n, hi).first;
    if ((flo < 0.0) != (fhi < 0.0)) {
      double a = lo, b = hi, fa = flo;
      for (int it = 0; it < 200 && b - a > 2.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
        const double mid = 0.5 * (a + b), fm = hermite_functions(n, mid).first;
        if ((fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = fm;
        } else {
          b = mid;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    flo = fhi;
  }
  if (static_cast<int>(roots.size()) != (n + 1) / 2)
    throw std::runtime_error("gauss_hermite: found " + std::to_string(roots.size()) + " roots for n = " +
                             std::to_string(n));
  for (auto it = roots.rbegin(); it != roots.rend(); ++it) {
    if (*it == 0.0) continue;
    r.nodes.push_back(-*it);
  }
  for (double x : roots) r.nodes.push_back(x);
  std::sort(r.nodes.begin(), r.nodes.end());
  for (double x : r.nodes) {
    const double q = hermite_functions(n, x).second;
    r.weights.push_back(std::exp(-x * x) / (n * q * q));
  }
  return r;
}

}  // namespace detail

/// n-point Gauss-Hermite rule for int exp(-x^2) f(x) dx; cached per n.
inline const GaussHermiteRule& gauss_hermite(int n) {
  if (n < 1) throw DomainError("gauss_hermite: n must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussHermiteRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, detail::compute_gauss_hermite(n)).first;
  return it->second;
}

/// Integral of a complex function over [lo, hi] split into equal panels,
/// each handled by adaptive 31-point Gauss-Kronrod.
template <class F>
QuadratureResult integrate_panels(F&& f, double lo, double hi, double panel_width, double tol = 1e-13) {
  QuadratureResult r;
  const int panels = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel_width)));
  const double w = (hi - lo) / panels;
  r.converged = true;
  for (int i = 0; i < panels; ++i) {
    double err = 0.0;
    const double a = lo + i * w;
    auto counted = [&](double x) {
      ++r.evaluations;
      return Complex(f(x));
    };
    r.value += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(counted, a, a + w, 3, tol, &err);
    r.error += err;
  }
  return r;
}

/// Real integral over [lo, hi] by adaptive Gauss-Kronrod.
inline double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi, double tol,
                                 double* error = nullptr) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, tol, &err);
  if (error) *error = err;
  return v;
}

/// int_{R^3} f(x, y, z) d^3x about `center`, as an iterated integral in
/// spherical coordinates: exp-sinh in r, adaptive Gauss-Kronrod in cos(theta)
/// and in phi. f must decay faster than r^-3.
inline QuadratureResult integrate_r3(const std::function<double(const Vec3&)>& f, const Vec3& center = {0, 0, 0},
                                     double tol = 1e-10) {
  QuadratureResult r;
  double err_sum = 0.0;
  auto angular = [&](double radius) {
    auto over_mu = [&](double mu) {
      const double st = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      auto over_phi = [&](double phi) {
        ++r.evaluations;
        const Vec3 p{center[0] + radius * st * std::cos(phi), center[1] + radius * st * std::sin(phi),
                     center[2] + radius * mu};
        return f(p);
      };
      return integrate_adaptive(over_phi, 0.0, 2.0 * pi, tol);
    };
    return radius * radius * integrate_adaptive(over_mu, -1.0, 1.0, tol);
  };
  boost::math::quadrature::exp_sinh<double> radial;
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double v = radial.integrate(angular, 0.0, std::numeric_limits<double>::infinity(), tol, &err, &l1, &levels);
  err_sum += err;
  r.value = v;
  r.error = err_sum;
  r.converged = std::isfinite(v) && err <= std::max(1e-6, 100 * tol) * std::max(std::abs(v), 1e-300);
  return r;
}

}  // namespace hopfion
