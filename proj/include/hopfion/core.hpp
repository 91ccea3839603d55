#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace hopfion {

using Complex = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr Complex I{0.0, 1.0};

/// Argument outside the domain where a function is defined (a <= 0, Re z <= 0, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Index-structure misuse, e.g. contracting two lower spinor indices.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Real Minkowski point in (+,-,-,-) signature. Massless solutions measure
/// lengths in units of the scale a; Dirac solutions in Compton lengths 1/m.
struct SpacetimePoint {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr double operator[](int mu) const {
    switch (mu) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
  constexpr double& operator[](int mu) {
    switch (mu) {
      case 0: return t;
      case 1: return x;
      case 2: return y;
      default: return z;
    }
  }
  constexpr SpacetimePoint operator-() const { return {-t, -x, -y, -z}; }
  constexpr double r2() const { return x * x + y * y + z * z; }
  friend constexpr bool operator==(const SpacetimePoint&, const SpacetimePoint&) = default;
};

inline SpacetimePoint shifted(SpacetimePoint p, int mu, double delta) {
  p[mu] += delta;
  return p;
}

using Vec3 = std::array<double, 3>;

inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

inline void require_positive_scale(double a, const char* what) {
  if (!(a > 0.0)) throw DomainError(std::string(what) + " must be > 0");
}

}  // namespace hopfion
