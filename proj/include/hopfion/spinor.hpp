#pragma once

// Two-component spinor algebra: spinorial metric, the spin-tensors
// g^{mu A'B} and g^mu_{AB'}, and the map from a spinor to a null vector.
//
// Index conventions: components are labelled 0 and 1, epsilon^{AB} =
// epsilon_{AB} = [[0,1],[-1,0]], phi^A = eps^{AB} phi_B and
// phi_A = phi^B eps_{BA}. Dotted indices mark complex conjugation.
// Four-vectors use signature (+,-,-,-).

#include <array>
#include <complex>
#include <string>

#include "hopfion/core.hpp"

namespace hopfion {

enum class Variance { upper, lower };

inline Variance flipped(Variance v) { return v == Variance::upper ? Variance::lower : Variance::upper; }

class Spinor {
 public:
  constexpr Spinor() = default;
  constexpr Spinor(Complex c0, Complex c1, Variance variance = Variance::lower, bool dotted = false)
      : c_{c0, c1}, variance_(variance), dotted_(dotted) {}

  constexpr Complex c0() const { return c_[0]; }
  constexpr Complex c1() const { return c_[1]; }
  constexpr Complex operator[](int a) const { return c_[static_cast<std::size_t>(a)]; }
  constexpr Variance variance() const { return variance_; }
  constexpr bool dotted() const { return dotted_; }
  constexpr const std::array<Complex, 2>& components() const { return c_; }

  /// Complex conjugate: same variance, dotted flag flipped.
  Spinor conjugate() const { return {std::conj(c_[0]), std::conj(c_[1]), variance_, !dotted_}; }

  Spinor scaled(Complex s) const { return {s * c_[0], s * c_[1], variance_, dotted_}; }

  friend bool operator==(const Spinor&, const Spinor&) = default;

 private:
  std::array<Complex, 2> c_{};
  Variance variance_ = Variance::lower;
  bool dotted_ = false;
};

/// Raises a lower spinor or lowers an upper one with the spinorial metric.
inline Spinor raise_lower(const Spinor& s) {
  if (s.variance() == Variance::lower) {
    // phi^0 = eps^{01} phi_1, phi^1 = eps^{10} phi_0
    return {s[1], -s[0], Variance::upper, s.dotted()};
  }
  // phi_0 = phi^1 eps_{10}, phi_1 = phi^0 eps_{01}
  return {-s[1], s[0], Variance::lower, s.dotted()};
}

/// a_A b^A. Requires one lower and one upper spinor of the same dottedness.
inline Complex scalar_product(const Spinor& lower, const Spinor& upper) {
  if (lower.variance() != Variance::lower || upper.variance() != Variance::upper)
    throw ContractError("scalar_product expects (lower, upper) spinors");
  if (lower.dotted() != upper.dotted())
    throw ContractError("scalar_product cannot contract dotted with undotted indices");
  return lower[0] * upper[0] + lower[1] * upper[1];
}

using Mat2 = std::array<std::array<Complex, 2>, 2>;

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
  return {{{a[0][0] + b[0][0], a[0][1] + b[0][1]}, {a[1][0] + b[1][0], a[1][1] + b[1][1]}}};
}
inline Mat2 operator*(Complex s, const Mat2& a) {
  return {{{s * a[0][0], s * a[0][1]}, {s * a[1][0], s * a[1][1]}}};
}
inline std::array<Complex, 2> operator*(const Mat2& m, const std::array<Complex, 2>& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}
inline Mat2 adjoint(const Mat2& m) {
  return {{{std::conj(m[0][0]), std::conj(m[1][0])}, {std::conj(m[0][1]), std::conj(m[1][1])}}};
}

inline Mat2 identity2() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

/// Pauli matrix sigma_i, i in {1,2,3}.
inline Mat2 pauli(int i) {
  switch (i) {
    case 1: return {{{0.0, 1.0}, {1.0, 0.0}}};
    case 2: return {{{0.0, -I}, {I, 0.0}}};
    default: return {{{1.0, 0.0}, {0.0, -1.0}}};
  }
}

/// Metric diag(+1,-1,-1,-1).
inline constexpr double metric(int mu) { return mu == 0 ? 1.0 : -1.0; }

/// The spin-tensors at one value of mu (row index first):
///   dotted_undotted  = g^{mu A'B}  = (I, sigma_i)
///   undotted_dotted  = g^mu_{AB'}  = (I, -sigma_i)
struct SpinTensor {
  int mu = 0;
  Mat2 dotted_undotted{};
  Mat2 undotted_dotted{};

  static SpinTensor of(int mu) {
    if (mu == 0) return {0, identity2(), identity2()};
    return {mu, pauli(mu), Complex(-1.0) * pauli(mu)};
  }
};

/// Which of the four index placements a contraction sum_mu g(mu) v_mu uses.
enum class SpinTensorKind {
  upper_dotted_undotted,   // g^{mu A'B}
  upper_undotted_dotted,   // g^mu_{AB'}
  lower_undotted_dotted,   // g_{mu AB'}
  lower_dotted_undotted,   // g_mu^{A'B}
};

inline Mat2 spin_tensor(SpinTensorKind kind, int mu) {
  const SpinTensor g = SpinTensor::of(mu);
  switch (kind) {
    case SpinTensorKind::upper_dotted_undotted: return g.dotted_undotted;
    case SpinTensorKind::upper_undotted_dotted: return g.undotted_dotted;
    case SpinTensorKind::lower_undotted_dotted: return Complex(metric(mu)) * g.undotted_dotted;
    case SpinTensorKind::lower_dotted_undotted: return Complex(metric(mu)) * g.dotted_undotted;
  }
  return {};
}

/// sum_mu g(mu) v[mu]; v carries the index opposite to the tensor's mu.
inline Mat2 contract(SpinTensorKind kind, const std::array<Complex, 4>& v) {
  Mat2 out{};
  for (int mu = 0; mu < 4; ++mu) out = out + v[static_cast<std::size_t>(mu)] * spin_tensor(kind, mu);
  return out;
}

template <class T>
struct BasicFourVector {
  std::array<T, 4> v{};

  constexpr T operator[](int mu) const { return v[static_cast<std::size_t>(mu)]; }
  constexpr T& operator[](int mu) { return v[static_cast<std::size_t>(mu)]; }
  friend bool operator==(const BasicFourVector&, const BasicFourVector&) = default;
};

using FourVector = BasicFourVector<double>;
using ComplexFourVector = BasicFourVector<Complex>;

template <class T>
T minkowski_square(const BasicFourVector<T>& k) {
  return k[0] * k[0] - k[1] * k[1] - k[2] * k[2] - k[3] * k[3];
}

/// Hermitian form kappa-bar_{A'} g^{mu A'B} kappa_B for every mu.
inline ComplexFourVector hermitian_vector(const Spinor& kappa) {
  ComplexFourVector k;
  const std::array<Complex, 2> bar{std::conj(kappa[0]), std::conj(kappa[1])};
  for (int mu = 0; mu < 4; ++mu) {
    const Mat2 g = spin_tensor(SpinTensorKind::upper_dotted_undotted, mu);
    const auto gk = g * kappa.components();
    k[mu] = bar[0] * gk[0] + bar[1] * gk[1];
  }
  return k;
}

/// Null vector k^mu = kappa_{A'} g^{mu A'B} kappa_B attached to a spinor.
/// k^0 = |kappa|^2 and k^i = kappa^dag sigma_i kappa.
inline FourVector lightlike_vector(const Spinor& kappa) {
  const ComplexFourVector k = hermitian_vector(kappa);
  return {{k[0].real(), k[1].real(), k[2].real(), k[3].real()}};
}

inline std::string to_string(Variance v) { return v == Variance::upper ? "upper" : "lower"; }

}  // namespace hopfion
