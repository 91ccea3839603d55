#pragma once

// Named solution families and a uniform evaluator over them, used by the
// verification suites, the tracer and the command line.

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hopfion/solutions.hpp"

namespace hopfion {

enum class Family {
  weyl_hopfion_1,
  weyl_hopfion_2,
  maxwell_hopfion_1,
  maxwell_hopfion_2,
  knot_pq,
  dirac_base,
  psi2,
  psi4,
  psi6,
  psi8,
  psi6_repaired,
  psi8_repaired,
};

enum class FieldKind { spinor, rs_vector, bispinor };

inline constexpr std::array<std::pair<Family, const char*>, 12> family_names{{
    {Family::weyl_hopfion_1, "weyl-hopfion-1"},
    {Family::weyl_hopfion_2, "weyl-hopfion-2"},
    {Family::maxwell_hopfion_1, "maxwell-hopfion-1"},
    {Family::maxwell_hopfion_2, "maxwell-hopfion-2"},
    {Family::knot_pq, "knot-pq"},
    {Family::dirac_base, "dirac-base"},
    {Family::psi2, "psi2"},
    {Family::psi4, "psi4"},
    {Family::psi6, "psi6"},
    {Family::psi8, "psi8"},
    {Family::psi6_repaired, "psi6-repaired"},
    {Family::psi8_repaired, "psi8-repaired"},
}};

inline std::string to_string(Family f) {
  for (const auto& [fam, name] : family_names)
    if (fam == f) return name;
  return "?";
}

inline std::optional<Family> parse_family(const std::string& s) {
  for (const auto& [fam, name] : family_names)
    if (s == name) return fam;
  return std::nullopt;
}

inline std::vector<std::string> family_name_list() {
  std::vector<std::string> out;
  for (const auto& [fam, name] : family_names) out.emplace_back(name);
  return out;
}

inline FieldKind field_kind(Family f) {
  switch (f) {
    case Family::weyl_hopfion_1:
    case Family::weyl_hopfion_2: return FieldKind::spinor;
    case Family::maxwell_hopfion_1:
    case Family::maxwell_hopfion_2:
    case Family::knot_pq: return FieldKind::rs_vector;
    default: return FieldKind::bispinor;
  }
}

inline bool is_massive(Family f) { return field_kind(f) == FieldKind::bispinor; }

struct SolutionId {
  Family family = Family::maxwell_hopfion_1;
  double a = 1.0;
  double m = 1.0;
  int p = 1;
  int q = 1;
  int energy_sign = +1;
  // dirac-base only: which of the four base bispinors.
  int base_index = 0;
  bool base_dotted = false;

  /// Throws DomainError when the parameters break the family's invariants.
  void validate() const {
    require_positive_scale(a, "scale a");
    if (is_massive(family)) require_positive_scale(m, "mass m");
    if (family == Family::knot_pq) require_knot_exponents(p, q);
    if (energy_sign != 1 && energy_sign != -1) throw DomainError("energy_sign must be +1 or -1");
    if (base_index != 0 && base_index != 1) throw DomainError("base index must be 0 or 1");
  }

  std::string label() const {
    std::string s = to_string(family);
    if (family == Family::knot_pq) s += "(" + std::to_string(p) + "," + std::to_string(q) + ")";
    if (family == Family::dirac_base) s += "[" + std::to_string(base_index) + (base_dotted ? "'" : "") + "]";
    if (energy_sign < 0) s += "-";
    return s;
  }
};

using FieldValue = std::variant<Spinor, RSVector, Bispinor>;

/// Number of complex components in a field of this family (2, 3 or 4).
inline int component_count(Family f) {
  switch (field_kind(f)) {
    case FieldKind::spinor: return 2;
    case FieldKind::rs_vector: return 3;
    default: return 4;
  }
}

inline Complex component(const FieldValue& v, int i) {
  return std::visit([i](const auto& f) -> Complex { return f[i]; }, v);
}

namespace detail {

inline FieldValue evaluate_positive(const SolutionId& id, const SpacetimePoint& x) {
  switch (id.family) {
    case Family::weyl_hopfion_1: return weyl_hopfion(1, x, id.a);
    case Family::weyl_hopfion_2: return weyl_hopfion(2, x, id.a);
    case Family::maxwell_hopfion_1: return maxwell_hopfion(1, x, id.a);
    case Family::maxwell_hopfion_2: return maxwell_hopfion(2, x, id.a);
    case Family::knot_pq: return knot_field(id.p, id.q, x, id.a);
    case Family::dirac_base: return dirac_base(id.base_index, id.base_dotted, x, id.a, id.m);
    case Family::psi2: return psi_k(2, x, id.a, id.m);
    case Family::psi4: return psi_k(4, x, id.a, id.m);
    case Family::psi6: return psi_k(6, x, id.a, id.m);
    case Family::psi8: return psi_k(8, x, id.a, id.m);
    case Family::psi6_repaired: return repaired::psi6(x, id.a, id.m);
    case Family::psi8_repaired: return repaired::psi8(x, id.a, id.m);
  }
  throw DomainError("unknown family");
}

}  // namespace detail

/// Field of `id` at x. The negative-energy variant is the positive one at -x;
/// for bispinors the lower spinor also flips sign, since Psi(-x) alone solves
/// the Dirac equation with m -> -m.
inline FieldValue evaluate(const SolutionId& id, const SpacetimePoint& x) {
  if (id.energy_sign > 0) return detail::evaluate_positive(id, x);
  FieldValue v = detail::evaluate_positive(id, -x);
  if (auto* b = std::get_if<Bispinor>(&v)) {
    b->chi0 = -b->chi0;
    b->chi1 = -b->chi1;
  }
  return v;
}

/// The flow whose integral lines are traced: v = l / l^0 for spinors
/// (l the Weyl current), the Poynting direction for RS vectors, and the
/// spatial Dirac current for bispinors.
inline Vec3 flow_vector(const SolutionId& id, const SpacetimePoint& x) {
  const FieldValue v = evaluate(id, x);
  if (const auto* s = std::get_if<Spinor>(&v)) {
    const FourVector l = weyl_current(*s);
    if (l[0] == 0.0) return {0.0, 0.0, 0.0};
    return {l[1] / l[0], l[2] / l[0], l[3] / l[0]};
  }
  if (const auto* f = std::get_if<RSVector>(&v)) {
    const MaxwellStress st = maxwell_stress(*f);
    if (st.energy_density == 0.0) return {0.0, 0.0, 0.0};
    return (1.0 / st.energy_density) * st.poynting;
  }
  const FourVector j = dirac_current(std::get<Bispinor>(v));
  return {j[1], j[2], j[3]};
}

}  // namespace hopfion
