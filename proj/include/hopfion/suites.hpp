#pragma once

// Named groups of checks over the solution catalog. The command line and the
// acceptance binary both run these; each returns report records with the
// tolerance that was applied.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "hopfion/catalog.hpp"
#include "hopfion/fieldlines.hpp"
#include "hopfion/hopf_map.hpp"
#include "hopfion/oracle.hpp"
#include "hopfion/verify.hpp"

namespace hopfion {

struct SuiteOptions {
  int points = 100;
  int invariant_points = 1000;
  std::uint64_t seed = 20240521;
  ResidualConfig residual{};
  double perturb = 0.0;  // planted violation eps (1 + t^2); 0 disables
  double a = 1.0;
  double m = 1.0;
};

/// The field of `id` as a flat component list.
inline ComponentField field_components(const SolutionId& id) {
  return [id](const SpacetimePoint& x) {
    const FieldValue v = evaluate(id, x);
    Components c(static_cast<std::size_t>(component_count(id.family)));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = component(v, static_cast<int>(i));
    return c;
  };
}

inline SolutionId make_id(Family f, double a = 1.0, double m = 1.0) {
  SolutionId id;
  id.family = f;
  id.a = a;
  id.m = m;
  return id;
}

inline SolutionId make_knot(int p, int q, double a = 1.0) {
  SolutionId id = make_id(Family::knot_pq, a);
  id.p = p;
  id.q = q;
  return id;
}

inline SolutionId make_base(int index, bool dotted, double a = 1.0, double m = 1.0) {
  SolutionId id = make_id(Family::dirac_base, a, m);
  id.base_index = index;
  id.base_dotted = dotted;
  return id;
}

/// Every closed form whose field equation is checked by the residual suite.
inline std::vector<SolutionId> residual_catalog(double a, double m) {
  std::vector<SolutionId> ids{make_id(Family::weyl_hopfion_1, a), make_id(Family::weyl_hopfion_2, a),
                              make_id(Family::maxwell_hopfion_1, a), make_id(Family::maxwell_hopfion_2, a),
                              make_knot(1, 1, a), make_knot(2, 3, a), make_knot(3, 2, a)};
  for (int b = 0; b < 2; ++b)
    for (bool d : {false, true}) ids.push_back(make_base(b, d, a, m));
  for (Family f : {Family::psi2, Family::psi4, Family::psi6, Family::psi8, Family::psi6_repaired,
                   Family::psi8_repaired})
    ids.push_back(make_id(f, a, m));
  return ids;
}

/// Dirac families that solve their equation: the base set, psi2, psi4 and
/// the corrected psi6/psi8.
inline std::vector<SolutionId> valid_dirac_catalog(double a, double m) {
  std::vector<SolutionId> ids;
  for (int b = 0; b < 2; ++b)
    for (bool d : {false, true}) ids.push_back(make_base(b, d, a, m));
  for (Family f : {Family::psi2, Family::psi4, Family::psi6_repaired, Family::psi8_repaired})
    ids.push_back(make_id(f, a, m));
  return ids;
}

inline std::vector<SolutionId> dirac_catalog(double a, double m) {
  std::vector<SolutionId> ids;
  for (const auto& id : residual_catalog(a, m))
    if (is_massive(id.family)) ids.push_back(id);
  return ids;
}

/// Residual of the equation that governs `field` (Weyl, spinor-form Maxwell or Dirac).
inline CheckRecord governing_residual(const SolutionId& id, const ComponentField& field,
                                      const std::vector<SpacetimePoint>& pts, const ResidualConfig& cfg) {
  switch (field_kind(id.family)) {
    case FieldKind::spinor:
      return run_residual_check("weyl", id.label(), pts, [&](const SpacetimePoint& x) { return weyl_at(field, x, cfg); },
                                cfg.tolerance, cfg.threads);
    case FieldKind::rs_vector:
      return run_residual_check("maxwell-spinor", id.label(), pts,
                                [&](const SpacetimePoint& x) { return maxwell_spinor_at(field, x, cfg); },
                                cfg.tolerance, cfg.threads);
    default:
      return run_residual_check("dirac", id.label(), pts,
                                [&](const SpacetimePoint& x) { return dirac_at(field, id.m, x, cfg); },
                                cfg.tolerance, cfg.threads);
  }
}

inline ComponentField maybe_perturbed(const SolutionId& id, double eps) {
  ComponentField f = field_components(id);
  return eps != 0.0 ? perturbed(std::move(f), eps) : f;
}

/// Field-equation residuals for the whole catalog; Maxwell fields are
/// checked in both spinor and RS-vector form.
inline VerificationReport suite_residuals(const SuiteOptions& opt) {
  VerificationReport rep;
  const auto pts = sample_points(opt.points, opt.seed);
  for (const auto& id : residual_catalog(opt.a, opt.m)) {
    const ComponentField f = maybe_perturbed(id, opt.perturb);
    CheckRecord r = governing_residual(id, f, pts, opt.residual);
    if (!r.pass && (id.family == Family::psi6 || id.family == Family::psi8) && opt.perturb == 0.0)
      r.note = "tabulated form is not a Dirac solution; compare " + id.label() + "-repaired";
    rep.add(std::move(r));
    if (field_kind(id.family) == FieldKind::rs_vector)
      rep.add(run_residual_check("maxwell-rs", id.label(), pts,
                                 [&](const SpacetimePoint& x) { return maxwell_rs_at(f, x, opt.residual); },
                                 opt.residual.tolerance, opt.residual.threads));
  }
  return rep;
}

/// Per-row Dirac residuals and per-component Klein-Gordon residuals for one
/// bispinor family; locates which entries of a failing solution are wrong.
struct DiracDiagnostics {
  std::string solution;
  std::array<double, 4> row_residual{};           // max relative, rows of the coupled pair
  std::array<double, 4> kleingordon_residual{};   // max relative, per component
};

inline DiracDiagnostics dirac_diagnostics(const SolutionId& id, const ComponentField& field,
                                          const std::vector<SpacetimePoint>& pts, const ResidualConfig& cfg) {
  DiracDiagnostics d;
  d.solution = id.label();
  for (const auto& x : pts) {
    const auto rows = dirac_rows_at(field, id.m, x, cfg);
    for (int r = 0; r < 4; ++r) {
      const double v = rows[static_cast<std::size_t>(r)].relative();
      if (std::isfinite(v)) d.row_residual[static_cast<std::size_t>(r)] = std::max(d.row_residual[r], v);
    }
    for (int c = 0; c < 4; ++c) {
      const ComponentField one = [&field, c](const SpacetimePoint& p) { return Components{field(p)[c]}; };
      const double v = kleingordon_at(one, id.m, x, cfg).relative();
      if (std::isfinite(v))
        d.kleingordon_residual[static_cast<std::size_t>(c)] = std::max(d.kleingordon_residual[c], v);
    }
  }
  return d;
}

inline VerificationReport suite_kleingordon(const SuiteOptions& opt) {
  VerificationReport rep;
  const auto pts = sample_points(opt.points, opt.seed + 1);
  const ResidualConfig& cfg = opt.residual;
  for (const auto& id : dirac_catalog(opt.a, opt.m)) {
    const ComponentField f = maybe_perturbed(id, opt.perturb);
    rep.add(run_residual_check("kleingordon", id.label(), pts,
                               [&](const SpacetimePoint& x) { return kleingordon_at(f, id.m, x, cfg); },
                               cfg.tolerance, cfg.threads));
  }
  const double a = opt.a, m = opt.m;
  const ComponentField k1 = [a, m](const SpacetimePoint& x) {
    return Components{frak_K(1, m, complex_distance(x, a))};
  };
  rep.add(run_residual_check("kleingordon", "frak_K_1(s)", pts,
                             [&](const SpacetimePoint& x) { return kleingordon_at(k1, m, x, cfg); }, cfg.tolerance,
                             cfg.threads));
  const ComponentField rest = [m](const SpacetimePoint& x) { return Components{std::polar(1.0, -m * x.t)}; };
  rep.add(run_residual_check("kleingordon", "exp(-imt)", pts,
                             [&](const SpacetimePoint& x) { return kleingordon_at(rest, m, x, cfg); }, cfg.tolerance,
                             cfg.threads));
  return rep;
}

inline VerificationReport suite_dalembert(const SuiteOptions& opt) {
  VerificationReport rep;
  const auto pts = sample_points(opt.points, opt.seed + 2);
  const ResidualConfig& cfg = opt.residual;
  const double a = opt.a;
  std::mt19937_64 rng(opt.seed + 3);
  std::normal_distribution<double> n;
  struct Case {
    std::string name;
    Spinor eta, eta_bar;
  };
  std::vector<Case> cases{{"upsilon(eta=0)", {0.0, 0.0, Variance::upper, false}, {0.0, 0.0, Variance::upper, true}}};
  for (int k = 0; k < 3; ++k)
    cases.push_back({"upsilon(random eta " + std::to_string(k) + ")",
                     {Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, false},
                     {Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, true}});
  for (const auto& c : cases) {
    ComponentField f = [c, a](const SpacetimePoint& x) { return Components{upsilon_massless(c.eta, c.eta_bar, x, a)}; };
    if (opt.perturb != 0.0) f = perturbed(f, opt.perturb);
    rep.add(run_residual_check("dalembert", c.name, pts,
                               [&](const SpacetimePoint& x) { return dalembert_at(f, x, cfg); }, cfg.tolerance,
                               cfg.threads));
  }
  const ComponentField wave = [](const SpacetimePoint& x) { return Components{std::polar(1.0, 1.3 * (x.z - x.t))}; };
  rep.add(run_residual_check("dalembert", "plane wave", pts,
                             [&](const SpacetimePoint& x) { return dalembert_at(wave, x, cfg); }, cfg.tolerance,
                             cfg.threads));
  return rep;
}

namespace detail {

inline Spinor random_eta_bar(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, true};
}

// A few holomorphic h(psi_0, psi_1) used by the generic family checks.
inline std::vector<std::pair<std::string, std::function<Complex(Complex, Complex)>>> sample_h_functions() {
  return {
      {"h=-1", [](Complex, Complex) { return Complex{-1.0}; }},
      {"h=psi0", [](Complex u, Complex) { return u; }},
      {"h=1+psi0*psi1^2", [](Complex u, Complex v) { return 1.0 + u * v * v; }},
      {"h=exp(psi1)", [](Complex, Complex v) { return std::exp(v); }},
  };
}

}  // namespace detail

/// |F.F| / |F|^2 for every Maxwell-type field.
inline VerificationReport suite_nullness(const SuiteOptions& opt, double tolerance = 1e-12) {
  VerificationReport rep;
  const auto pts = sample_points(opt.invariant_points, opt.seed + 4);
  std::vector<std::pair<std::string, std::function<RSVector(const SpacetimePoint&)>>> fields;
  for (const auto& id : residual_catalog(opt.a, opt.m))
    if (field_kind(id.family) == FieldKind::rs_vector)
      fields.push_back({id.label(), [id](const SpacetimePoint& x) { return std::get<RSVector>(evaluate(id, x)); }});
  std::mt19937_64 rng(opt.seed + 5);
  const double a = opt.a;
  for (const auto& [name, h] : detail::sample_h_functions()) {
    const Spinor eb = detail::random_eta_bar(rng);
    fields.push_back({"maxwell-field(" + name + ")", [h, eb, a](const SpacetimePoint& x) {
                        return maxwell_field(h, eb, x, a);
                      }});
  }
  fields.push_back({"bateman", [a](const SpacetimePoint& x) { return bateman_field(x, a); }});
  for (const auto& [name, f] : fields) {
    double worst = 0.0;
    for (const auto& x : pts) {
      const RSVector F = f(x);
      worst = std::max(worst, std::abs(F.self_dot()) / F.norm2());
    }
    rep.add(scalar_record("nullness", name, worst, tolerance, static_cast<int>(pts.size())));
  }
  return rep;
}

/// Analytic F_B = -i F_H, and the Bateman condition with finite-difference gradients.
inline VerificationReport suite_bateman(const SuiteOptions& opt) {
  VerificationReport rep;
  const auto pts = sample_points(opt.invariant_points, opt.seed + 6);
  const double a = opt.a;
  double worst = 0.0;
  for (const auto& x : pts) {
    const RSVector fb = bateman_field(x, a), fh = maxwell_hopfion(1, x, a);
    const RSVector d{fb.x + I * fh.x, fb.y + I * fh.y, fb.z + I * fh.z};
    worst = std::max(worst, std::sqrt(d.norm2() / fh.norm2()));
  }
  rep.add(scalar_record("bateman-vs-hopfion", "|F_B + i F_H| / |F_H|", worst, 1e-10, static_cast<int>(pts.size())));

  const auto fd_pts = sample_points(opt.points, opt.seed + 7);
  const Spinor eb = default_eta_bar();
  ComponentField ab = [a, eb](const SpacetimePoint& x) {
    const Spinor psi = psi_spinor(x, eb, a);
    return Components{psi[1], psi[0]};  // (alpha, beta)
  };
  if (opt.perturb != 0.0) ab = perturbed(ab, opt.perturb);
  rep.add(run_residual_check("bateman-condition", "alpha=psi_1, beta=psi_0", fd_pts,
                             [&](const SpacetimePoint& x) { return bateman_condition_at(ab, x, opt.residual); },
                             opt.residual.tolerance, opt.residual.threads));
  return rep;
}

/// Identities between independent code paths: fusion of two Weyl fields
/// into a Maxwell field, |S| = u, null currents, and the closed forms
/// against the general h-family constructors.
inline VerificationReport suite_structure(const SuiteOptions& opt, double tolerance = 1e-12) {
  VerificationReport rep;
  const auto pts = sample_points(opt.invariant_points, opt.seed + 8);
  const double a = opt.a;
  std::mt19937_64 rng(opt.seed + 9);
  double fusion = 0, stress = 0, null_current = 0, current_paths = 0, weyl_closed = 0, maxwell_closed = 0;
  const auto hs = detail::sample_h_functions();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& x = pts[i];
    const auto& h1 = hs[i % hs.size()].second;
    const Spinor eb = detail::random_eta_bar(rng);
    auto h2 = [&h1](Complex u, Complex v) { return h1(u, v) * h1(u, v); };
    const Spinor phi = weyl_field(h1, eb, x, a);
    const SymmetricSpinor s = spinor_from_rs(maxwell_field(h2, eb, x, a));
    const Complex d = d_factor(x, a);
    const double scale = std::norm(phi[0]) + std::norm(phi[1]);
    const double f = std::sqrt(std::norm(s.s00 * d - phi[0] * phi[0]) + std::norm(s.s01 * d - phi[0] * phi[1]) +
                               std::norm(s.s11 * d - phi[1] * phi[1])) /
                     scale;
    fusion = std::max(fusion, f);

    const MaxwellStress st = maxwell_stress(maxwell_field(h2, eb, x, a));
    stress = std::max(stress, std::abs(norm(st.poynting) - st.energy_density) / st.energy_density);

    const FourVector j = weyl_current(phi);
    null_current = std::max(null_current, std::abs(minkowski_square(j)) / (j[0] * j[0]));

    const Spinor psi = psi_spinor(x, eb, a);
    const FourVector l = lightlike_vector(psi);
    const double amp = std::norm(d * h1(psi[0], psi[1]));
    double diff = 0;
    for (int mu = 0; mu < 4; ++mu) diff = std::max(diff, std::abs(j[mu] - amp * l[mu]));
    current_paths = std::max(current_paths, diff / j[0]);

    for (int which = 1; which <= 2; ++which) {
      const Spinor e = which == 1 ? default_eta_bar() : Spinor{0.0, 1.0, Variance::upper, true};
      const Spinor w1 = weyl_field([](Complex, Complex) { return Complex{1.0}; }, e, x, a);
      const Spinor w2 = weyl_hopfion(which, x, a);
      weyl_closed = std::max(weyl_closed, std::sqrt((std::norm(w1[0] - w2[0]) + std::norm(w1[1] - w2[1])) /
                                                    (std::norm(w2[0]) + std::norm(w2[1]))));
      const RSVector m1 = maxwell_field([](Complex, Complex) { return Complex{-1.0}; }, e, x, a);
      const RSVector m2 = maxwell_hopfion(which, x, a);
      const RSVector dm{m1.x - m2.x, m1.y - m2.y, m1.z - m2.z};
      maxwell_closed = std::max(maxwell_closed, std::sqrt(dm.norm2() / m2.norm2()));
    }
  }
  const int n = static_cast<int>(pts.size());
  rep.add(scalar_record("fusion", "phi_CD D = phi_C phi_D", fusion, tolerance, n));
  rep.add(scalar_record("null-stress", "|S| = u", stress, tolerance, n));
  rep.add(scalar_record("null-current", "weyl current minkowski square", null_current, tolerance, n));
  rep.add(scalar_record("current-paths", "j = |D h|^2 l(psi)", current_paths, tolerance, n));
  rep.add(scalar_record("closed-form", "weyl_field(h=1) vs weyl hopfions", weyl_closed, tolerance, n));
  rep.add(scalar_record("closed-form", "maxwell_field(h=-1) vs maxwell hopfions", maxwell_closed, tolerance, n));
  return rep;
}

/// d_mu j^mu = 0 for Weyl currents and for Dirac currents. `dirac` picks
/// the bispinor families (defaults to the whole Dirac catalog).
inline VerificationReport suite_conservation(const SuiteOptions& opt, std::vector<SolutionId> dirac = {}) {
  VerificationReport rep;
  const auto pts = sample_points(opt.points, opt.seed + 10);
  const ResidualConfig& cfg = opt.residual;
  auto as_field = [](std::function<FourVector(const SpacetimePoint&)> j) {
    return ComponentField([j](const SpacetimePoint& x) {
      const FourVector v = j(x);
      return Components{v[0], v[1], v[2], v[3]};
    });
  };
  auto check = [&](const std::string& name, ComponentField f) {
    if (opt.perturb != 0.0) f = perturbed(f, opt.perturb);
    rep.add(run_residual_check("current-conservation", name, pts,
                               [&](const SpacetimePoint& x) { return conservation_at(f, x, cfg); }, cfg.tolerance,
                               cfg.threads));
  };
  for (Family fam : {Family::weyl_hopfion_1, Family::weyl_hopfion_2}) {
    const SolutionId id = make_id(fam, opt.a);
    check(id.label(), as_field([id](const SpacetimePoint& x) { return weyl_current(std::get<Spinor>(evaluate(id, x))); }));
  }
  const double a = opt.a;
  check("weyl-field(h=1+psi0*psi1^2)", as_field([a](const SpacetimePoint& x) {
          return weyl_current(weyl_field([](Complex u, Complex v) { return 1.0 + u * v * v; }, default_eta_bar(), x, a));
        }));
  if (dirac.empty()) dirac = dirac_catalog(opt.a, opt.m);
  for (const auto& id : dirac)
    check(id.label(),
          as_field([id](const SpacetimePoint& x) { return dirac_current(std::get<Bispinor>(evaluate(id, x))); }));
  return rep;
}

/// Mean-square radius of the first Maxwell hopfion's energy density.
inline DispersionResult hopfion_dispersion(double a, const std::vector<double>& times = {-2, -1, 0, 1, 2}) {
  const SolutionId id = make_id(Family::maxwell_hopfion_1, a);
  return dispersion_check(
      [id](const SpacetimePoint& x) { return maxwell_stress(std::get<RSVector>(evaluate(id, x))).energy_density; },
      times);
}

inline VerificationReport suite_dispersion(const SuiteOptions& opt) {
  VerificationReport rep;
  const DispersionResult d = hopfion_dispersion(opt.a);
  const std::string sol = "maxwell-hopfion-1 energy density";
  char buf[160];
  std::snprintf(buf, sizeof buf, "A=%.10g B=%.10g", d.A, d.B);
  rep.add(scalar_record("dispersion-fit", sol, d.fit_residual, 1e-3, static_cast<int>(d.times.size()), buf));
  CheckRecord b = scalar_record("dispersion-B-positive", sol, d.B > 0 ? 0.0 : 1.0, 0.0, 1, buf);
  rep.add(b);
  rep.add(scalar_record("dispersion-symmetry", sol, d.symmetry_error, 1e-6));
  rep.add(scalar_record("dispersion-quadrature", sol, d.quadrature_error, 1e-6, 1,
                        d.converged ? "" : "quadrature did not reach its target"));
  return rep;
}

/// Negative-energy variants: the Dirac residual for each flipped bispinor,
/// and the massless map f(-x) checked as an identity.
inline VerificationReport suite_energy_sign(const SuiteOptions& opt, std::vector<SolutionId> dirac = {}) {
  VerificationReport rep;
  const auto pts = sample_points(opt.points, opt.seed + 11);
  if (dirac.empty()) dirac = dirac_catalog(opt.a, opt.m);
  for (auto id : dirac) {
    id.energy_sign = -1;
    const ComponentField f = maybe_perturbed(id, opt.perturb);
    rep.add(governing_residual(id, f, pts, opt.residual));
  }
  double worst = 0.0;
  for (const auto& base : residual_catalog(opt.a, opt.m)) {
    if (is_massive(base.family)) continue;
    SolutionId neg = base;
    neg.energy_sign = -1;
    for (const auto& x : pts) {
      const FieldValue u = evaluate(neg, x), v = evaluate(base, -x);
      for (int c = 0; c < component_count(base.family); ++c)
        worst = std::max(worst, std::abs(component(u, c) - component(v, c)));
    }
  }
  rep.add(scalar_record("energy-sign-map", "massless f_-(x) = f_+(-x)", worst, 0.0, static_cast<int>(pts.size())));
  return rep;
}

/// Recurrence and continuity of the special functions.
inline VerificationReport suite_special(const SuiteOptions& opt) {
  VerificationReport rep;
  std::mt19937_64 rng(opt.seed + 12);
  std::uniform_real_distribution<double> mag(std::log(0.1), std::log(30.0)), arg(-0.499 * pi, 0.499 * pi);
  double rec = 0.0;
  for (int i = 0; i < opt.invariant_points; ++i) {
    const Complex z = std::polar(std::exp(mag(rng)), arg(rng));
    const auto k = macdonald_K_sequence(7, z);
    for (int n = 1; n <= 6; ++n)
      rec = std::max(rec, std::abs(k[n + 1] - k[n - 1] - (2.0 * n / z) * k[n]) / std::abs(k[n + 1]));
  }
  rep.add(scalar_record("macdonald-recurrence", "K_n, n=1..6", rec, 1e-9, opt.invariant_points));

  // Dense walk along lines through spacetime: s must not jump.
  double jump = 0.0;
  std::normal_distribution<double> n;
  for (int line = 0; line < 20; ++line) {
    const SpacetimePoint p0{n(rng), n(rng), n(rng), n(rng)}, dir{n(rng), n(rng), n(rng), n(rng)};
    Complex prev = complex_distance(p0, opt.a);
    const double step = 1e-3;
    for (int k = 1; k <= 8000; ++k) {
      const double lam = -4.0 + k * step;
      const SpacetimePoint p{p0.t + lam * dir.t, p0.x + lam * dir.x, p0.y + lam * dir.y, p0.z + lam * dir.z};
      const Complex s = complex_distance(p, opt.a);
      if (k > 1) jump = std::max(jump, std::abs(s - prev) / step);
      prev = s;
    }
  }
  // |ds/dlambda| <= |dir| stays O(1); a branch jump would show up as ~1/step.
  rep.add(scalar_record("complex-distance-continuity", "max |ds/dlambda| along lines", jump, 100.0, 20));
  return rep;
}

// ---------------------------------------------------------------- hopf map

inline const std::vector<std::string>& hopf_check_names() {
  static const std::vector<std::string> names{"roundtrip", "norm", "jacobian", "spinor-consistency", "fiber",
                                              "degenerate"};
  return names;
}

inline VerificationReport run_hopf_check(const std::string& name, int samples, std::uint64_t seed) {
  VerificationReport rep;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
  auto random_point = [&] { return HopfPoint{n(rng), n(rng), n(rng), n(rng)}; };
  if (name == "roundtrip") {
    double worst = 0.0, phase_err = 0.0;
    int used = 0;
    while (used < samples) {
      const double kz_frac = std::uniform_real_distribution<double>(-0.9, 1.0)(rng);
      const double k = std::exp(n(rng));
      const double az = phase(rng);
      const double rho = k * std::sqrt(1.0 - kz_frac * kz_frac);
      const WaveVector kv{rho * std::cos(az), rho * std::sin(az), k * kz_frac};
      const double phi = phase(rng);
      const HopfPoint p = hopf_inverse(kv, phi);
      const WaveVector back = hopf_forward(p);
      worst = std::max(worst, norm(back.as_vec() - kv.as_vec()) / k);
      double dphi = std::abs(hopf_phase(p) - phi);
      phase_err = std::max(phase_err, std::min(dphi, 2.0 * pi - dphi));
      ++used;
    }
    rep.add(scalar_record("hopf-roundtrip", "forward(inverse(k, phi)) = k", worst, 1e-12, samples));
    rep.add(scalar_record("hopf-phase", "phase(inverse(k, phi)) = phi", phase_err, 1e-12, samples));
  } else if (name == "norm") {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const HopfPoint p = random_point();
      const WaveVector k = hopf_forward(p);
      const double lhs = k.kx * k.kx + k.ky * k.ky + k.kz * k.kz, rhs = p.norm2() * p.norm2();
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    rep.add(scalar_record("hopf-norm", "|k|^2 = (sum xi^2)^2", worst, 1e-14, samples));
  } else if (name == "jacobian") {
    double worst = 0.0, fwd = 0.0;
    int used = 0;
    while (used < samples) {
      const HopfPoint p = random_point();
      const WaveVector k = hopf_forward(p);
      if (k.k() + k.kz < 1e-2 * k.k()) continue;
      const JacobianResult j = jacobian_check(p);
      worst = std::max(worst, j.relative_error);
      fwd = std::max(fwd, std::abs(j.forward_det - 8.0 * j.k) / (8.0 * j.k));
      ++used;
    }
    rep.add(scalar_record("hopf-jacobian-inverse", "|det d xi/d(k,phi)| = 1/(8k)", worst, 1e-6, samples));
    rep.add(scalar_record("hopf-jacobian-forward", "|det d(k,phi)/d xi| = 8k", fwd, 1e-6, samples));
  } else if (name == "spinor-consistency") {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const SpinorConsistency c = spinor_consistency(random_point().to_spinor());
      worst = std::max({worst, c.vector_mismatch, c.energy_mismatch});
    }
    rep.add(scalar_record("hopf-spinor-consistency", "hopf_forward(xi) = kappa^dag sigma kappa", worst, 1e-12, samples));
  } else if (name == "fiber") {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const HopfPoint p = random_point();
      const Spinor rotated = p.to_spinor().scaled(std::polar(1.0, phase(rng)));
      const WaveVector a = hopf_forward(p), b = hopf_forward(HopfPoint::from_spinor(rotated));
      worst = std::max(worst, norm(a.as_vec() - b.as_vec()) / p.norm2());
    }
    rep.add(scalar_record("hopf-fiber-invariance", "k(e^{i phi} kappa) = k(kappa)", worst, 1e-12, samples));
  } else if (name == "degenerate") {
    bool raised = false;
    try {
      (void)hopf_inverse({0.0, 0.0, -1.0}, 0.3);
    } catch (const DegenerateFiberError&) {
      raised = true;
    }
    rep.add(scalar_record("hopf-degenerate-fiber", "k = (0,0,-1) rejected", raised ? 0.0 : 1.0, 0.0));
  } else {
    throw DomainError("unknown hopf check '" + name + "'");
  }
  return rep;
}

// ----------------------------------------------------------------- oracles

inline const std::vector<std::string>& oracle_check_names() {
  static const std::vector<std::string> names{"upsilon", "upsilon-4d", "uv-integrals", "kg-support"};
  return names;
}

/// Parameter points (eta, eta_bar, x) for the Gaussian-integral oracle.
struct UpsilonCase {
  Spinor eta;
  Spinor eta_bar;
  SpacetimePoint x;
};

inline std::vector<UpsilonCase> upsilon_cases(int count, std::uint64_t seed, double radius = 2.0) {
  std::vector<UpsilonCase> cases{
      {{0.0, 0.0, Variance::upper, false}, {0.0, 0.0, Variance::upper, true}, {0, 0, 0, 0}},
      {{0.0, 0.0, Variance::upper, false}, {0.0, 0.0, Variance::upper, true}, {1, 0, 0, 0}},
      {{1.0, 0.0, Variance::upper, false}, {1.0, 0.0, Variance::upper, true}, {0, 0, 0, 0}},
  };
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  const auto pts = sample_points(std::max(0, count - 3), seed, radius, radius);
  for (const auto& x : pts)
    cases.push_back({{Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, false},
                     {Complex{n(rng), n(rng)}, Complex{n(rng), n(rng)}, Variance::upper, true},
                     x});
  cases.resize(static_cast<std::size_t>(count));
  return cases;
}

struct UvCase {
  double m;
  Complex s;
};

inline std::vector<UvCase> uv_cases() {
  return {{1.0, {1.0, 0.0}},  {0.5, {1.0, 0.0}},  {2.0, {1.0, 0.0}},  {1.0, {1.0, 0.5}},
          {1.0, {2.0, -0.7}}, {0.7, {0.6, 1.5}},  {1.5, {1.2, -1.0}}, {3.0, {0.8, 0.3}},
          {0.3, {2.5, 0.0}},  {1.0, {1.414, 1.0}}};
}

inline VerificationReport run_oracle_check(const std::string& name, int samples, std::uint64_t seed,
                                           double a = 1.0, unsigned threads = 1) {
  VerificationReport rep;
  if (name == "upsilon" || name == "upsilon-4d") {
    const bool tensor = name == "upsilon-4d";
    // The 4D tensor rule costs n^4 per refinement; it runs on a smaller
    // region where n <= 72 nodes per axis suffice.
    const auto cases = upsilon_cases(samples, seed, tensor ? 1.0 : 2.0);
    UpsilonQuadratureOptions o;
    if (tensor) {
      o.method = UpsilonMethod::tensor_4d;
      o.start_nodes = 32;
      o.max_nodes = 72;
      o.tolerance = 1e-6;
    }
    std::vector<double> err(cases.size()), est(cases.size());
    parallel_for(cases.size(), threads, [&](std::size_t i) {
      const auto& c = cases[i];
      const QuadratureResult q = upsilon_by_quadrature(c.eta, c.eta_bar, c.x, a, o);
      const Complex closed = pi * pi * upsilon_massless(c.eta, c.eta_bar, c.x, a);
      err[i] = std::abs(q.value - closed) / std::abs(closed);
      est[i] = q.converged ? q.relative_error() : std::numeric_limits<double>::infinity();
    });
    const double worst = *std::max_element(err.begin(), err.end());
    const double worst_est = *std::max_element(est.begin(), est.end());
    char buf[128];
    std::snprintf(buf, sizeof buf, "max error estimate %.3g", worst_est);
    rep.add(scalar_record(tensor ? "upsilon-quadrature-4d" : "upsilon-quadrature", "pi^2 upsilon_massless", worst,
                          1e-4, static_cast<int>(cases.size()), buf));
  } else if (name == "uv-integrals") {
    const auto cases = uv_cases();
    std::vector<double> e1(cases.size()), e2(cases.size()), ev(cases.size()), tail(cases.size());
    parallel_for(cases.size(), threads, [&](std::size_t i) {
      const auto& c = cases[i];
      const Complex k1 = pi * c.m * c.m / 4.0 * frak_K(1, c.m, c.s), k2 = pi * c.m * c.m / 4.0 * frak_K(2, c.m, c.s);
      const QuadratureResult q2 = uv_integral(UvWeight::one, c.m, c.s);
      const QuadratureResult q1 = uv_integral(UvWeight::minus_v_plus_iu, c.m, c.s);
      const QuadratureResult qv = uv_integral(UvWeight::v, c.m, c.s);
      e2[i] = std::abs(q2.value - k2) / std::abs(k2);
      e1[i] = std::abs(q1.value - k1) / std::abs(k1);
      ev[i] = std::abs(qv.value) / std::abs(k1);
      tail[i] = std::max(q1.relative_error(), q2.relative_error());
    });
    const int n = static_cast<int>(cases.size());
    rep.add(scalar_record("uv-integral", "w=1 vs (pi m^2/4) frak_K_2", *std::max_element(e2.begin(), e2.end()), 1e-6, n));
    rep.add(scalar_record("uv-integral", "w=-(v+iu) vs (pi m^2/4) frak_K_1", *std::max_element(e1.begin(), e1.end()),
                          1e-6, n));
    rep.add(scalar_record("uv-integral", "w=v vanishes", *std::max_element(ev.begin(), ev.end()), 1e-10, n));
    char buf[96];
    std::snprintf(buf, sizeof buf, "max relative error estimate %.3g", *std::max_element(tail.begin(), tail.end()));
    rep.records.back().note = buf;
  } else if (name == "kg-support") {
    const KgSupportResult k = kg_support_check(1.0, samples, seed);
    rep.add(scalar_record("kg-support", "k.l = 2|kappa_A lambda^A|^2", k.max_dot_identity_error, 1e-12, samples));
    rep.add(scalar_record("kg-support", "(k+l)^2 = 4|kappa_A lambda^A|^2", k.max_square_identity_error, 1e-12, samples));
    rep.add(scalar_record("kg-support", "(k+l)^2 = m^2 on the constraint surface", k.max_mass_shell_error, 1e-12, samples));
    rep.add(scalar_record("kg-support", "k.l = 0 for lambda ~ kappa", k.max_parallel_product, 1e-12, samples));
    rep.add(scalar_record("kg-support", "eps^{BC} kappa_B kappa_C = 0", k.max_antisymmetry, 1e-15, samples));
  } else {
    throw DomainError("unknown oracle check '" + name + "'");
  }
  return rep;
}

// ---------------------------------------------------------------- topology

inline VectorField3 flow_at_time(const SolutionId& id, double t) {
  return [id, t](const Vec3& r) { return flow_vector(id, {t, r[0], r[1], r[2]}); };
}

inline std::vector<Vec3> hopfion_seeds() { return {{0.5, 0.0, 0.0}, {0.0, 0.8, 0.3}, {-0.3, 0.2, 1.1}}; }

inline std::vector<Vec3> figure3_seeds() {
  return {{0.25, 0.3, 0.0}, {0.6, 0.3, 0.0}, {0.1, 0.3, 0.0}, {1.25, 0.3, 0.0}};
}

inline Vec3 figure2_seed() { return {1.0, 0.3, 0.0}; }

inline double max_abs_coordinate(const FieldLine& line) {
  double m = 0.0;
  for (const auto& p : line.points)
    for (double c : p.r) m = std::max(m, std::abs(c));
  return m;
}

struct TopologyOptions {
  double a = 1.0;
  double m = 1.0;
  double closure_eps = 1e-4;
  double box_half_width = 1.5;
  double dirac_length = 50.0;     // arc length traced for the Dirac current lines
  double distinct_threshold = 1e-2;  // minimum Hausdorff distance between distinct lines
};

/// Closed hopfion velocity lines and their linking, Dirac current lines from
/// the single seed (1, 0.3, 0) staying in the box, and the four seeds for psi4
/// giving pairwise distinct lines.
inline VerificationReport suite_topology(const TopologyOptions& opt = {}, unsigned threads = 1) {
  VerificationReport rep;
  TraceOptions closing;
  closing.closure_eps = opt.closure_eps;
  const SolutionId hopf = make_id(Family::weyl_hopfion_1, opt.a);
  const auto seeds = hopfion_seeds();
  std::vector<FieldLine> loops(seeds.size());
  parallel_for(seeds.size(), threads, [&](std::size_t i) { loops[i] = trace(flow_at_time(hopf, 0.0), seeds[i], closing); });
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const auto& l = loops[i];
    char buf[160];
    std::snprintf(buf, sizeof buf, "seed (%g, %g, %g), stop %s, period %.9g", seeds[i][0], seeds[i][1], seeds[i][2],
                  to_string(l.stop).c_str(), l.period_length);
    rep.add(scalar_record("line-closure", hopf.label(), l.closed ? l.closure_gap : std::numeric_limits<double>::infinity(),
                          opt.closure_eps, 1, buf));
  }
  for (std::size_t i = 0; i < loops.size(); ++i)
    for (std::size_t j = i + 1; j < loops.size(); ++j) {
      if (!loops[i].closed || !loops[j].closed) {
        rep.add(scalar_record("linking-number", hopf.label(), std::numeric_limits<double>::infinity(), 0.01, 2,
                              "line did not close"));
        continue;
      }
      const LinkingResult lk = linking_number(loops[i], loops[j]);
      char buf[160];
      std::snprintf(buf, sizeof buf, "lines %zu,%zu: raw %.9f rounded %d", i, j, lk.raw, lk.linking_number);
      rep.add(scalar_record("linking-number", hopf.label(), lk.linking_number == 1 ? std::abs(lk.raw - 1.0) : 1.0, 0.01, 2, buf));
    }

  TraceOptions open;
  open.stop_on_closure = false;
  open.max_length = opt.dirac_length;
  const std::vector<Family> fig2{Family::psi2, Family::psi4, Family::psi6_repaired, Family::psi8_repaired};
  std::vector<FieldLine> lines(fig2.size());
  parallel_for(fig2.size(), threads, [&](std::size_t i) {
    lines[i] = trace(flow_at_time(make_id(fig2[i], opt.a, opt.m), 0.0), figure2_seed(), open);
  });
  for (std::size_t i = 0; i < fig2.size(); ++i) {
    const double reach = max_abs_coordinate(lines[i]);
    char buf[160];
    std::snprintf(buf, sizeof buf, "stop %s, length %.6g, max |coordinate| %.6g", to_string(lines[i].stop).c_str(),
                  lines[i].arc_length, reach);
    const bool full = lines[i].stop == StopReason::max_length;
    rep.add(scalar_record("trace-in-box", make_id(fig2[i]).label(), full ? reach : std::numeric_limits<double>::infinity(),
                          opt.box_half_width, 1, buf));
  }

  const SolutionId psi4 = make_id(Family::psi4, opt.a, opt.m);
  const auto s3 = figure3_seeds();
  std::vector<FieldLine> fig3(s3.size());
  parallel_for(s3.size(), threads, [&](std::size_t i) { fig3[i] = trace(flow_at_time(psi4, 0.0), s3[i], open); });
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < fig3.size(); ++i)
    for (std::size_t j = i + 1; j < fig3.size(); ++j) closest = std::min(closest, hausdorff_distance(fig3[i], fig3[j]));
  char buf[96];
  std::snprintf(buf, sizeof buf, "min pairwise Hausdorff distance %.6g", closest);
  rep.add(scalar_record("distinct-lines", psi4.label(), closest >= opt.distinct_threshold ? 0.0 : 1.0, 0.0,
                        static_cast<int>(fig3.size()), buf));
  return rep;
}

// ------------------------------------------------------------ dispatch

inline const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names{"residuals",   "kleingordon", "dalembert",    "nullness",
                                              "bateman",     "structure",   "conservation", "dispersion",
                                              "energy-sign", "special",     "topology"};
  return names;
}

/// Runs one named suite; throws DomainError for an unknown name.
inline VerificationReport run_verify_suite(const std::string& name, const SuiteOptions& opt) {
  if (name == "residuals") return suite_residuals(opt);
  if (name == "kleingordon") return suite_kleingordon(opt);
  if (name == "dalembert") return suite_dalembert(opt);
  if (name == "nullness") return suite_nullness(opt);
  if (name == "bateman") return suite_bateman(opt);
  if (name == "structure") return suite_structure(opt);
  if (name == "conservation") return suite_conservation(opt);
  if (name == "dispersion") return suite_dispersion(opt);
  if (name == "energy-sign") return suite_energy_sign(opt);
  if (name == "special") return suite_special(opt);
  if (name == "topology") {
    TopologyOptions t;
    t.a = opt.a;
    t.m = opt.m;
    return suite_topology(t, opt.residual.threads);
  }
  throw DomainError("unknown suite '" + name + "'");
}

}  // namespace hopfion
