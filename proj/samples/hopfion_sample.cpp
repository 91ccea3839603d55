// Evaluates a few fields, checks one of them against its field equation and
// traces two hopfion flow lines to measure how they link.

#include <cstdio>

#include "hopfion/hopfion.hpp"

using namespace hopfion;

int main() {
  const SpacetimePoint x{0.5, 0.3, -0.2, 0.7};

  SolutionId maxwell;
  maxwell.family = Family::maxwell_hopfion_1;
  const auto F = std::get<RSVector>(evaluate(maxwell, x));
  std::printf("maxwell-hopfion-1 at (t,x,y,z) = (0.5, 0.3, -0.2, 0.7)\n");
  for (int i = 0; i < 3; ++i) std::printf("  F[%d] = %.12f %+.12fi\n", i, F[i].real(), F[i].imag());
  const MaxwellStress st = maxwell_stress(F);
  std::printf("  energy density %.12f, |S| %.12f\n", st.energy_density, norm(st.poynting));

  SolutionId psi;
  psi.family = Family::psi4;
  psi.m = 1.0;
  const ComponentField f = field_components(psi);
  const PointResidual r = dirac_at(f, psi.m, x, ResidualConfig{});
  std::printf("psi4 Dirac residual at the same point: %.3g\n", r.relative());

  SolutionId weyl;
  weyl.family = Family::weyl_hopfion_1;
  const FieldLine a = trace(flow_at_time(weyl, 0.0), {0.5, 0.0, 0.0});
  const FieldLine b = trace(flow_at_time(weyl, 0.0), {0.0, 0.8, 0.3});
  std::printf("hopfion lines: periods %.6f and %.6f, closure gaps %.2g and %.2g\n", a.period_length, b.period_length,
              a.closure_gap, b.closure_gap);
  if (!a.closed || !b.closed) return 1;
  const LinkingResult lk = linking_number(a, b);
  std::printf("Gauss linking number %d (raw %.9f)\n", lk.linking_number, lk.raw);
  return lk.linking_number == 1 && r.relative() < 1e-6 ? 0 : 1;
}
