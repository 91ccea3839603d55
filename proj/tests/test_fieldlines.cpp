#include <gtest/gtest.h>

#include "hopfion/catalog.hpp"
#include "hopfion/fieldlines.hpp"

using namespace hopfion;

namespace {

std::vector<Vec3> sampled(int n, const std::function<Vec3(double)>& c) {
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.push_back(c(2.0 * pi * i / n));
  return out;
}

VectorField3 rotation_field() {
  return [](const Vec3& r) { return Vec3{-r[1], r[0], 0.0}; };
}

}  // namespace

TEST(Trace, CircleClosesWithCircumference) {
  const FieldLine line = trace(rotation_field(), {1.0, 0.0, 0.0});
  EXPECT_EQ(line.stop, StopReason::closed);
  ASSERT_TRUE(line.closed);
  EXPECT_NEAR(line.period_length, 2.0 * pi, 1e-6);
  EXPECT_LE(line.closure_gap, 1e-4);
  for (const auto& p : line.points) EXPECT_NEAR(std::hypot(p.r[0], p.r[1]), 1.0, 1e-7);
}

TEST(Trace, CircleRadiusScalesPeriod) {
  const FieldLine line = trace(rotation_field(), {0.0, 2.5, 0.7});
  ASSERT_TRUE(line.closed);
  EXPECT_NEAR(line.period_length, 5.0 * pi, 1e-6);
  EXPECT_NEAR(line.points.back().r[2], 0.7, 1e-12);
}

TEST(Trace, NoClosureWhenDisabled) {
  TraceOptions o;
  o.stop_on_closure = false;
  o.max_length = 20.0;
  const FieldLine line = trace(rotation_field(), {1.0, 0.0, 0.0}, o);
  EXPECT_EQ(line.stop, StopReason::max_length);
  EXPECT_NEAR(line.points.back().lambda, 20.0, 1e-9);
}

TEST(Trace, ZeroFieldStagnates) {
  const FieldLine line = trace([](const Vec3&) { return Vec3{0, 0, 0}; }, {0.3, 0.2, 0.1});
  EXPECT_EQ(line.stop, StopReason::stagnation);
  EXPECT_FALSE(line.closed);
  EXPECT_LE(line.points.size(), 2u);
}

TEST(Trace, LeavesBox) {
  TraceOptions o;
  o.box_half_width = 1.5;
  const FieldLine line = trace([](const Vec3&) { return Vec3{1, 0.2, 0}; }, {0.0, 0.0, 0.0}, o);
  EXPECT_EQ(line.stop, StopReason::left_box);
  EXPECT_GT(std::abs(line.points.back().r[0]), 1.5);
  EXPECT_LT(line.points.back().lambda, 3.0);
}

TEST(Trace, NonFiniteFieldStops) {
  const FieldLine line = trace(
      [](const Vec3& r) { return r[0] > 0.5 ? Vec3{std::numeric_limits<double>::quiet_NaN(), 0, 0} : Vec3{1, 0, 0}; },
      {0.0, 0.0, 0.0});
  EXPECT_EQ(line.stop, StopReason::non_finite);
}

TEST(Trace, UnnormalisedParameter) {
  // With arc_length off, lambda is the flow time: one turn takes 2 pi at any radius.
  TraceOptions o;
  o.arc_length = false;
  const FieldLine line = trace(rotation_field(), {3.0, 0.0, 0.0}, o);
  ASSERT_TRUE(line.closed);
  EXPECT_NEAR(line.points.back().lambda, 2.0 * pi, 1e-6);
}

TEST(Linking, StandardHopfLink) {
  const auto c1 = sampled(400, [](double s) { return Vec3{std::cos(s), std::sin(s), 0}; });
  const auto c2 = sampled(400, [](double s) { return Vec3{1 + std::cos(s), 0, std::sin(s)}; });
  const auto c2r = sampled(400, [](double s) { return Vec3{1 + std::cos(s), 0, -std::sin(s)}; });
  const LinkingResult a = linking_number(c1, c2), b = linking_number(c1, c2r);
  EXPECT_EQ(a.linking_number, -1);
  EXPECT_EQ(b.linking_number, 1);
  EXPECT_NEAR(a.raw, -1.0, 1e-9);
  EXPECT_NEAR(b.raw, 1.0, 1e-9);
  EXPECT_FALSE(a.warning);
  // symmetric in its arguments
  EXPECT_NEAR(linking_number(c2, c1).raw, a.raw, 1e-12);
}

TEST(Linking, UnlinkedAndDoubleLinked) {
  const auto c1 = sampled(300, [](double s) { return Vec3{std::cos(s), std::sin(s), 0}; });
  const auto far = sampled(300, [](double s) { return Vec3{5 + std::cos(s), 0, std::sin(s)}; });
  EXPECT_EQ(linking_number(c1, far).linking_number, 0);
  EXPECT_NEAR(linking_number(c1, far).raw, 0.0, 1e-9);
  // A (2,1)-torus-like curve winding twice through the unit circle.
  const auto twice = sampled(800, [](double s) {
    const double r = 1.0 + 0.4 * std::cos(2 * s);
    return Vec3{r * std::cos(s), r * std::sin(s), 0.4 * std::sin(2 * s)};
  });
  const auto axis = sampled(300, [](double s) { return Vec3{0.3 * std::cos(s) + 1.0, 0.0, 0.3 * std::sin(s)}; });
  EXPECT_EQ(std::abs(linking_number(twice, sampled(300, [](double s) {
                       return Vec3{0.05 * std::cos(s), 0.05 * std::sin(s), 0};
                     })).linking_number),
            0);
  EXPECT_EQ(std::abs(linking_number(axis, c1).linking_number), 1);
}

TEST(Linking, RejectsDegenerateInput) {
  EXPECT_THROW(linking_number(std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}}, std::vector<Vec3>{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}),
               DomainError);
  FieldLine open;
  open.points.resize(5);
  EXPECT_THROW(linking_number(open, open), DomainError);
}

TEST(Hausdorff, ConcentricCircles) {
  const FieldLine a = trace(rotation_field(), {1.0, 0.0, 0.0}), b = trace(rotation_field(), {2.0, 0.0, 0.0});
  EXPECT_NEAR(hausdorff_distance(a, b), 1.0, 1e-3);
  EXPECT_EQ(hausdorff_distance(a, a), 0.0);
}

TEST(Hopfion, LinesCloseAndLinkPositively) {
  SolutionId id;
  id.family = Family::weyl_hopfion_1;
  const VectorField3 flow = [id](const Vec3& r) { return flow_vector(id, {0.0, r[0], r[1], r[2]}); };
  TraceOptions o;
  o.max_length = 200.0;
  const std::vector<Vec3> seeds{{0.5, 0.0, 0.0}, {0.0, 0.8, 0.3}};
  const FieldLine a = trace(flow, seeds[0], o), b = trace(flow, seeds[1], o);
  ASSERT_TRUE(a.closed);
  ASSERT_TRUE(b.closed);
  EXPECT_LE(a.closure_gap, 1e-4);
  const LinkingResult lk = linking_number(a, b);
  EXPECT_EQ(lk.linking_number, 1);
  EXPECT_NEAR(lk.raw, 1.0, 1e-3);
}
