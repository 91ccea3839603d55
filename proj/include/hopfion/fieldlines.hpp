#pragma once

// Integral lines dr/dlambda = v(r) of a static 3D vector field, traced with
// the Dormand-Prince 5(4) pair. Each stored point keeps the tangent, so the
// line can be interpolated with cubic Hermite segments between steps; closure
// detection relies on that.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "hopfion/core.hpp"

namespace hopfion {

using VectorField3 = std::function<Vec3(const Vec3&)>;

enum class StopReason { max_length, max_steps, closed, stagnation, left_box, non_finite };

inline std::string to_string(StopReason s) {
  switch (s) {
    case StopReason::max_length: return "max_length";
    case StopReason::max_steps: return "max_steps";
    case StopReason::closed: return "closed";
    case StopReason::stagnation: return "stagnation";
    case StopReason::left_box: return "left_box";
    default: return "non_finite";
  }
}

struct LinePoint {
  double lambda = 0.0;
  Vec3 r{};
  Vec3 tangent{};  // dr/dlambda
};

struct FieldLine {
  std::vector<LinePoint> points;
  Vec3 seed{};
  double t = 0.0;
  std::string solution;
  StopReason stop = StopReason::max_length;
  bool closed = false;
  double period_length = 0.0;  // arc length to the closure point
  double closure_gap = 0.0;    // distance from the seed at closure
  double arc_length = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
  long evaluations = 0;
};

struct TraceOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double initial_step = 0.01;
  double max_step = 0.05;
  double max_length = 100.0;     // arc length
  long max_steps = 2'000'000;
  bool arc_length = true;        // integrate v/|v|, so lambda is arc length
  bool stop_on_closure = true;
  double closure_eps = 1e-4;
  double min_closure_arc = 0.0;  // 0: ten initial steps
  double stagnation_floor = 1e-30;
  std::optional<double> box_half_width;  // stop once any |coordinate| exceeds it

  double closure_arc() const { return min_closure_arc > 0.0 ? min_closure_arc : 10.0 * initial_step; }
};

namespace detail {

inline bool finite(const Vec3& v) { return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]); }

inline Vec3 hermite(const LinePoint& a, const LinePoint& b, double s) {
  const double h = b.lambda - a.lambda;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2, h11 = s3 - s2;
  return h00 * a.r + (h * h10) * a.tangent + h01 * b.r + (h * h11) * b.tangent;
}

struct SegmentMin {
  double s = 0.0;
  double distance = std::numeric_limits<double>::infinity();
};

// Closest approach of the Hermite segment to `target`: coarse scan, then
// golden-section refinement around the best sample.
inline SegmentMin segment_min_distance(const LinePoint& a, const LinePoint& b, const Vec3& target) {
  constexpr int samples = 16;
  auto dist = [&](double s) { return norm(hermite(a, b, s) - target); };
  SegmentMin best;
  int k_best = 0;
  for (int k = 0; k <= samples; ++k) {
    const double d = dist(double(k) / samples);
    if (d < best.distance) {
      best = {double(k) / samples, d};
      k_best = k;
    }
  }
  double lo = std::max(0, k_best - 1) / double(samples), hi = std::min(samples, k_best + 1) / double(samples);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = dist(c), fd = dist(d);
  for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = dist(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = dist(d);
    }
  }
  const double s = 0.5 * (lo + hi);
  const double ds = dist(s);
  if (ds < best.distance) best = {s, ds};
  return best;
}

}  // namespace detail

struct ClosureResult {
  bool closed = false;
  double period_length = 0.0;  // lambda at the closest return
  double gap = 0.0;            // distance from the seed there
  std::size_t segment = 0;     // closing segment index
  double s = 0.0;              // position within that segment
};

/// First return of the line to its starting point within eps, after at
/// least `min_arc` of travel. Once inside the eps-ball the closest approach
/// is followed across segments.
inline ClosureResult closure_detect(const FieldLine& line, double eps, double min_arc) {
  ClosureResult best;
  if (line.points.size() < 2) return best;
  const Vec3 start = line.points.front().r;
  const double l0 = line.points.front().lambda;
  bool inside = false;
  for (std::size_t i = 0; i + 1 < line.points.size(); ++i) {
    const auto& a = line.points[i];
    const auto& b = line.points[i + 1];
    if (b.lambda - l0 < min_arc) continue;
    const detail::SegmentMin m = detail::segment_min_distance(a, b, start);
    const double lam = a.lambda + m.s * (b.lambda - a.lambda);
    if (lam - l0 < min_arc) continue;
    if (m.distance < eps) {
      if (!inside || m.distance < best.gap) {
        best = {true, lam - l0, m.distance, i, m.s};
        inside = true;
      } else {
        break;  // moving away again
      }
    } else if (inside) {
      break;
    }
  }
  return best;
}

/// Traces the integral line of `field` through `seed`.
inline FieldLine trace(const VectorField3& field, const Vec3& seed, const TraceOptions& opt = {}) {
  FieldLine line;
  line.seed = seed;

  auto rhs = [&](const Vec3& r, bool& stagnant) -> Vec3 {
    ++line.evaluations;
    const Vec3 v = field(r);
    const double n = norm(v);
    stagnant = !(n > opt.stagnation_floor);
    if (stagnant || !opt.arc_length) return v;
    return (1.0 / n) * v;
  };

  bool stagnant = false;
  Vec3 k1 = rhs(seed, stagnant);
  line.points.push_back({0.0, seed, k1});
  if (!detail::finite(k1)) {
    line.stop = StopReason::non_finite;
    return line;
  }
  if (stagnant) {
    line.stop = StopReason::stagnation;
    return line;
  }

  // Dormand-Prince 5(4) tableau.
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                   a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                   e6 = 22.0 / 525, e7 = -1.0 / 40;

  double h = std::min(opt.initial_step, opt.max_step);
  double lambda = 0.0;
  Vec3 r = seed;
  bool closing = false;  // closure seen; one more step, then finish
  while (true) {
    if (line.accepted_steps >= opt.max_steps) {
      line.stop = StopReason::max_steps;
      break;
    }
    // In arc-length mode lambda is the length, and the last step lands on the limit.
    if ((opt.arc_length ? lambda : line.arc_length) >= opt.max_length) {
      line.stop = StopReason::max_length;
      break;
    }
    const bool last = opt.arc_length && h >= opt.max_length - lambda;
    if (last) h = opt.max_length - lambda;
    bool s2, s3, s4, s5, s6, s7;
    const Vec3 k2 = rhs(r + (h * a21) * k1, s2);
    const Vec3 k3 = rhs(r + h * (a31 * k1 + a32 * k2), s3);
    const Vec3 k4 = rhs(r + h * (a41 * k1 + a42 * k2 + a43 * k3), s4);
    const Vec3 k5 = rhs(r + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4), s5);
    const Vec3 k6 = rhs(r + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5), s6);
    const Vec3 r_new = r + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Vec3 k7 = rhs(r_new, s7);
    const Vec3 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    double en = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double sc = opt.atol + opt.rtol * std::max(std::abs(r[i]), std::abs(r_new[i]));
      en = std::max(en, std::abs(err[i]) / sc);
    }
    if (!std::isfinite(en) || !detail::finite(r_new) || !detail::finite(k7)) {
      if (h > 1e-12) {
        h *= 0.25;
        ++line.rejected_steps;
        continue;
      }
      line.stop = StopReason::non_finite;
      break;
    }
    if (en > 1.0) {
      ++line.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      continue;
    }
    ++line.accepted_steps;
    lambda = last ? opt.max_length : lambda + h;
    line.arc_length += norm(r_new - r);
    r = r_new;
    k1 = k7;
    line.points.push_back({lambda, r, k1});
    h = std::min(opt.max_step, h * std::min(5.0, 0.9 * std::pow(std::max(en, 1e-10), -0.2)));

    if (s7) {
      line.stop = StopReason::stagnation;
      break;
    }
    if (opt.box_half_width) {
      const double b = *opt.box_half_width;
      if (std::abs(r[0]) > b || std::abs(r[1]) > b || std::abs(r[2]) > b) {
        line.stop = StopReason::left_box;
        break;
      }
    }
    if (opt.stop_on_closure) {
      if (closing) {
        line.stop = StopReason::closed;
        break;
      }
      const auto& a = line.points[line.points.size() - 2];
      const auto& b = line.points.back();
      if (b.lambda >= opt.closure_arc() && detail::segment_min_distance(a, b, seed).distance < opt.closure_eps)
        closing = true;
    }
  }

  const ClosureResult c = closure_detect(line, opt.closure_eps, opt.closure_arc());
  if (c.closed) {
    line.closed = true;
    line.closure_gap = c.gap;
    if (opt.stop_on_closure) {
      // Cut the line at the closest return.
      const LinePoint a = line.points[c.segment], b = line.points[c.segment + 1];
      line.points.resize(c.segment + 1);
      const double lam = a.lambda + c.s * (b.lambda - a.lambda);
      const Vec3 p = detail::hermite(a, b, c.s);
      bool unused = false;
      if (c.s > 0.0) line.points.push_back({lam, p, rhs(p, unused)});
      line.stop = StopReason::closed;
    }
    double arc = 0.0;
    for (std::size_t i = 1; i < line.points.size(); ++i) arc += norm(line.points[i].r - line.points[i - 1].r);
    line.arc_length = arc;
    line.period_length = opt.arc_length ? line.points.back().lambda : arc;
  }
  return line;
}

/// Hausdorff distance between the vertex sets of two lines.
inline double hausdorff_distance(const FieldLine& a, const FieldLine& b) {
  auto directed = [](const FieldLine& p, const FieldLine& q) {
    double worst = 0.0;
    for (const auto& u : p.points) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& v : q.points) best = std::min(best, norm(u.r - v.r));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

struct LinkingResult {
  int linking_number = 0;
  double raw = 0.0;           // before rounding
  double min_distance = 0.0;  // between the two polylines' vertices
  bool warning = false;       // curves too close for a trustworthy value
};

/// Gauss linking number of two closed polylines (each implicitly closed
/// from its last vertex back to its first), summed exactly over segment
/// pairs with the solid-angle formula of Klenin and Langowski.
inline LinkingResult linking_number(const std::vector<Vec3>& c1, const std::vector<Vec3>& c2,
                                    double close_threshold = 1e-3) {
  if (c1.size() < 3 || c2.size() < 3) throw DomainError("linking_number: each curve needs at least 3 vertices");
  auto unit = [](const Vec3& v) {
    const double n = norm(v);
    return n > 0.0 ? (1.0 / n) * v : Vec3{0, 0, 0};
  };
  auto clamp_asin = [](double x) { return std::asin(std::clamp(x, -1.0, 1.0)); };
  double total = 0.0;
  double min_d = std::numeric_limits<double>::infinity();
  const std::size_t n1 = c1.size(), n2 = c2.size();
  for (std::size_t i = 0; i < n1; ++i) {
    const Vec3& p1 = c1[i];
    const Vec3& p2 = c1[(i + 1) % n1];
    for (std::size_t j = 0; j < n2; ++j) {
      const Vec3& p3 = c2[j];
      const Vec3& p4 = c2[(j + 1) % n2];
      const Vec3 r13 = p3 - p1, r14 = p4 - p1, r23 = p3 - p2, r24 = p4 - p2;
      min_d = std::min(min_d, norm(r13));
      const Vec3 a = unit(cross(r13, r14)), b = unit(cross(r14, r24)), c = unit(cross(r24, r23)),
                 d = unit(cross(r23, r13));
      const double omega = clamp_asin(dot(a, b)) + clamp_asin(dot(b, c)) + clamp_asin(dot(c, d)) + clamp_asin(dot(d, a));
      const double orient = dot(cross(p4 - p3, p2 - p1), r13);
      if (orient > 0) total += omega;
      else if (orient < 0) total -= omega;
    }
  }
  LinkingResult r;
  r.raw = total / (4.0 * pi);
  r.linking_number = static_cast<int>(std::lround(r.raw));
  r.min_distance = min_d;
  r.warning = min_d < close_threshold;
  return r;
}

inline std::vector<Vec3> polyline(const FieldLine& line) {
  std::vector<Vec3> out;
  out.reserve(line.points.size());
  for (const auto& p : line.points) out.push_back(p.r);
  // The closure point duplicates the start; drop it so the implicit closing
  // segment is not degenerate.
  if (out.size() > 1 && norm(out.back() - out.front()) < 1e-9) out.pop_back();
  return out;
}

inline LinkingResult linking_number(const FieldLine& a, const FieldLine& b, double close_threshold = 1e-3) {
  if (!a.closed || !b.closed) throw DomainError("linking_number: both lines must be closed");
  return linking_number(polyline(a), polyline(b), close_threshold);
}

}  // namespace hopfion
