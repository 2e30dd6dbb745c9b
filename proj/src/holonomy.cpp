#include "sphero/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphero/errors.hpp"

namespace sphero {

double PiecewiseControl::total_duration() const {
  double total = 0.0;
  for (const auto& s : segments) {
    total += s.duration;
  }
  return total;
}

ShapeState PiecewiseControl::shape_at(double t) const {
  ShapeState s;
  double elapsed = 0.0;
  for (const auto& seg : segments) {
    const double span = std::clamp(t - elapsed, 0.0, seg.duration);
    s.phi1 += seg.u1 * span;
    s.phi2 += seg.u2 * span;
    elapsed += seg.duration;
    if (t <= elapsed) {
      break;
    }
  }
  return s;
}

PiecewiseControl PiecewiseControl::reversed() const {
  PiecewiseControl out;
  out.segments.assign(segments.rbegin(), segments.rend());
  for (auto& s : out.segments) {
    s.u1 = -s.u1;
    s.u2 = -s.u2;
  }
  return out;
}

PiecewiseControl PiecewiseControl::sped_up(double factor) const {
  PiecewiseControl out = *this;
  for (auto& s : out.segments) {
    s.duration /= factor;
    s.u1 *= factor;
    s.u2 *= factor;
  }
  return out;
}

PiecewiseControl PiecewiseControl::then(const PiecewiseControl& next) const {
  PiecewiseControl out = *this;
  out.segments.insert(out.segments.end(), next.segments.begin(), next.segments.end());
  return out;
}

Vec2 translational_holonomy_rect(const RobotParams& p, const RectLoopXY& loop) {
  // -(c r rho / h) * integral of exp(i c (phi1 - phi2)) over the rectangle
  //   = (r rho / (c h)) * (cos ca + cos cb - cos c(a-b) - 1,
  //                        sin ca - sin cb - sin c(a-b))
  const double c = p.c();
  if (c == 0.0) {
    return Vec2::Zero();  // the R^2 curvature is proportional to c
  }
  const double ca = c * loop.alpha;
  const double cb = c * loop.beta;
  const double scale = p.r * p.rho / (c * p.h);
  return scale * Vec2(std::cos(ca) + std::cos(cb) - std::cos(ca - cb) - 1.0,
                      std::sin(ca) - std::sin(cb) - std::sin(ca - cb));
}

Vec2 translational_holonomy_diag(const RobotParams& p, const RectLoopDiag& loop) {
  // Only the two edges along phi1 + phi2 move the center; the heading is 0 on
  // the first and c beta on the third.
  const double cb = p.c() * loop.beta;
  const double scale = p.r * p.rho / (2.0 * p.h) * loop.alpha;
  return scale * Vec2(std::sin(cb), 1.0 - std::cos(cb));
}

PiecewiseControl rect_xy_control(const RectLoopXY& loop) {
  return {{{loop.alpha, 1.0, 0.0},
           {loop.beta, 0.0, 1.0},
           {loop.alpha, -1.0, 0.0},
           {loop.beta, 0.0, -1.0}}};
}

PiecewiseControl rect_loop_control(const RectLoopDiag& loop) {
  return {{{loop.alpha, 0.5, 0.5},
           {loop.beta, 0.5, -0.5},
           {loop.alpha, -0.5, -0.5},
           {loop.beta, -0.5, 0.5}}};
}

Holonomy holonomy_numeric(const RobotParams& p, const PiecewiseControl& u, double dt) {
  Configuration q;
  for (const auto& seg : u.segments) {
    q = propagate(p, q, Control(seg.u1, seg.u2), seg.duration, dt);
  }
  return {q.pose.x, q.pose.R};
}

Rotation rotational_holonomy_rect(const RobotParams& p, const RectLoopDiag& loop) {
  const double roll = p.rho / (2.0 * p.h);
  const double spin = p.c() * p.j_ratio;
  const double cb = p.c() * loop.beta;
  const Rotation e1 = rot_exp(-loop.alpha * roll * Vec3::UnitX());
  const Rotation e2 = rot_exp(-loop.beta * spin * Vec3::UnitZ());
  const Rotation e3 = rot_exp(loop.alpha * roll * Vec3(std::cos(cb), std::sin(cb), 0.0));
  const Rotation e4 = rot_exp(loop.beta * spin * Vec3::UnitZ());
  return e4 * e3 * e2 * e1;
}

double pure_rotation_beta(const RobotParams& p) {
  const double c = p.c();
  if (!(std::isfinite(c) && c > 0.0)) {
    throw DegenerateParams("pure-rotation loop needs c > 0");
  }
  return 2.0 * std::numbers::pi / c;
}

}  // namespace sphero
