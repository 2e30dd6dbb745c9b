#pragma once

#include <vector>

#include "sphero/kinematics.hpp"

namespace sphero {

/// Axis-aligned rectangle [0, alpha] x [0, beta] in the (phi1, phi2) plane,
/// traversed counterclockwise from the origin.
struct RectLoopXY {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Rectangle with vertices (0,0), (a/2, a/2), ((a+b)/2, (a-b)/2), (b/2, -b/2),
/// visited in that order. It is axis-aligned in the sum/difference coordinates
/// (phi1 + phi2, phi1 - phi2), where the rotational reconstruction can be
/// solved edge by edge.
struct RectLoopDiag {
  double alpha = 0.0;
  double beta = 0.0;
};

struct ControlSegment {
  double duration = 0.0;
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Constant wheel rates held over consecutive intervals.
struct PiecewiseControl {
  std::vector<ControlSegment> segments;

  double total_duration() const;
  /// Wheel angles reached at time t (starting from phi = 0), exact.
  ShapeState shape_at(double t) const;
  /// Same loop driven backwards.
  PiecewiseControl reversed() const;
  /// Same loop driven `factor` times faster.
  PiecewiseControl sped_up(double factor) const;
  PiecewiseControl then(const PiecewiseControl& next) const;
};

struct Holonomy {
  Vec2 dx = Vec2::Zero();
  Rotation R;
};

/// Area rule for the axis-aligned loop: minus the integral of the R^2
/// curvature over the enclosed rectangle, evaluated in closed form.
Vec2 translational_holonomy_rect(const RobotParams& p, const RectLoopXY& loop);

/// Area rule for the diagonal loop: (r rho / 2h) alpha (sin c beta, 1 - cos c beta).
Vec2 translational_holonomy_diag(const RobotParams& p, const RectLoopDiag& loop);

/// Unit-speed edges (1,0), (0,1), (-1,0), (0,-1) for alpha, beta, alpha, beta.
PiecewiseControl rect_xy_control(const RectLoopXY& loop);

/// Rates (1/2, 1/2), (1/2, -1/2), (-1/2, -1/2), (-1/2, 1/2) for alpha, beta,
/// alpha, beta.
PiecewiseControl rect_loop_control(const RectLoopDiag& loop);

/// Net (x, R) change along a control loop by RK4 reconstruction, starting
/// from R = I, x = 0, phi = 0. Each segment is integrated separately so the
/// rate switches fall on step boundaries.
Holonomy holonomy_numeric(const RobotParams& p, const PiecewiseControl& u, double dt);

inline Vec2 translational_holonomy_numeric(const RobotParams& p, const PiecewiseControl& u,
                                           double dt) {
  return holonomy_numeric(p, u, dt).dx;
}

/// Product of the four edge exponentials, later edges multiplying on the left.
Rotation rotational_holonomy_rect(const RobotParams& p, const RectLoopDiag& loop);

/// beta = 2 pi / c, the diagonal-loop width for which the translational part
/// of the holonomy cancels. Throws DegenerateParams if c is not positive.
double pure_rotation_beta(const RobotParams& p);

}  // namespace sphero
