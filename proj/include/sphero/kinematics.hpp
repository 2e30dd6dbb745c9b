#pragma once

#include <functional>
#include <vector>

#include "sphero/geometry.hpp"

namespace sphero {

/// Physical constants of the robot.
///
///   r        sphere radius
///   rho      wheel radius
///   h        distance from the sphere center to the plane of wheel contacts
///   w        half the track width
///   j_ratio  J / I_s, inertia of the drive unit about the vertical axis over
///            that of the shell; 0 models a rough floor
///
/// The aggregate accepts any values so degenerate cases can be probed;
/// `validate` enforces r, rho, h, w > 0 and j_ratio >= 0.
struct RobotParams {
  double r = 1.0;
  double rho = 0.3;
  double h = 0.75;
  double w = 0.8;
  double j_ratio = 5.0;

  /// Coupling between the wheel-angle difference and the heading of the
  /// drive unit, psi = c (phi1 - phi2).
  double c() const { return rho / (2.0 * w * (1.0 + j_ratio)); }

  /// Throws ValidationError naming the first offending key.
  void validate() const;
};

/// Wheel angles on the covering space R x R (not wrapped).
struct ShapeState {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Group element (R, x) in SO(3) x R^2.
struct Pose {
  Rotation R;
  Vec2 x = Vec2::Zero();
};

struct Configuration {
  ShapeState shape;
  Pose pose;
};

struct WheelRates {
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Wheel-rate input, either constant or an arbitrary function of time.
/// Discontinuities of a time-varying law must fall on integrator steps.
class Control {
 public:
  Control() = default;
  Control(double u1, double u2) : constant_{u1, u2} {}
  explicit Control(WheelRates rates) : constant_(rates) {}
  explicit Control(std::function<WheelRates(double)> law) : law_(std::move(law)) {}

  WheelRates at(double t) const { return law_ ? law_(t) : constant_; }

 private:
  WheelRates constant_;
  std::function<WheelRates(double)> law_;
};

struct TrajectorySample {
  double t = 0.0;
  ShapeState shape;
  Pose pose;
};

/// Time-ordered samples. `append` rejects non-increasing times.
class Trajectory {
 public:
  void append(const TrajectorySample& s);
  const std::vector<TrajectorySample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const TrajectorySample& front() const { return samples_.front(); }
  const TrajectorySample& back() const { return samples_.back(); }
  const TrajectorySample& operator[](std::size_t i) const { return samples_[i]; }
  void reserve(std::size_t n) { samples_.reserve(n); }

 private:
  std::vector<TrajectorySample> samples_;
};

/// psi = c (phi1 - phi2), with psi(0) = phi(0) = 0.
double psi(const RobotParams& p, const ShapeState& s);

/// Spatial angular velocity omega (R' = hat(omega) R) of the shell.
Vec3 spatial_angular_velocity(const RobotParams& p, const ShapeState& s, WheelRates u);

/// Velocity of the sphere center; equals r (omega2, -omega1) (no slip).
Vec2 center_velocity(const RobotParams& p, const ShapeState& s, WheelRates u);

struct StateTangent {
  double phi1_dot = 0.0;
  double phi2_dot = 0.0;
  Mat3 R_dot = Mat3::Zero();
  Vec2 x_dot = Vec2::Zero();
};

/// Admissible velocity at (phi, R) producing wheel rates u.
StateTangent horizontal_lift(const RobotParams& p, const ShapeState& s, const Rotation& R,
                             WheelRates u);

/// Fixed-step RK4 on (phi, R, x), R treated as nine numbers and projected back
/// onto SO(3) after every step. The final step is shortened to land on T.
/// Throws InvalidStep for dt <= 0 and std::invalid_argument for T < 0.
Trajectory integrate(const RobotParams& p, const Configuration& q0, const Control& u,
                     double T, double dt);

/// Same stepping as `integrate` but keeps only the final configuration.
/// `t0` offsets the time handed to the control law.
Configuration propagate(const RobotParams& p, const Configuration& q0, const Control& u,
                        double T, double dt, double t0 = 0.0);

}  // namespace sphero
