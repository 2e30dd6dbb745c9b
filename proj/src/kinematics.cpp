#include "sphero/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sphero/errors.hpp"
#include "sphero/numerics.hpp"

namespace sphero {

void RobotParams::validate() const {
  const auto positive = [](double v, const char* key) {
    if (!(std::isfinite(v) && v > 0.0)) {
      throw ValidationError(std::string(key) + " must be a positive number", key);
    }
  };
  positive(r, "r");
  positive(rho, "rho");
  positive(h, "h");
  positive(w, "w");
  if (!(std::isfinite(j_ratio) && j_ratio >= 0.0)) {
    throw ValidationError("j_ratio must be non-negative", "j_ratio");
  }
}

void Trajectory::append(const TrajectorySample& s) {
  if (!samples_.empty() && !(s.t > samples_.back().t)) {
    throw std::invalid_argument("trajectory times must be strictly increasing");
  }
  samples_.push_back(s);
}

double psi(const RobotParams& p, const ShapeState& s) { return p.c() * (s.phi1 - s.phi2); }

Vec3 spatial_angular_velocity(const RobotParams& p, const ShapeState& s, WheelRates u) {
  const double heading = psi(p, s);
  const double roll = -p.rho / (2.0 * p.h) * (u.u1 + u.u2);
  return {roll * std::cos(heading), roll * std::sin(heading),
          -p.c() * p.j_ratio * (u.u1 - u.u2)};
}

Vec2 center_velocity(const RobotParams& p, const ShapeState& s, WheelRates u) {
  const double heading = psi(p, s);
  const double speed = p.r * p.rho / (2.0 * p.h) * (u.u1 + u.u2);
  return {-speed * std::sin(heading), speed * std::cos(heading)};
}

StateTangent horizontal_lift(const RobotParams& p, const ShapeState& s, const Rotation& R,
                             WheelRates u) {
  StateTangent v;
  v.phi1_dot = u.u1;
  v.phi2_dot = u.u2;
  v.R_dot = hat(spatial_angular_velocity(p, s, u)) * R.matrix();
  v.x_dot = center_velocity(p, s, u);
  return v;
}

namespace {

// (phi1, phi2, R row-major, x1, x2)
using State = Eigen::Matrix<double, 13, 1>;

State pack(const ShapeState& s, const Mat3& R, const Vec2& x) {
  State y;
  y(0) = s.phi1;
  y(1) = s.phi2;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      y(2 + 3 * i + j) = R(i, j);
    }
  }
  y(11) = x.x();
  y(12) = x.y();
  return y;
}

Mat3 rotation_block(const State& y) {
  Mat3 R;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      R(i, j) = y(2 + 3 * i + j);
    }
  }
  return R;
}

State rhs(const RobotParams& p, const State& y, WheelRates u) {
  const ShapeState s{y(0), y(1)};
  const Mat3 R_dot = hat(spatial_angular_velocity(p, s, u)) * rotation_block(y);
  return pack({u.u1, u.u2}, R_dot, center_velocity(p, s, u));
}

State rk4_step(const RobotParams& p, const Control& u, double t, double h, const State& y) {
  const WheelRates u0 = u.at(t);
  const WheelRates um = u.at(t + 0.5 * h);
  const WheelRates u1 = u.at(t + h);
  const State k1 = rhs(p, y, u0);
  const State k2 = rhs(p, y + 0.5 * h * k1, um);
  const State k3 = rhs(p, y + 0.5 * h * k2, um);
  const State k4 = rhs(p, y + h * k3, u1);
  const State next = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  const Mat3 R = project_rotation(rotation_block(next)).matrix();
  return pack({next(0), next(1)}, R, {next(11), next(12)});
}

Configuration unpack(const State& y) {
  Configuration q;
  q.shape = {y(0), y(1)};
  q.pose.R = project_rotation(rotation_block(y));
  q.pose.x = {y(11), y(12)};
  return q;
}

void check_step(double T, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InvalidStep("integration step must be positive");
  }
  if (!(T >= 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("integration horizon must be non-negative");
  }
}

}  // namespace

Trajectory integrate(const RobotParams& p, const Configuration& q0, const Control& u,
                     double T, double dt) {
  check_step(T, dt);
  Trajectory traj;
  traj.reserve(numerics::step_count(T, dt) + 1);
  State y = pack(q0.shape, q0.pose.R.matrix(), q0.pose.x);
  traj.append({0.0, q0.shape, q0.pose});
  numerics::march(T, dt, [&](double t, double h) {
    y = rk4_step(p, u, t, h, y);
    const Configuration q = unpack(y);
    traj.append({t + h, q.shape, q.pose});
  });
  return traj;
}

Configuration propagate(const RobotParams& p, const Configuration& q0, const Control& u,
                        double T, double dt, double t0) {
  check_step(T, dt);
  State y = pack(q0.shape, q0.pose.R.matrix(), q0.pose.x);
  numerics::march(T, dt, [&](double t, double h) { y = rk4_step(p, u, t0 + t, h, y); });
  return unpack(y);
}

}  // namespace sphero
