#pragma once

#include <vector>

#include "sphero/kinematics.hpp"

namespace sphero {

/// Costate of the minimum-energy problem: gamma conjugate to the wheel angles,
/// p conjugate to the center position. p is conserved along extremals.
struct Costate {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  Vec2 p = Vec2::Zero();

  double p_norm() const { return p.norm(); }
  /// Polar angle of p in (-pi, pi]; 0 when p = 0.
  double p_angle() const;
};

/// Point of T*(S x R^2): (phi, x; gamma, p).
struct PMPState {
  double phi1 = 0.0;
  double phi2 = 0.0;
  Vec2 x = Vec2::Zero();
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  Vec2 p = Vec2::Zero();

  ShapeState shape() const { return {phi1, phi2}; }
  Costate costate() const { return {gamma1, gamma2, p}; }

  PMPState& operator+=(const PMPState& o);
  friend PMPState operator+(PMPState a, const PMPState& b) { return a += b; }
  friend PMPState operator*(double s, PMPState a);
};

/// Maximizer of the control Hamiltonian:
/// u_i = gamma_i - (r rho / 2h) (p1 sin(c dphi) - p2 cos(c dphi)).
WheelRates optimal_control_law(const RobotParams& prm, const ShapeState& s, const Costate& k);

/// H = 1/2 sum_i (gamma_i - p . A_i(phi))^2 = 1/2 |u*|^2.
double hamiltonian(const RobotParams& prm, const PMPState& z);

/// Hamilton's equations (dH/dp, -dH/dq) in PMPState layout.
PMPState pmp_rhs(const RobotParams& prm, const PMPState& z);

/// H, gamma1 + gamma2, p1, p2: pairwise in involution.
struct FirstIntegrals {
  double H = 0.0;
  double gamma_sum = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
};
FirstIntegrals first_integrals(const RobotParams& prm, const PMPState& z);

/// Direction of the shape velocity: u1 + u2 = 2 sqrt(H) cos(theta),
/// u1 - u2 = 2 sqrt(H) sin(theta). Returned in (-pi, pi].
double heading_angle(const RobotParams& prm, const PMPState& z);

struct PMPSample {
  double t = 0.0;
  PMPState state;
  Rotation R;  // shell attitude, reconstructed alongside (not part of the OCP)
};

struct PMPRun {
  std::vector<PMPSample> samples;
  /// Largest |F_k(t) - F_k(0)| seen along the run, per integral.
  FirstIntegrals drift;
};

/// Fixed-step RK4 on Hamilton's equations from z0 over [0, T], with the
/// attitude R(0) = I integrated alongside and projected each step.
/// Throws InvalidStep for dt <= 0.
PMPRun integrate_pmp(const RobotParams& prm, const PMPState& z0, double T, double dt);

/// Final state of the same RK4 scheme, without storage or attitude.
PMPState propagate_pmp(const RobotParams& prm, const PMPState& z0, double T, double dt);

/// theta along a run, unwrapped to be continuous.
std::vector<double> heading_history(const RobotParams& prm, const PMPRun& run);

/// Integral of |u|^2 / 2 over the run by composite Simpson on the (possibly
/// non-uniform) sample grid; an odd trailing interval uses the three-point
/// rule over the last two intervals.
double control_cost(const RobotParams& prm, const PMPRun& run);

}  // namespace sphero
