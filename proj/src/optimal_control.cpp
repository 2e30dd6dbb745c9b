#include "sphero/optimal_control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sphero/errors.hpp"
#include "sphero/numerics.hpp"

namespace sphero {

double Costate::p_angle() const {
  if (p.x() == 0.0 && p.y() == 0.0) {
    return 0.0;
  }
  return std::atan2(p.y(), p.x());
}

PMPState& PMPState::operator+=(const PMPState& o) {
  phi1 += o.phi1;
  phi2 += o.phi2;
  x += o.x;
  gamma1 += o.gamma1;
  gamma2 += o.gamma2;
  p += o.p;
  return *this;
}

PMPState operator*(double s, PMPState a) {
  a.phi1 *= s;
  a.phi2 *= s;
  a.x *= s;
  a.gamma1 *= s;
  a.gamma2 *= s;
  a.p *= s;
  return a;
}

WheelRates optimal_control_law(const RobotParams& prm, const ShapeState& s, const Costate& k) {
  const double d = psi(prm, s);
  const double drag = prm.r * prm.rho / (2.0 * prm.h) *
                      (k.p.x() * std::sin(d) - k.p.y() * std::cos(d));
  return {k.gamma1 - drag, k.gamma2 - drag};
}

double hamiltonian(const RobotParams& prm, const PMPState& z) {
  const WheelRates u = optimal_control_law(prm, z.shape(), z.costate());
  return 0.5 * (u.u1 * u.u1 + u.u2 * u.u2);
}

PMPState pmp_rhs(const RobotParams& prm, const PMPState& z) {
  const WheelRates u = optimal_control_law(prm, z.shape(), z.costate());
  const double d = psi(prm, z.shape());
  const double k = prm.r * prm.rho / (2.0 * prm.h);
  const double sum = u.u1 + u.u2;
  const double torque = prm.c() * k * (z.p.x() * std::cos(d) + z.p.y() * std::sin(d)) * sum;
  PMPState dz;
  dz.phi1 = u.u1;
  dz.phi2 = u.u2;
  dz.x = k * sum * Vec2(-std::sin(d), std::cos(d));
  dz.gamma1 = torque;
  dz.gamma2 = -torque;
  dz.p = Vec2::Zero();
  return dz;
}

FirstIntegrals first_integrals(const RobotParams& prm, const PMPState& z) {
  return {hamiltonian(prm, z), z.gamma1 + z.gamma2, z.p.x(), z.p.y()};
}

double heading_angle(const RobotParams& prm, const PMPState& z) {
  const WheelRates u = optimal_control_law(prm, z.shape(), z.costate());
  return std::atan2(u.u1 - u.u2, u.u1 + u.u2);
}

namespace {

PMPState rk4(const RobotParams& prm, const PMPState& z, double h) {
  const PMPState k1 = pmp_rhs(prm, z);
  const PMPState k2 = pmp_rhs(prm, z + (0.5 * h) * k1);
  const PMPState k3 = pmp_rhs(prm, z + (0.5 * h) * k2);
  const PMPState k4 = pmp_rhs(prm, z + h * k3);
  return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Same stages with the attitude carried along: R' = hat(omega(phi, u*)) R.
struct Augmented {
  PMPState z;
  Mat3 R;
};

Augmented rk4_attitude(const RobotParams& prm, const Augmented& y, double h) {
  const auto rhs = [&](const PMPState& z, const Mat3& R) {
    const WheelRates u = optimal_control_law(prm, z.shape(), z.costate());
    return Augmented{pmp_rhs(prm, z), hat(spatial_angular_velocity(prm, z.shape(), u)) * R};
  };
  const Augmented k1 = rhs(y.z, y.R);
  const Augmented k2 = rhs(y.z + (0.5 * h) * k1.z, y.R + 0.5 * h * k1.R);
  const Augmented k3 = rhs(y.z + (0.5 * h) * k2.z, y.R + 0.5 * h * k2.R);
  const Augmented k4 = rhs(y.z + h * k3.z, y.R + h * k3.R);
  Augmented next;
  next.z = y.z + (h / 6.0) * (k1.z + 2.0 * k2.z + 2.0 * k3.z + k4.z);
  next.R = project_rotation(y.R + (h / 6.0) * (k1.R + 2.0 * k2.R + 2.0 * k3.R + k4.R)).matrix();
  return next;
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

PMPRun integrate_pmp(const RobotParams& prm, const PMPState& z0, double T, double dt) {
  check_step(T, dt);
  PMPRun run;
  const FirstIntegrals f0 = first_integrals(prm, z0);
  Augmented y{z0, Mat3::Identity()};
  run.samples.reserve(numerics::step_count(T, dt) + 1);
  run.samples.push_back({0.0, z0, Rotation()});
  numerics::march(T, dt, [&](double t, double h) {
    y = rk4_attitude(prm, y, h);
    run.samples.push_back({t + h, y.z, Rotation::from_matrix(y.R)});
    const FirstIntegrals f = first_integrals(prm, y.z);
    run.drift.H = std::max(run.drift.H, std::abs(f.H - f0.H));
    run.drift.gamma_sum = std::max(run.drift.gamma_sum, std::abs(f.gamma_sum - f0.gamma_sum));
    run.drift.p1 = std::max(run.drift.p1, std::abs(f.p1 - f0.p1));
    run.drift.p2 = std::max(run.drift.p2, std::abs(f.p2 - f0.p2));
  });
  return run;
}

PMPState propagate_pmp(const RobotParams& prm, const PMPState& z0, double T, double dt) {
  check_step(T, dt);
  PMPState z = z0;
  numerics::march(T, dt, [&](double, double h) { z = rk4(prm, z, h); });
  return z;
}

std::vector<double> heading_history(const RobotParams& prm, const PMPRun& run) {
  std::vector<double> theta;
  theta.reserve(run.samples.size());
  for (const auto& s : run.samples) {
    theta.push_back(heading_angle(prm, s.state));
  }
  numerics::unwrap(theta);
  return theta;
}

double control_cost(const RobotParams& prm, const PMPRun& run) {
  std::vector<double> t;
  std::vector<double> f;
  t.reserve(run.samples.size());
  f.reserve(run.samples.size());
  for (const auto& s : run.samples) {
    t.push_back(s.t);
    f.push_back(hamiltonian(prm, s.state));  // = |u*|^2 / 2
  }
  return numerics::simpson(t, f);
}

}  // namespace sphero
