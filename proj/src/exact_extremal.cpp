#include "sphero/exact_extremal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sphero/elliptic.hpp"
#include "sphero/errors.hpp"
#include "sphero/numerics.hpp"

namespace sphero {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// tan(out/2) = ratio * tan(in/2), continued through +-pi so that multiples of
// 2 pi map to themselves. `ratio` must be positive.
double half_angle_map(double in, double num, double den) {
  const double turns = std::round(in / kTwoPi);
  const double reduced = in - turns * kTwoPi;  // [-pi, pi]
  const double out = 2.0 * std::atan2(std::sqrt(num) * std::sin(0.5 * reduced),
                                      std::sqrt(den) * std::cos(0.5 * reduced));
  return out + turns * kTwoPi;
}

// c (phi1 - phi2) - delta from the sine relation, on the half circle picked
// by the sign of its cosine.
double difference_angle(const ReducedConstants& k, double theta, int sign) {
  const double s = std::clamp(-2.0 * (std::sqrt(k.H) * std::cos(theta) - k.sigma1) / k.a, -1.0, 1.0);
  const double base = std::asin(s);
  return sign > 0 ? base : kPi - base;
}

}  // namespace

double ReducedConstants::positivity_margin() const { return a - 2.0 * (std::sqrt(H) - sigma1); }

double ReducedConstants::elliptic_parameter(EllipticConvention conv) const {
  const double squared = 2.0 * A / (E + A);
  return conv == EllipticConvention::kParameter ? squared : std::sqrt(squared);
}

ReducedConstants reduce(const RobotParams& prm, const PMPState& z) {
  const double c = prm.c();
  ReducedConstants k;
  k.H = hamiltonian(prm, z);
  k.sigma1 = 0.5 * (z.gamma1 + z.gamma2);
  k.a = prm.r * prm.rho / prm.h * z.p.norm();
  k.E = 0.5 * c * c * (k.a * k.a + 4.0 * (k.H - k.sigma1 * k.sigma1));
  k.A = 2.0 * c * c * k.a * std::sqrt(k.H);
  return k;
}

ExactExtremal ExactExtremal::from_state(const RobotParams& prm, const PMPState& z0,
                                        EllipticConvention conv) {
  ExactExtremal ex;
  ex.prm_ = prm;
  ex.k_ = reduce(prm, z0);
  ex.conv_ = conv;
  ex.delta_ = z0.costate().p_angle();
  ex.theta0_ = heading_angle(prm, z0);
  ex.phi_diff0_ = z0.phi1 - z0.phi2;

  if (z0.p.norm() == 0.0 || ex.k_.H == 0.0) {
    ex.straight_ = true;
    return ex;
  }
  if (!ex.k_.circulating()) {
    throw BranchError("closed form needs A < E (A = " + std::to_string(ex.k_.A) +
                      ", E = " + std::to_string(ex.k_.E) + ")");
  }
  if (!(ex.k_.positivity_margin() > 0.0)) {
    throw ConditionError("closed form needs a - 2(sqrt(H) - sigma1) > 0 (got " +
                         std::to_string(ex.k_.positivity_margin()) + ")");
  }

  const double c = prm.c();
  const double angle0 = c * ex.phi_diff0_ - ex.delta_;
  ex.sign_ = std::cos(angle0) >= 0.0 ? 1 : -1;
  ex.m_ = ex.k_.elliptic_parameter(conv);
  ex.omega_ = std::sqrt(0.5 * (ex.k_.E + ex.k_.A));

  const double sqrt_h = std::sqrt(ex.k_.H);
  const double vartheta0 = half_angle_map(ex.theta0_, ex.k_.a + 2.0 * (sqrt_h + ex.k_.sigma1),
                                          ex.k_.positivity_margin());
  ex.u0_ = elliptic_F(ex.m_, 0.5 * vartheta0);
  ex.branch_turns_ = std::round((angle0 - difference_angle(ex.k_, ex.theta0_, ex.sign_)) / kTwoPi);
  return ex;
}

ExactPoint ExactExtremal::at(double t) const {
  ExactPoint pt;
  if (straight_) {
    pt.theta = theta0_;
    pt.vartheta = theta0_;
    pt.phi_diff = phi_diff0_ + 2.0 * std::sqrt(k_.H) * std::sin(theta0_) * t;
    return pt;
  }
  const double arg = u0_ + sign_ * omega_ * t;
  pt.vartheta = 2.0 * jacobi_am(m_, arg);
  pt.vartheta_rate = 2.0 * sign_ * omega_ * jacobi_dn(m_, arg);
  const double sqrt_h = std::sqrt(k_.H);
  pt.theta = half_angle_map(pt.vartheta, k_.positivity_margin(), k_.a + 2.0 * (sqrt_h + k_.sigma1));
  const double angle = difference_angle(k_, pt.theta, sign_) + branch_turns_ * kTwoPi;
  pt.phi_diff = (angle + delta_) / prm_.c();
  return pt;
}

ExactPoint exact_solution(const RobotParams& prm, const ReducedConstants& k, double delta,
                          double theta0, int sign, double t, EllipticConvention conv) {
  if (!k.circulating()) {
    throw BranchError("closed form needs A < E");
  }
  if (!(k.positivity_margin() > 0.0)) {
    throw ConditionError("closed form needs a - 2(sqrt(H) - sigma1) > 0");
  }
  const double sqrt_h = std::sqrt(k.H);
  const double num = k.a + 2.0 * (sqrt_h + k.sigma1);
  const double den = k.positivity_margin();
  const double m = k.elliptic_parameter(conv);
  const double omega = std::sqrt(0.5 * (k.E + k.A));
  const double arg = elliptic_F(m, 0.5 * half_angle_map(theta0, num, den)) + sign * omega * t;
  ExactPoint pt;
  pt.vartheta = 2.0 * jacobi_am(m, arg);
  pt.vartheta_rate = 2.0 * sign * omega * jacobi_dn(m, arg);
  pt.theta = half_angle_map(pt.vartheta, den, num);
  pt.phi_diff = (difference_angle(k, pt.theta, sign) + delta) / prm.c();
  return pt;
}

std::vector<ShapePathSample> reconstruct_by_quadrature(const ExactExtremal& ex,
                                                       const ShapeState& phi0, const Vec2& x0,
                                                       double T, double dt) {
  if (!(dt > 0.0)) {
    throw InvalidStep("quadrature step must be positive");
  }
  const RobotParams& prm = ex.params();
  const double speed = ex.speed();
  const double slide = prm.r * prm.rho / (2.0 * prm.h);
  const double c = prm.c();

  struct Rates {
    double sum;   // d(phi1 + phi2)/dt
    double diff;  // d(phi1 - phi2)/dt
    Vec2 x;
  };
  const auto rates = [&](double t) {
    const ExactPoint pt = ex.at(t);
    const double sum = speed * std::cos(pt.theta);
    const double heading = c * pt.phi_diff;
    return Rates{sum, speed * std::sin(pt.theta),
                 slide * sum * Vec2(-std::sin(heading), std::cos(heading))};
  };

  std::vector<ShapePathSample> out;
  out.reserve(numerics::step_count(T, dt) + 1);
  double sum = phi0.phi1 + phi0.phi2;
  double diff = phi0.phi1 - phi0.phi2;
  Vec2 x = x0;
  out.push_back({0.0, phi0, x0});
  Rates left = rates(0.0);
  numerics::march(T, dt, [&](double t, double h) {
    const Rates mid = rates(t + 0.5 * h);
    const Rates right = rates(t + h);
    sum += h / 6.0 * (left.sum + 4.0 * mid.sum + right.sum);
    diff += h / 6.0 * (left.diff + 4.0 * mid.diff + right.diff);
    x += h / 6.0 * (left.x + 4.0 * mid.x + right.x);
    out.push_back({t + h, {0.5 * (sum + diff), 0.5 * (sum - diff)}, x});
    left = right;
  });
  return out;
}

}  // namespace sphero
