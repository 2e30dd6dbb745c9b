#pragma once

#include <cmath>
#include <vector>

#include "sphero/optimal_control.hpp"

namespace sphero {

/// Which number is handed to F and sn as their parameter.
///
/// kParameter uses 2A / (E + A), the squared modulus that makes
/// theta -> vartheta an exact pendulum solution. kModulus passes its square
/// root, the modulus. Only kParameter agrees with direct integration of Hamilton's
/// equations; the other is kept so the difference can be measured.
enum class EllipticConvention { kParameter, kModulus };

/// Constants of the pendulum reduction of an extremal.
struct ReducedConstants {
  double H = 0.0;       // Hamiltonian value
  double sigma1 = 0.0;  // (gamma1 + gamma2) / 2
  double a = 0.0;       // (r rho / h) |p|
  double E = 0.0;       // (c^2 / 2)(a^2 + 4 (H - sigma1^2))
  double A = 0.0;       // 2 c^2 a sqrt(H)

  /// vartheta'^2 = 2 (E + A cos vartheta) never reaches zero.
  bool circulating() const { return A < E; }
  /// a - 2 (sqrt(H) - sigma1); the change of variable needs it positive.
  double positivity_margin() const;
  double elliptic_parameter(EllipticConvention conv = EllipticConvention::kParameter) const;
};

ReducedConstants reduce(const RobotParams& prm, const PMPState& z);

struct ExactPoint {
  double theta = 0.0;          // direction of the shape velocity
  double phi_diff = 0.0;       // phi1 - phi2
  double vartheta = 0.0;       // pendulum angle
  double vartheta_rate = 0.0;  // d vartheta / dt
};

/// Closed-form extremal through the pendulum reduction:
///
///   vartheta(t) = 2 am(m, F(m, vartheta0 / 2) +- sqrt((E + A) / 2) t),
///   tan(theta / 2) = sqrt((a - 2(sqrt H - sigma1)) / (a + 2(sqrt H + sigma1)))
///                    tan(vartheta / 2),
///   2 (sqrt(H) cos theta - sigma1) = -a sin(c (phi1 - phi2) - delta).
///
/// The amplitude is used instead of arcsin(sn) so vartheta and theta stay
/// continuous across +-pi. The sign is that of theta'(0), which cannot change
/// when A < E. With p = 0 the extremal is a straight line in shape space and
/// no reduction is needed.
class ExactExtremal {
 public:
  /// Throws BranchError if A >= E and ConditionError if the positivity
  /// margin is not positive (both only when p != 0).
  static ExactExtremal from_state(const RobotParams& prm, const PMPState& z0,
                                  EllipticConvention conv = EllipticConvention::kParameter);

  ExactPoint at(double t) const;

  const ReducedConstants& constants() const { return k_; }
  double delta() const { return delta_; }
  int sign() const { return sign_; }
  double speed() const { return 2.0 * std::sqrt(k_.H); }  // |phi'|
  const RobotParams& params() const { return prm_; }

 private:
  ExactExtremal() = default;

  RobotParams prm_;
  ReducedConstants k_;
  EllipticConvention conv_ = EllipticConvention::kParameter;
  bool straight_ = false;
  double delta_ = 0.0;
  double theta0_ = 0.0;
  double phi_diff0_ = 0.0;
  int sign_ = 1;
  double m_ = 0.0;
  double u0_ = 0.0;
  double omega_ = 0.0;
  double branch_turns_ = 0.0;  // 2 pi multiple fixing c phi_diff - delta
};

/// theta(t) and phi1 - phi2 at time t from the reduced constants alone. The
/// difference angle is returned on its principal branch (c (phi1 - phi2) -
/// delta within pi/2 of 0 for sign = +1, of pi for sign = -1).
ExactPoint exact_solution(const RobotParams& prm, const ReducedConstants& k, double delta,
                          double theta0, int sign, double t,
                          EllipticConvention conv = EllipticConvention::kParameter);

struct ShapePathSample {
  double t = 0.0;
  ShapeState shape;
  Vec2 x = Vec2::Zero();
};

/// Wheel angles and center position along the closed-form extremal:
/// phi1 + phi2 and phi1 - phi2 by Simpson quadrature of 2 sqrt(H) (cos, sin)
/// theta, and x by quadrature of the center velocity, on t_k = k dt.
std::vector<ShapePathSample> reconstruct_by_quadrature(const ExactExtremal& ex,
                                                       const ShapeState& phi0, const Vec2& x0,
                                                       double T, double dt);

}  // namespace sphero
