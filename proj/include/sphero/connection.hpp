#pragma once

#include <array>
#include <cstddef>

#include "sphero/kinematics.hpp"

namespace sphero {

/// Local (trivialized) connection one-form A_i(phi), i = 1, 2, with the so(3)
/// parts in vector (un-hatted) form. The R^2 part is the same for both wheels.
struct ConnectionLocal {
  Vec3 so3_1;
  Vec3 so3_2;
  Vec2 r2_1;
  Vec2 r2_2;
};

/// Local curvature B(phi) of the connection, coefficient of dphi1 ^ dphi2.
struct CurvatureLocal {
  Vec3 so3;
  Vec2 r2;
};

ConnectionLocal connection_at(const RobotParams& p, const ShapeState& s);

/// Closed form of dA + [A, A] with the so(3) bracket realized as a cross
/// product.
CurvatureLocal curvature_at(const RobotParams& p, const ShapeState& s);

/// Applies the local connection to a tangent vector at (phi, R). Zero exactly
/// on the horizontal distribution.
struct ConnectionValue {
  Vec3 so3;
  Vec2 r2;
};
ConnectionValue apply_connection(const RobotParams& p, const ShapeState& s, const Rotation& R,
                                 const StateTangent& v);

inline constexpr double kRankTol = 1e-10;

/// Span test behind fiber controllability. The so(3) block (3x3) and the R^2
/// block (2x3) of [A_1 | A_2 | B] are checked separately; singular values
/// below kRankTol times the block's largest count as zero.
struct ControllabilityReport {
  bool controllable = false;
  std::array<double, 3> so3_singular{};
  std::array<double, 2> r2_singular{};
  std::array<double, 3> full_singular{};  // of the stacked 5x3 matrix

  /// Smallest singular value that the span test depends on.
  double min_relevant_singular() const;
};

ControllabilityReport fiber_controllability_certificate(const RobotParams& p,
                                                        const ShapeState& s);

/// Certificate evaluated on an n x n grid over [0, 2 pi / c)^2.
struct GridCertificate {
  std::size_t points = 0;
  std::size_t controllable_points = 0;
  double min_so3_singular = 0.0;
  double min_r2_singular = 0.0;

  bool all_controllable() const { return points > 0 && controllable_points == points; }
};

/// OpenMP kernel. Reductions are order-independent, so the result matches
/// `certify_grid_serial` exactly.
GridCertificate certify_grid(const RobotParams& p, std::size_t n);
GridCertificate certify_grid_serial(const RobotParams& p, std::size_t n);

}  // namespace sphero
