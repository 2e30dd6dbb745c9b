#pragma once

#include <Eigen/Dense>

namespace sphero {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

inline constexpr double kOrthTol = 1e-9;

/// Element of so(3) in matrix form. Only `hat` can build one, so the stored
/// matrix is always exactly antisymmetric.
class SkewMatrix {
 public:
  SkewMatrix() : m_(Mat3::Zero()) {}

  const Mat3& matrix() const { return m_; }
  Vec3 operator*(const Vec3& w) const { return m_ * w; }
  Mat3 operator*(const Mat3& a) const { return m_ * a; }

 private:
  explicit SkewMatrix(const Mat3& m) : m_(m) {}
  friend SkewMatrix hat(const Vec3& v);

  Mat3 m_;
};

/// Element of SO(3) stored as a full 3x3 matrix.
///
/// The default constructor gives the identity. `from_matrix` checks
/// R^T R = I and det R = +1 to `tol` and throws NotOrthogonal otherwise.
class Rotation {
 public:
  Rotation() : m_(Mat3::Identity()) {}

  static Rotation identity() { return Rotation(); }
  static Rotation from_matrix(const Mat3& m, double tol = kOrthTol);

  const Mat3& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  Rotation operator*(const Rotation& other) const {
    return Rotation(m_ * other.m_, Unchecked{});
  }
  Vec3 operator*(const Vec3& v) const { return m_ * v; }
  Rotation inverse() const { return Rotation(m_.transpose(), Unchecked{}); }

  /// max |R^T R - I| entry.
  double orthogonality_error() const;

 private:
  struct Unchecked {};
  Rotation(const Mat3& m, Unchecked) : m_(m) {}

  friend Rotation rot_exp(const Vec3& v);
  friend Rotation project_rotation(const Mat3& m);

  Mat3 m_;
};

/// hat(v) w = v x w.
SkewMatrix hat(const Vec3& v);

/// Inverse of `hat`. Throws NotSkew if |M + M^T| > 1e-9; otherwise reads the
/// antisymmetric part.
Vec3 unhat(const Mat3& m);
inline Vec3 unhat(const SkewMatrix& m) { return {m.matrix()(2, 1), m.matrix()(0, 2), m.matrix()(1, 0)}; }

/// exp(hat(v)) by the Rodrigues formula.
Rotation rot_exp(const Vec3& v);

/// Axis-angle vector v with rot_exp(v) = R and |v| in [0, pi].
Vec3 rot_log(const Rotation& r);

/// Orthogonal polar factor of `m`, by iterating M <- (M + M^-T) / 2.
/// Throws Degenerate when det m <= 0.
Rotation project_rotation(const Mat3& m);

}  // namespace sphero
