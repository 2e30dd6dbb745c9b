#include "sphero/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sphero/errors.hpp"

namespace sphero {

Rotation Rotation::from_matrix(const Mat3& m, double tol) {
  const double orth = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
  const double det = m.determinant();
  if (!(orth <= tol) || !(std::abs(det - 1.0) <= tol)) {
    throw NotOrthogonal("matrix is not a rotation (orthogonality error " +
                        std::to_string(orth) + ", det " + std::to_string(det) + ")");
  }
  return Rotation(m, Unchecked{});
}

double Rotation::orthogonality_error() const {
  return (m_.transpose() * m_ - Mat3::Identity()).cwiseAbs().maxCoeff();
}

SkewMatrix hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return SkewMatrix(m);
}

Vec3 unhat(const Mat3& m) {
  if ((m + m.transpose()).norm() > 1e-9) {
    throw NotSkew("matrix is not skew-symmetric");
  }
  const Mat3 a = 0.5 * (m - m.transpose());
  return {a(2, 1), a(0, 2), a(1, 0)};
}

Rotation rot_exp(const Vec3& v) {
  const double theta = v.norm();
  const Mat3 k = hat(v).matrix();
  if (theta < 1e-12) {
    // second-order Taylor of sin(x)/x and (1 - cos x)/x^2
    return Rotation(Mat3::Identity() + k + 0.5 * k * k, Rotation::Unchecked{});
  }
  const double a = std::sin(theta) / theta;
  const double b = (1.0 - std::cos(theta)) / (theta * theta);
  return Rotation(Mat3::Identity() + a * k + b * k * k, Rotation::Unchecked{});
}

Vec3 rot_log(const Rotation& r) {
  const Mat3& m = r.matrix();
  const double cos_angle = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
  const double angle = std::acos(cos_angle);
  const Vec3 axial(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
  if (angle < 1e-7) {
    return 0.5 * axial;
  }
  if (std::numbers::pi - angle > 1e-6) {
    return angle / (2.0 * std::sin(angle)) * axial;
  }
  // Near pi the axial part vanishes; recover the axis from R + I = 2 a a^T.
  const Mat3 s = 0.5 * (m + Mat3::Identity());
  int col = 0;
  s.diagonal().maxCoeff(&col);
  Vec3 axis = s.col(col) / std::sqrt(std::max(s(col, col), 1e-300));
  axis.normalize();
  if (axis.dot(axial) < 0.0) {
    axis = -axis;
  }
  return angle * axis;
}

Rotation project_rotation(const Mat3& m) {
  if (!(m.determinant() > 0.0)) {
    throw Degenerate("cannot project a matrix with non-positive determinant");
  }
  Mat3 x = m;
  for (int iter = 0; iter < 100; ++iter) {
    const Mat3 next = 0.5 * (x + x.inverse().transpose());
    const double change = (next - x).cwiseAbs().maxCoeff();
    x = next;
    if (change < 1e-14) {
      break;
    }
  }
  return Rotation(x, Rotation::Unchecked{});
}

}  // namespace sphero
