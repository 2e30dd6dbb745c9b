#include "sphero/connection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace sphero {

ConnectionLocal connection_at(const RobotParams& p, const ShapeState& s) {
  const double heading = psi(p, s);
  const double roll = p.rho / (2.0 * p.h);
  const double spin = p.c() * p.j_ratio;
  const double slide = p.r * roll;
  ConnectionLocal a;
  a.so3_1 = {roll * std::cos(heading), roll * std::sin(heading), spin};
  a.so3_2 = {roll * std::cos(heading), roll * std::sin(heading), -spin};
  a.r2_1 = {slide * std::sin(heading), -slide * std::cos(heading)};
  a.r2_2 = a.r2_1;
  return a;
}

CurvatureLocal curvature_at(const RobotParams& p, const ShapeState& s) {
  const double heading = psi(p, s);
  const double tilt = p.rho * p.rho / (2.0 * p.h * p.w);
  const double shift = p.c() * p.r * p.rho / p.h;
  CurvatureLocal b;
  b.so3 = {-tilt * std::sin(heading), tilt * std::cos(heading), 0.0};
  b.r2 = {shift * std::cos(heading), shift * std::sin(heading)};
  return b;
}

ConnectionValue apply_connection(const RobotParams& p, const ShapeState& s, const Rotation& R,
                                 const StateTangent& v) {
  const ConnectionLocal a = connection_at(p, s);
  ConnectionValue out;
  // R_dot R^-1 is skew only up to roundoff in R; read its antisymmetric part.
  const Mat3 spatial = v.R_dot * R.matrix().transpose();
  const Mat3 skew = 0.5 * (spatial - spatial.transpose());
  out.so3 = Vec3(skew(2, 1), skew(0, 2), skew(1, 0)) + a.so3_1 * v.phi1_dot + a.so3_2 * v.phi2_dot;
  out.r2 = v.x_dot + a.r2_1 * v.phi1_dot + a.r2_2 * v.phi2_dot;
  return out;
}

double ControllabilityReport::min_relevant_singular() const {
  return std::min(so3_singular[2], r2_singular[1]);
}

namespace {

// Singular values in decreasing order; a block is full rank when its smallest
// relevant value clears kRankTol relative to its largest.
bool full_rank(const Eigen::VectorXd& sv, Eigen::Index rank) {
  if (sv.size() < rank || !(sv(0) > 0.0)) {
    return false;
  }
  return sv(rank - 1) > kRankTol * sv(0);
}

}  // namespace

ControllabilityReport fiber_controllability_certificate(const RobotParams& p,
                                                        const ShapeState& s) {
  const ConnectionLocal a = connection_at(p, s);
  const CurvatureLocal b = curvature_at(p, s);

  Eigen::Matrix<double, 5, 3> g;
  g.col(0) << a.so3_1, a.r2_1;
  g.col(1) << a.so3_2, a.r2_2;
  g.col(2) << b.so3, b.r2;

  const Eigen::Matrix3d so3_block = g.topRows<3>();
  const Eigen::Matrix<double, 2, 3> r2_block = g.bottomRows<2>();
  const Eigen::VectorXd sv_so3 = Eigen::JacobiSVD<Eigen::MatrixXd>(so3_block).singularValues();
  const Eigen::VectorXd sv_r2 = Eigen::JacobiSVD<Eigen::MatrixXd>(r2_block).singularValues();
  const Eigen::VectorXd sv_all = Eigen::JacobiSVD<Eigen::MatrixXd>(g).singularValues();

  ControllabilityReport rep;
  for (int i = 0; i < 3; ++i) {
    rep.so3_singular[i] = sv_so3(i);
    rep.full_singular[i] = sv_all(i);
  }
  rep.r2_singular = {sv_r2(0), sv_r2(1)};
  rep.controllable = full_rank(sv_so3, 3) && full_rank(sv_r2, 2);
  return rep;
}

namespace {

ShapeState grid_point(const RobotParams& p, std::size_t n, std::size_t i, std::size_t j) {
  const double c = p.c();
  const double period = c > 0.0 ? 2.0 * std::numbers::pi / c : 2.0 * std::numbers::pi;
  const double step = period / static_cast<double>(n);
  return {static_cast<double>(i) * step, static_cast<double>(j) * step};
}

}  // namespace

GridCertificate certify_grid_serial(const RobotParams& p, std::size_t n) {
  GridCertificate out;
  out.points = n * n;
  out.min_so3_singular = std::numeric_limits<double>::infinity();
  out.min_r2_singular = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const ControllabilityReport rep = fiber_controllability_certificate(p, grid_point(p, n, i, j));
      out.controllable_points += rep.controllable ? 1 : 0;
      out.min_so3_singular = std::min(out.min_so3_singular, rep.so3_singular[2]);
      out.min_r2_singular = std::min(out.min_r2_singular, rep.r2_singular[1]);
    }
  }
  return out;
}

GridCertificate certify_grid(const RobotParams& p, std::size_t n) {
  const auto total = static_cast<long long>(n * n);
  long long ok = 0;
  double min_so3 = std::numeric_limits<double>::infinity();
  double min_r2 = std::numeric_limits<double>::infinity();
#pragma omp parallel for schedule(static) reduction(+ : ok) reduction(min : min_so3, min_r2)
  for (long long k = 0; k < total; ++k) {
    const auto i = static_cast<std::size_t>(k) / n;
    const auto j = static_cast<std::size_t>(k) % n;
    const ControllabilityReport rep = fiber_controllability_certificate(p, grid_point(p, n, i, j));
    ok += rep.controllable ? 1 : 0;
    min_so3 = std::min(min_so3, rep.so3_singular[2]);
    min_r2 = std::min(min_r2, rep.r2_singular[1]);
  }
  GridCertificate out;
  out.points = n * n;
  out.controllable_points = static_cast<std::size_t>(ok);
  out.min_so3_singular = min_so3;
  out.min_r2_singular = min_r2;
  return out;
}

}  // namespace sphero
