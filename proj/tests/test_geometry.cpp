#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sphero/errors.hpp"
#include "sphero/geometry.hpp"

using namespace sphero;

namespace {

Vec3 random_vec(oracle::Uniform& u, double scale) {
  return {u(-scale, scale), u(-scale, scale), u(-scale, scale)};
}

}  // namespace

TEST(Hat, ActsAsCrossProduct) {
  oracle::Uniform u(1);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = random_vec(u, 3.0);
    const Vec3 b = random_vec(u, 3.0);
    EXPECT_LT((hat(a).matrix() * b - a.cross(b)).norm(), 1e-14);
  }
}

TEST(Hat, UnhatInverts) {
  oracle::Uniform u(2);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a = random_vec(u, 5.0);
    EXPECT_EQ(unhat(hat(a)), a);
    EXPECT_EQ(unhat(hat(a).matrix()), a);
  }
}

TEST(Hat, UnhatRejectsNonSkew) {
  Mat3 m = Mat3::Zero();
  m(0, 1) = 1.0;
  EXPECT_THROW(unhat(m), NotSkew);
}

TEST(RotExp, MatchesSeriesExponential) {
  oracle::Uniform u(3);
  for (int i = 0; i < 200; ++i) {
    const Vec3 v = random_vec(u, 4.0);
    const Mat3 expected = oracle::series_exp(oracle::skew(v));
    EXPECT_LT((rot_exp(v).matrix() - expected).norm(), 1e-12);
  }
}

TEST(RotExp, SmallAnglesStayAccurate) {
  for (double s : {1e-6, 1e-10, 1e-14, 0.0}) {
    const Vec3 v(s, -2.0 * s, 0.5 * s);
    const Mat3 expected = oracle::series_exp(oracle::skew(v));
    EXPECT_LT((rot_exp(v).matrix() - expected).norm(), 1e-15);
  }
}

TEST(RotExp, QuarterTurnAboutZ) {
  const Rotation r = rot_exp(Vec3(0.0, 0.0, std::numbers::pi / 2.0));
  EXPECT_LT((r * Vec3(1.0, 0.0, 0.0) - Vec3(0.0, 1.0, 0.0)).norm(), 1e-15);
}

TEST(RotLog, InvertsExpInsideBall) {
  oracle::Uniform u(4);
  for (int i = 0; i < 200; ++i) {
    Vec3 v = random_vec(u, 1.0);
    v *= u(0.0, std::numbers::pi - 1e-3) / v.norm();
    EXPECT_LT((rot_log(rot_exp(v)) - v).norm(), 1e-10);
  }
}

TEST(RotLog, HalfTurn) {
  const Vec3 axis = Vec3(1.0, 2.0, -2.0).normalized();
  const Vec3 v = std::numbers::pi * axis;
  const Vec3 back = rot_log(rot_exp(v));
  EXPECT_NEAR(back.norm(), std::numbers::pi, 1e-9);
  EXPECT_LT(std::min((back - v).norm(), (back + v).norm()), 1e-7);
}

TEST(Rotation, FromMatrixChecksOrthogonality) {
  Mat3 m = Mat3::Identity();
  m(0, 0) = 1.0 + 1e-6;
  EXPECT_THROW(Rotation::from_matrix(m), NotOrthogonal);
  Mat3 reflect = Mat3::Identity();
  reflect(2, 2) = -1.0;
  EXPECT_THROW(Rotation::from_matrix(reflect), NotOrthogonal);
  EXPECT_NO_THROW(Rotation::from_matrix(rot_exp(Vec3(0.3, 0.1, -0.2)).matrix()));
}

TEST(Rotation, ProductAndInverse) {
  const Rotation a = rot_exp(Vec3(0.3, -1.1, 0.4));
  const Rotation b = rot_exp(Vec3(-0.7, 0.2, 2.0));
  EXPECT_LT(((a * b).matrix() - a.matrix() * b.matrix()).norm(), 1e-15);
  EXPECT_LT(((a * a.inverse()).matrix() - Mat3::Identity()).norm(), 1e-15);
  EXPECT_LT((a * b).orthogonality_error(), 1e-15);
}

TEST(ProjectRotation, RestoresOrthogonality) {
  oracle::Uniform u(5);
  for (int i = 0; i < 50; ++i) {
    const Rotation r = rot_exp(random_vec(u, 2.0));
    Mat3 noisy = r.matrix();
    for (int k = 0; k < 9; ++k) {
      noisy(k / 3, k % 3) += u(-1e-4, 1e-4);
    }
    const Rotation p = project_rotation(noisy);
    EXPECT_LT(p.orthogonality_error(), 1e-14);
    EXPECT_NEAR(p.matrix().determinant(), 1.0, 1e-14);
    EXPECT_LT((p.matrix() - r.matrix()).norm(), 1e-3);
  }
}

TEST(ProjectRotation, FixesExactRotations) {
  const Rotation r = rot_exp(Vec3(0.4, 0.5, -0.6));
  EXPECT_LT((project_rotation(r.matrix()).matrix() - r.matrix()).norm(), 1e-15);
}

TEST(ProjectRotation, RejectsSingularAndReflections) {
  EXPECT_THROW(project_rotation(Mat3::Zero()), Degenerate);
  Mat3 reflect = Mat3::Identity();
  reflect(0, 0) = -1.0;
  EXPECT_THROW(project_rotation(reflect), Degenerate);
}
