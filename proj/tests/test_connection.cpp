#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sphero/connection.hpp"

using namespace sphero;

namespace {

const RobotParams kReference{};

// dA(e1, e2) + A1 x A2 by central differences.
CurvatureLocal cartan_fd(const RobotParams& p, const ShapeState& s, double h = 1e-5) {
  const auto at = [&](double d1, double d2) {
    return connection_at(p, {s.phi1 + d1, s.phi2 + d2});
  };
  const ConnectionLocal a = at(0.0, 0.0);
  const ConnectionLocal p1 = at(h, 0.0);
  const ConnectionLocal m1 = at(-h, 0.0);
  const ConnectionLocal p2 = at(0.0, h);
  const ConnectionLocal m2 = at(0.0, -h);
  CurvatureLocal b;
  b.so3 = (p1.so3_2 - m1.so3_2) / (2.0 * h) - (p2.so3_1 - m2.so3_1) / (2.0 * h) +
          a.so3_1.cross(a.so3_2);
  b.r2 = (p1.r2_2 - m1.r2_2) / (2.0 * h) - (p2.r2_1 - m2.r2_1) / (2.0 * h);
  return b;
}

}  // namespace

TEST(Connection, ValuesAtOrigin) {
  const ConnectionLocal a = connection_at(kReference, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(a.so3_1.x(), 0.2);
  EXPECT_DOUBLE_EQ(a.so3_1.y(), 0.0);
  EXPECT_DOUBLE_EQ(a.so3_1.z(), kReference.c() * 5.0);
  EXPECT_DOUBLE_EQ(a.so3_2.z(), -kReference.c() * 5.0);
  EXPECT_DOUBLE_EQ(a.r2_1.x(), 0.0);
  EXPECT_DOUBLE_EQ(a.r2_1.y(), -0.2);
  EXPECT_EQ(a.r2_1, a.r2_2);
}

TEST(Connection, ReproducesKinematics) {
  oracle::Uniform u(20);
  for (int i = 0; i < 200; ++i) {
    const ShapeState s{u(-100.0, 100.0), u(-100.0, 100.0)};
    const WheelRates w{u(-2.0, 2.0), u(-2.0, 2.0)};
    const ConnectionLocal a = connection_at(kReference, s);
    EXPECT_LT((spatial_angular_velocity(kReference, s, w) + a.so3_1 * w.u1 + a.so3_2 * w.u2).norm(),
              1e-14);
    EXPECT_LT((center_velocity(kReference, s, w) + a.r2_1 * (w.u1 + w.u2)).norm(), 1e-14);
  }
}

TEST(Connection, DependsOnDifferenceOnly) {
  const double period = 2.0 * std::numbers::pi / kReference.c();
  const ConnectionLocal a = connection_at(kReference, {1.0, 0.3});
  const ConnectionLocal b = connection_at(kReference, {1.0 + period + 4.0, 0.3 + 4.0});
  EXPECT_LT((a.so3_1 - b.so3_1).norm(), 1e-12);
  EXPECT_LT((a.r2_1 - b.r2_1).norm(), 1e-12);
}

TEST(Connection, AnnihilatesHorizontalLift) {
  oracle::Uniform u(21);
  for (int i = 0; i < 200; ++i) {
    const ShapeState s{u(-30.0, 30.0), u(-30.0, 30.0)};
    const Rotation R = rot_exp(Vec3(u(-2.0, 2.0), u(-2.0, 2.0), u(-2.0, 2.0)));
    const WheelRates w{u(-2.0, 2.0), u(-2.0, 2.0)};
    const ConnectionValue v = apply_connection(kReference, s, R, horizontal_lift(kReference, s, R, w));
    EXPECT_LT(v.so3.norm(), 1e-12);
    EXPECT_LT(v.r2.norm(), 1e-12);
  }
}

TEST(Curvature, ValuesAtOrigin) {
  const CurvatureLocal b = curvature_at(kReference, {0.0, 0.0});
  EXPECT_DOUBLE_EQ(b.so3.x(), 0.0);
  EXPECT_DOUBLE_EQ(b.so3.y(), 0.09 / (2.0 * 0.75 * 0.8));
  EXPECT_EQ(b.so3.z(), 0.0);
  EXPECT_DOUBLE_EQ(b.r2.x(), kReference.c() * 0.3 / 0.75);
  EXPECT_DOUBLE_EQ(b.r2.y(), 0.0);
}

TEST(Curvature, MatchesCartanByFiniteDifferences) {
  oracle::Uniform u(22);
  for (int i = 0; i < 1000; ++i) {
    const ShapeState s{u(-200.0, 200.0), u(-200.0, 200.0)};
    const CurvatureLocal exact = curvature_at(kReference, s);
    const CurvatureLocal fd = cartan_fd(kReference, s);
    ASSERT_LT((exact.so3 - fd.so3).norm(), 1e-8);
    ASSERT_LT((exact.r2 - fd.r2).norm(), 1e-8);
  }
}

TEST(Curvature, MatchesCartanForOtherParameters) {
  const RobotParams p{0.5, 0.7, 0.4, 0.3, 0.0};
  oracle::Uniform u(23);
  for (int i = 0; i < 200; ++i) {
    const ShapeState s{u(-20.0, 20.0), u(-20.0, 20.0)};
    EXPECT_LT((curvature_at(p, s).so3 - cartan_fd(p, s).so3).norm(), 1e-8);
    EXPECT_LT((curvature_at(p, s).r2 - cartan_fd(p, s).r2).norm(), 1e-8);
  }
}

TEST(Certificate, HoldsAtOrigin) {
  const ControllabilityReport r = fiber_controllability_certificate(kReference, {0.0, 0.0});
  EXPECT_TRUE(r.controllable);
  EXPECT_GT(r.min_relevant_singular(), 1e-6);
}

TEST(Certificate, FailsWithoutWheels) {
  RobotParams p = kReference;
  p.rho = 0.0;
  EXPECT_FALSE(fiber_controllability_certificate(p, {0.3, 0.1}).controllable);
}

TEST(Certificate, SingularValuesIndependentOfShape) {
  const ControllabilityReport a = fiber_controllability_certificate(kReference, {0.0, 0.0});
  oracle::Uniform u(24);
  for (int i = 0; i < 50; ++i) {
    const ControllabilityReport b =
        fiber_controllability_certificate(kReference, {u(-100.0, 100.0), u(-100.0, 100.0)});
    for (int k = 0; k < 3; ++k) {
      EXPECT_NEAR(a.so3_singular[k], b.so3_singular[k], 1e-13);
    }
    for (int k = 0; k < 2; ++k) {
      EXPECT_NEAR(a.r2_singular[k], b.r2_singular[k], 1e-13);
    }
  }
}

TEST(Certificate, GridAllControllable) {
  const GridCertificate g = certify_grid(kReference, 100);
  EXPECT_EQ(g.points, 10000u);
  EXPECT_TRUE(g.all_controllable());
  EXPECT_GT(std::min(g.min_so3_singular, g.min_r2_singular), 1e-6);
}

TEST(Certificate, ParallelGridMatchesSerial) {
  for (std::size_t n : {1u, 7u, 64u}) {
    const GridCertificate a = certify_grid(kReference, n);
    const GridCertificate b = certify_grid_serial(kReference, n);
    EXPECT_EQ(a.points, b.points);
    EXPECT_EQ(a.controllable_points, b.controllable_points);
    EXPECT_EQ(a.min_so3_singular, b.min_so3_singular);
    EXPECT_EQ(a.min_r2_singular, b.min_r2_singular);
  }
}
