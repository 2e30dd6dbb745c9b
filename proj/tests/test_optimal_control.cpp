#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "oracles.hpp"
#include "sphero/errors.hpp"
#include "sphero/optimal_control.hpp"

using namespace sphero;

namespace {

const RobotParams kReference{};

// Canonical layout: q = (phi1, phi2, x1, x2), p = (gamma1, gamma2, p1, p2).
using Canon = std::array<double, 8>;

Canon to_canon(const PMPState& z) {
  return {z.phi1, z.phi2, z.x.x(), z.x.y(), z.gamma1, z.gamma2, z.p.x(), z.p.y()};
}

PMPState from_canon(const Canon& c) {
  PMPState z;
  z.phi1 = c[0];
  z.phi2 = c[1];
  z.x = Vec2(c[2], c[3]);
  z.gamma1 = c[4];
  z.gamma2 = c[5];
  z.p = Vec2(c[6], c[7]);
  return z;
}

template <typename F>
Canon gradient(const F& f, const PMPState& z, double h = 1e-6) {
  const Canon base = to_canon(z);
  Canon g{};
  for (int i = 0; i < 8; ++i) {
    Canon up = base;
    Canon dn = base;
    up[i] += h;
    dn[i] -= h;
    g[i] = (f(from_canon(up)) - f(from_canon(dn))) / (2.0 * h);
  }
  return g;
}

template <typename F, typename G>
double poisson(const F& f, const G& g, const PMPState& z) {
  const Canon df = gradient(f, z);
  const Canon dg = gradient(g, z);
  double s = 0.0;
  for (int i = 0; i < 4; ++i) {
    s += df[i] * dg[i + 4] - df[i + 4] * dg[i];
  }
  return s;
}

PMPState random_state(oracle::Uniform& u, double scale) {
  return from_canon({u(-scale, scale), u(-scale, scale), u(-scale, scale), u(-scale, scale),
                     u(-scale, scale), u(-scale, scale), u(-scale, scale), u(-scale, scale)});
}

}  // namespace

TEST(ControlLaw, ZeroTranslationCostate) {
  const WheelRates u = optimal_control_law(kReference, {3.0, -1.0}, {0.7, -0.2, Vec2::Zero()});
  EXPECT_EQ(u.u1, 0.7);
  EXPECT_EQ(u.u2, -0.2);
}

TEST(ControlLaw, ZeroShapeCostateAtOrigin) {
  const WheelRates u = optimal_control_law(kReference, {0.0, 0.0}, {0.0, 0.0, Vec2(0.4, 1.5)});
  EXPECT_DOUBLE_EQ(u.u1, 0.2 * 1.5);
  EXPECT_DOUBLE_EQ(u.u2, 0.2 * 1.5);
}

TEST(ControlLaw, MaximizesControlHamiltonian) {
  // H_c(u) = gamma . u + p . x_dot(u) - |u|^2 / 2 has zero gradient at u*.
  oracle::Uniform rnd(50);
  for (int i = 0; i < 100; ++i) {
    const PMPState z = random_state(rnd, 5.0);
    const WheelRates us = optimal_control_law(kReference, z.shape(), z.costate());
    const auto hc = [&](double u1, double u2) {
      return z.gamma1 * u1 + z.gamma2 * u2 + z.p.dot(center_velocity(kReference, z.shape(), {u1, u2})) -
             0.5 * (u1 * u1 + u2 * u2);
    };
    EXPECT_NEAR(oracle::diff([&](double v) { return hc(v, us.u2); }, us.u1), 0.0, 1e-8);
    EXPECT_NEAR(oracle::diff([&](double v) { return hc(us.u1, v); }, us.u2), 0.0, 1e-8);
    EXPECT_NEAR(hc(us.u1, us.u2), hamiltonian(kReference, z), 1e-10);
  }
}

TEST(Hamiltonian, HalfSquaredControl) {
  oracle::Uniform rnd(51);
  for (int i = 0; i < 100; ++i) {
    const PMPState z = random_state(rnd, 5.0);
    const WheelRates u = optimal_control_law(kReference, z.shape(), z.costate());
    EXPECT_NEAR(hamiltonian(kReference, z), 0.5 * (u.u1 * u.u1 + u.u2 * u.u2), 1e-12);
    EXPECT_GE(hamiltonian(kReference, z), 0.0);
  }
  EXPECT_EQ(hamiltonian(kReference, PMPState{}), 0.0);
}

TEST(PmpRhs, HamiltonsEquations) {
  oracle::Uniform rnd(52);
  const auto H = [](const PMPState& z) { return hamiltonian(kReference, z); };
  for (int i = 0; i < 200; ++i) {
    const PMPState z = random_state(rnd, 5.0);
    const Canon g = gradient(H, z);
    const Canon rhs = to_canon(pmp_rhs(kReference, z));
    for (int k = 0; k < 4; ++k) {
      ASSERT_NEAR(rhs[k], g[k + 4], 1e-6);
      ASSERT_NEAR(rhs[k + 4], -g[k], 1e-6);
    }
  }
}

TEST(PmpRhs, ShapeCostatesMoveOppositely) {
  oracle::Uniform rnd(53);
  for (int i = 0; i < 50; ++i) {
    const PMPState d = pmp_rhs(kReference, random_state(rnd, 5.0));
    EXPECT_EQ(d.gamma1, -d.gamma2);
    EXPECT_EQ(d.p, Vec2::Zero());
  }
  const PMPState d = pmp_rhs(kReference, PMPState{});
  EXPECT_EQ(to_canon(d), Canon{});
}

TEST(FirstIntegrals, InInvolution) {
  oracle::Uniform rnd(54);
  const std::array<std::function<double(const PMPState&)>, 4> F = {
      [](const PMPState& z) { return first_integrals(kReference, z).H; },
      [](const PMPState& z) { return first_integrals(kReference, z).gamma_sum; },
      [](const PMPState& z) { return first_integrals(kReference, z).p1; },
      [](const PMPState& z) { return first_integrals(kReference, z).p2; }};
  for (int n = 0; n < 200; ++n) {
    const PMPState z = random_state(rnd, 5.0);
    for (int i = 0; i < 4; ++i) {
      for (int j = i + 1; j < 4; ++j) {
        ASSERT_NEAR(poisson(F[i], F[j], z), 0.0, 1e-6) << i << j;
      }
    }
    EXPECT_EQ(first_integrals(kReference, z).gamma_sum, z.gamma1 + z.gamma2);
  }
}

TEST(IntegratePmp, ConservesFirstIntegrals) {
  oracle::Uniform rnd(55);
  for (int n = 0; n < 20; ++n) {
    PMPState z = random_state(rnd, 5.0);
    const double scale = 5.0 / std::sqrt(std::pow(z.phi1, 2) + std::pow(z.phi2, 2) +
                                         z.x.squaredNorm() + std::pow(z.gamma1, 2) +
                                         std::pow(z.gamma2, 2) + z.p.squaredNorm());
    z = std::min(1.0, scale) * z;
    const PMPRun run = integrate_pmp(kReference, z, 10.0, 1e-3);
    EXPECT_LT(run.drift.H, 1e-8);
    EXPECT_LT(run.drift.gamma_sum, 1e-10);
    EXPECT_EQ(run.drift.p1, 0.0);
    EXPECT_EQ(run.drift.p2, 0.0);
  }
}

TEST(IntegratePmp, AttitudeFollowsKinematics) {
  const PMPState z = from_canon({0.0, 0.0, 0.0, 0.0, 1.0, 0.5, 2.0, -1.0});
  const PMPRun run = integrate_pmp(kReference, z, 2.0, 1e-3);
  for (const auto& s : run.samples) {
    ASSERT_LT(s.R.orthogonality_error(), 1e-12);
  }
  EXPECT_EQ(run.samples.size(), 2001u);
  EXPECT_NE(run.samples.back().R.matrix(), Mat3::Identity());
}

TEST(IntegratePmp, ControlCostIsHTimesT) {
  const PMPState z = from_canon({0.0, 0.0, 0.0, 0.0, 1.3, -0.4, 3.0, 2.0});
  const PMPRun run = integrate_pmp(kReference, z, 5.0, 1e-3);
  EXPECT_NEAR(control_cost(kReference, run), 5.0 * hamiltonian(kReference, z), 1e-9);
}

TEST(IntegratePmp, RejectsBadStep) {
  EXPECT_THROW(integrate_pmp(kReference, PMPState{}, 1.0, 0.0), InvalidStep);
}

TEST(HeadingAngle, DirectionOfShapeVelocity) {
  oracle::Uniform rnd(56);
  for (int i = 0; i < 50; ++i) {
    const PMPState z = random_state(rnd, 5.0);
    const WheelRates u = optimal_control_law(kReference, z.shape(), z.costate());
    const double th = heading_angle(kReference, z);
    const double s = 2.0 * std::sqrt(hamiltonian(kReference, z));
    EXPECT_NEAR(u.u1 + u.u2, s * std::cos(th), 1e-12);
    EXPECT_NEAR(u.u1 - u.u2, s * std::sin(th), 1e-12);
  }
}
