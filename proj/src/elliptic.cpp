#include "sphero/elliptic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphero/errors.hpp"

namespace sphero {

namespace {

void check_parameter(double m) {
  if (!std::isfinite(m) || m >= 1.0) {
    throw DomainError("elliptic parameter must satisfy m < 1 (got " + std::to_string(m) + ")");
  }
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

}  // namespace

double carlson_rf(double x, double y, double z) {
  // Duplication theorem (Carlson 1995) followed by the fifth-order series in
  // the elementary symmetric functions of the deviations.
  static const double tol = std::pow(3.0 * kEps * 0.01, 1.0 / 8.0);
  const double a0 = (x + y + z) / 3.0;
  double an = a0;
  double q = std::max({std::abs(a0 - x), std::abs(a0 - y), std::abs(a0 - z)}) / tol;
  double xn = x;
  double yn = y;
  double zn = z;
  double mul = 1.0;
  while (q >= mul * std::abs(an)) {
    const double lam = std::sqrt(xn) * std::sqrt(yn) + std::sqrt(yn) * std::sqrt(zn) +
                       std::sqrt(zn) * std::sqrt(xn);
    an = (an + lam) / 4.0;
    xn = (xn + lam) / 4.0;
    yn = (yn + lam) / 4.0;
    zn = (zn + lam) / 4.0;
    mul *= 4.0;
  }
  const double dx = (a0 - x) / (mul * an);
  const double dy = (a0 - y) / (mul * an);
  const double dz = -(dx + dy);
  const double e2 = dx * dy - dz * dz;
  const double e3 = dx * dy * dz;
  return (e3 * (6930.0 * e3 + e2 * (15015.0 * e2 - 16380.0) + 17160.0) +
          e2 * ((10010.0 - 5775.0 * e2) * e2 - 24024.0) + 240240.0) /
         (240240.0 * std::sqrt(an));
}

double elliptic_K(double m) {
  check_parameter(m);
  return carlson_rf(0.0, 1.0 - m, 1.0);
}

double elliptic_F(double m, double theta) {
  check_parameter(m);
  const double turns = std::round(theta / std::numbers::pi);
  const double reduced = theta - turns * std::numbers::pi;  // in [-pi/2, pi/2]
  const double s = std::sin(reduced);
  const double c = std::cos(reduced);
  const double principal = s * carlson_rf(c * c, 1.0 - m * s * s, 1.0);
  if (turns == 0.0) {
    return principal;
  }
  return principal + 2.0 * turns * elliptic_K(m);
}

double jacobi_am(double m, double u) {
  check_parameter(m);
  if (m == 0.0) {
    return u;
  }
  // a_{n+1} = (a_n + b_n)/2, b_{n+1} = sqrt(a_n b_n), c_{n+1} = (a_n - b_n)/2
  // until c_N is negligible; then phi_N = 2^N a_N u and
  // phi_{n-1} = (phi_n + asin(c_n / a_n sin phi_n)) / 2.
  constexpr int kMaxLevels = 40;
  std::array<double, kMaxLevels + 1> a{};
  std::array<double, kMaxLevels + 1> c{};
  a[0] = 1.0;
  double b = std::sqrt(1.0 - m);
  int levels = 0;
  while (levels < kMaxLevels) {
    const double an = a[levels];
    a[levels + 1] = 0.5 * (an + b);
    c[levels + 1] = 0.5 * (an - b);
    b = std::sqrt(an * b);
    ++levels;
    if (std::abs(c[levels]) <= 1e-14 * a[levels]) {
      break;
    }
  }
  double phi = std::ldexp(a[levels] * u, levels);
  for (int n = levels; n >= 1; --n) {
    phi = 0.5 * (phi + std::asin(c[n] / a[n] * std::sin(phi)));
  }
  return phi;
}

double jacobi_sn(double m, double u) { return std::sin(jacobi_am(m, u)); }

double jacobi_dn(double m, double u) {
  const double s = jacobi_sn(m, u);
  return std::sqrt(1.0 - m * s * s);
}

}  // namespace sphero
