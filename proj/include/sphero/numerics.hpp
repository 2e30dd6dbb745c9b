#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>

namespace sphero::numerics {

/// Number of steps of size dt covering [0, T]; a remainder below 1e-9 dt is
/// absorbed by the previous step.
inline std::size_t step_count(double T, double dt) {
  return static_cast<std::size_t>(std::max(0.0, std::ceil(T / dt - 1e-9)));
}

/// Calls on_step(t_k, h_k) with t_k = k dt; the last step is shortened to end
/// at T.
template <typename OnStep>
void march(double T, double dt, OnStep&& on_step) {
  const std::size_t steps = step_count(T, dt);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double h = (k + 1 == steps) ? T - t : dt;
    on_step(t, h);
  }
}

/// Removes 2 pi jumps between consecutive angles in place.
inline void unwrap(std::span<double> angles) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double offset = 0.0;
  for (std::size_t i = 1; i < angles.size(); ++i) {
    const double raw = angles[i] + offset;
    const double jump = raw - angles[i - 1];
    const double k = std::round(jump / two_pi);
    offset -= k * two_pi;
    angles[i] = raw - k * two_pi;
  }
}

/// Composite Simpson on an arbitrary increasing grid. Pairs of intervals use
/// the non-uniform three-point rule; an odd trailing interval is integrated
/// with the quadratic through the last three nodes.
inline double simpson(std::span<const double> t, std::span<const double> f) {
  if (t.size() != f.size()) {
    throw std::invalid_argument("simpson: grid and values differ in length");
  }
  const std::size_t n = t.size();
  if (n < 2) {
    return 0.0;
  }
  if (n == 2) {
    return 0.5 * (t[1] - t[0]) * (f[0] + f[1]);
  }
  double total = 0.0;
  const std::size_t intervals = n - 1;
  const std::size_t paired = intervals - intervals % 2;
  for (std::size_t i = 0; i < paired; i += 2) {
    const double h0 = t[i + 1] - t[i];
    const double h1 = t[i + 2] - t[i + 1];
    const double hs = h0 + h1;
    total += hs / 6.0 *
             ((2.0 - h1 / h0) * f[i] + hs * hs / (h0 * h1) * f[i + 1] + (2.0 - h0 / h1) * f[i + 2]);
  }
  if (intervals % 2 == 1) {
    const double h0 = t[n - 2] - t[n - 3];
    const double h1 = t[n - 1] - t[n - 2];
    const double alpha = (2.0 * h1 * h1 + 3.0 * h0 * h1) / (6.0 * (h0 + h1));
    const double beta = (h1 * h1 + 3.0 * h0 * h1) / (6.0 * h0);
    const double eta = h1 * h1 * h1 / (6.0 * h0 * (h0 + h1));
    total += alpha * f[n - 1] + beta * f[n - 2] - eta * f[n - 3];
  }
  return total;
}

}  // namespace sphero::numerics
