#pragma once

#include <cstdint>
#include <vector>

#include "sphero/exact_extremal.hpp"
#include "sphero/optimal_control.hpp"

namespace sphero {

/// Fixed-time minimum-energy transfer between wheel angles and center
/// positions; the attitude at either end is free.
struct BvpProblem {
  RobotParams params;
  ShapeState phi0;
  Vec2 x0 = Vec2::Zero();
  ShapeState phiT;
  Vec2 xT = Vec2::Zero();
  double T = 1.0;
  double dt = 1e-3;  // RK4 step of the shooting map
};

struct ShootingOptions {
  int max_iterations = 100;
  int restarts = 32;           // random starts in addition to the supplied guess
  double restart_box = 5.0;    // restart costates ~ U[-box, box]^4
  double tolerance = 1e-8;     // on |residual|
  double fd_step = 1e-6;       // central differences for the Jacobian
  // Restarts run on this coarser step and only the distinct converged
  // costates are re-solved at the problem's dt. 0 disables the search pass.
  double search_dt = 1e-2;
  std::uint64_t seed = 0;
};

/// How the converged extremal sits relative to the closed-form branch.
struct BranchReport {
  ReducedConstants constants;
  bool circulating = false;     // A < E
  bool positivity = false;      // a - 2(sqrt(H) - sigma1) > 0
  bool exact_available = false;
};

struct BvpSolution {
  PMPState initial;
  double residual = 0.0;
  int iterations = 0;
  int start = 0;  // 0 = supplied guess, k >= 1 = k-th random restart
  double cost = 0.0;  // H T
  FirstIntegrals integrals;
  BranchReport branch;
};

struct BvpResult {
  BvpSolution best;                   // lowest cost among converged starts
  std::vector<BvpSolution> distinct;  // one per distinct costate, by cost
  int starts_tried = 0;
  int starts_converged = 0;  // after polishing when the search pass ran
};

/// (phi(T) - phi_T, x(T) - x_T) for the extremal leaving (phi0, x0) with the
/// given costate.
Eigen::Vector4d shooting_residual(const BvpProblem& prob, const Costate& k);

/// Damped Newton from one starting costate. Returns the final iterate even
/// when it did not converge (check `residual`).
BvpSolution shoot_from(const BvpProblem& prob, const Costate& guess,
                       const ShootingOptions& opt);

/// Multi-start shooting. Start 0 is `guess`; the random restarts are drawn
/// from `opt.seed` up front, so the result does not depend on thread count.
/// With `opt.search_dt` above `prob.dt` the starts are first solved on the
/// coarse step and then polished.
/// Starts run in parallel under OpenMP. Throws NoConvergence carrying the best
/// residual when no start converges.
BvpResult solve_bvp(const BvpProblem& prob, const Costate& guess,
                    const ShootingOptions& opt = {});

/// Serial reference for `solve_bvp`; identical results.
BvpResult solve_bvp_serial(const BvpProblem& prob, const Costate& guess,
                           const ShootingOptions& opt = {});

BranchReport branch_report(const RobotParams& prm, const PMPState& z0);

}  // namespace sphero
