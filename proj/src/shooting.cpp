#include "sphero/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "sphero/errors.hpp"

namespace sphero {

namespace {

using Vec4 = Eigen::Vector4d;

Costate to_costate(const Vec4& v) { return {v(0), v(1), Vec2(v(2), v(3))}; }
Vec4 to_vec(const Costate& k) { return {k.gamma1, k.gamma2, k.p.x(), k.p.y()}; }

PMPState initial_state(const BvpProblem& prob, const Costate& k) {
  PMPState z;
  z.phi1 = prob.phi0.phi1;
  z.phi2 = prob.phi0.phi2;
  z.x = prob.x0;
  z.gamma1 = k.gamma1;
  z.gamma2 = k.gamma2;
  z.p = k.p;
  return z;
}

double norm_or_inf(const Vec4& r) {
  const double n = r.norm();
  return std::isfinite(n) ? n : std::numeric_limits<double>::infinity();
}

void check_problem(const BvpProblem& prob) {
  if (!(prob.T > 0.0)) {
    throw std::invalid_argument("boundary value problem needs T > 0");
  }
}

std::vector<Costate> draw_starts(const Costate& guess, const ShootingOptions& opt) {
  std::vector<Costate> starts{guess};
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> box(-opt.restart_box, opt.restart_box);
  for (int i = 0; i < opt.restarts; ++i) {
    Vec4 v;
    for (int j = 0; j < 4; ++j) {
      v(j) = box(rng);
    }
    starts.push_back(to_costate(v));
  }
  return starts;
}

BvpResult collect(const std::vector<BvpSolution>& runs, const ShootingOptions& opt) {
  BvpResult out;
  out.starts_tried = static_cast<int>(runs.size());
  double best_residual = std::numeric_limits<double>::infinity();
  for (const auto& s : runs) {
    best_residual = std::min(best_residual, s.residual);
    if (!(s.residual < opt.tolerance)) {
      continue;
    }
    ++out.starts_converged;
    const Vec4 v = to_vec(s.initial.costate());
    const bool seen = std::any_of(out.distinct.begin(), out.distinct.end(), [&](const BvpSolution& d) {
      return (to_vec(d.initial.costate()) - v).norm() < 1e-6 * (1.0 + v.norm());
    });
    if (!seen) {
      out.distinct.push_back(s);
    }
  }
  if (out.distinct.empty()) {
    throw NoConvergence("shooting did not converge from any of " +
                            std::to_string(runs.size()) + " starts",
                        best_residual);
  }
  std::stable_sort(out.distinct.begin(), out.distinct.end(),
                   [](const BvpSolution& a, const BvpSolution& b) { return a.cost < b.cost; });
  out.best = out.distinct.front();
  return out;
}

}  // namespace

Eigen::Vector4d shooting_residual(const BvpProblem& prob, const Costate& k) {
  const PMPState zT = propagate_pmp(prob.params, initial_state(prob, k), prob.T, prob.dt);
  return {zT.phi1 - prob.phiT.phi1, zT.phi2 - prob.phiT.phi2, zT.x.x() - prob.xT.x(),
          zT.x.y() - prob.xT.y()};
}

BranchReport branch_report(const RobotParams& prm, const PMPState& z0) {
  BranchReport b;
  b.constants = reduce(prm, z0);
  b.circulating = b.constants.circulating();
  b.positivity = b.constants.positivity_margin() > 0.0;
  b.exact_available = b.circulating && b.positivity;
  return b;
}

BvpSolution shoot_from(const BvpProblem& prob, const Costate& guess, const ShootingOptions& opt) {
  Vec4 z = to_vec(guess);
  Vec4 r = shooting_residual(prob, guess);
  double rn = norm_or_inf(r);
  int iter = 0;
  while (iter < opt.max_iterations && rn >= opt.tolerance && std::isfinite(rn)) {
    ++iter;
    Eigen::Matrix4d jac;
    for (int j = 0; j < 4; ++j) {
      Vec4 plus = z;
      Vec4 minus = z;
      plus(j) += opt.fd_step;
      minus(j) -= opt.fd_step;
      jac.col(j) = (shooting_residual(prob, to_costate(plus)) -
                    shooting_residual(prob, to_costate(minus))) /
                   (2.0 * opt.fd_step);
    }
    const Vec4 step = jac.fullPivLu().solve(-r);
    if (!step.allFinite()) {
      break;
    }
    // Backtrack until the residual norm decreases.
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-6) {
      const Vec4 trial = z + lambda * step;
      const Vec4 rt = shooting_residual(prob, to_costate(trial));
      const double rtn = norm_or_inf(rt);
      if (rtn < (1.0 - 1e-4 * lambda) * rn) {
        z = trial;
        r = rt;
        rn = rtn;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) {
      break;
    }
  }

  BvpSolution s;
  s.initial = initial_state(prob, to_costate(z));
  s.residual = rn;
  s.iterations = iter;
  s.integrals = first_integrals(prob.params, s.initial);
  s.cost = s.integrals.H * prob.T;
  s.branch = branch_report(prob.params, s.initial);
  return s;
}

namespace {

// Converged coarse solutions, one per distinct costate, with their start
// labels.
void coarse_seeds(const std::vector<BvpSolution>& runs, const ShootingOptions& opt,
                  std::vector<Costate>& seeds, std::vector<int>& labels) {
  for (const auto& s : runs) {
    if (!(s.residual < opt.tolerance)) {
      continue;
    }
    const Vec4 v = to_vec(s.initial.costate());
    const bool seen = std::any_of(seeds.begin(), seeds.end(), [&](const Costate& k) {
      return (to_vec(k) - v).norm() < 1e-6 * (1.0 + v.norm());
    });
    if (!seen) {
      seeds.push_back(s.initial.costate());
      labels.push_back(s.start);
    }
  }
}

bool use_search(const BvpProblem& prob, const ShootingOptions& opt) {
  return opt.search_dt > prob.dt;
}

template <bool Parallel>
std::vector<BvpSolution> run_starts(const BvpProblem& prob, const std::vector<Costate>& starts,
                                    const std::vector<int>& labels, const ShootingOptions& opt) {
  std::vector<BvpSolution> runs(starts.size());
  const auto n = static_cast<long long>(starts.size());
  if constexpr (Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      runs[u] = shoot_from(prob, starts[u], opt);
      runs[u].start = labels[u];
    }
  } else {
    for (long long i = 0; i < n; ++i) {
      const auto u = static_cast<std::size_t>(i);
      runs[u] = shoot_from(prob, starts[u], opt);
      runs[u].start = labels[u];
    }
  }
  return runs;
}

template <bool Parallel>
BvpResult solve(const BvpProblem& prob, const Costate& guess, const ShootingOptions& opt) {
  check_problem(prob);
  const std::vector<Costate> starts = draw_starts(guess, opt);
  std::vector<int> labels(starts.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    labels[i] = static_cast<int>(i);
  }
  if (!use_search(prob, opt)) {
    return collect(run_starts<Parallel>(prob, starts, labels, opt), opt);
  }

  BvpProblem coarse = prob;
  coarse.dt = opt.search_dt;
  const auto coarse_runs = run_starts<Parallel>(coarse, starts, labels, opt);
  std::vector<Costate> seeds;
  std::vector<int> seed_labels;
  coarse_seeds(coarse_runs, opt, seeds, seed_labels);
  if (!seeds.empty()) {
    const auto fine = run_starts<Parallel>(prob, seeds, seed_labels, opt);
    const bool any = std::any_of(fine.begin(), fine.end(),
                                 [&](const BvpSolution& s) { return s.residual < opt.tolerance; });
    if (any) {
      BvpResult out = collect(fine, opt);
      out.starts_tried = static_cast<int>(starts.size());
      return out;
    }
  }
  // Coarse roots can be artifacts of the step size; retry every start.
  return collect(run_starts<Parallel>(prob, starts, labels, opt), opt);
}

}  // namespace

BvpResult solve_bvp_serial(const BvpProblem& prob, const Costate& guess,
                           const ShootingOptions& opt) {
  return solve<false>(prob, guess, opt);
}

BvpResult solve_bvp(const BvpProblem& prob, const Costate& guess, const ShootingOptions& opt) {
  return solve<true>(prob, guess, opt);
}

}  // namespace sphero
