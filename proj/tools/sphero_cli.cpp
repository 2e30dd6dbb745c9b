// Command-line driver: simulate, holonomy, controllability, ocp.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sphero/connection.hpp"
#include "sphero/errors.hpp"
#include "sphero/exact_extremal.hpp"
#include "sphero/holonomy.hpp"
#include "sphero/io.hpp"
#include "sphero/shooting.hpp"

namespace {

using namespace sphero;

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kUsage = 2;

// Bad command-line values, reported like CLI11's own parse errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double angle(const std::string& text, const char* flag) {
  try {
    return io::parse_angle(text);
  } catch (const std::invalid_argument&) {
    throw UsageError(std::string(flag) + ": cannot parse '" + text + "'");
  }
}

Vec2 pair(const std::vector<std::string>& v, const char* flag) {
  return {angle(v.at(0), flag), angle(v.at(1), flag)};
}

std::string fmt(double v) { return io::format_double(v); }

RobotParams params_or_default(const std::string& path) {
  return path.empty() ? RobotParams{} : io::load_params(path);
}

void echo_params(const std::string& path, const RobotParams& p) {
  std::cout << "params: " << (path.empty() ? "<defaults>" : path) << "\n"
            << "  r = " << fmt(p.r) << ", rho = " << fmt(p.rho) << ", h = " << fmt(p.h)
            << ", w = " << fmt(p.w) << ", j_ratio = " << fmt(p.j_ratio) << "\n"
            << "  c = " << fmt(p.c()) << "\n";
}

void print_rotation(const Rotation& R) {
  std::cout << "R =\n";
  for (int i = 0; i < 3; ++i) {
    std::cout << "  " << fmt(R(i, 0)) << " " << fmt(R(i, 1)) << " " << fmt(R(i, 2)) << "\n";
  }
  const Vec3 v = rot_log(R);
  const double th = v.norm();
  const Vec3 axis = th > 0.0 ? Vec3(v / th) : Vec3(0.0, 0.0, 1.0);
  std::cout << "axis = (" << fmt(axis.x()) << ", " << fmt(axis.y()) << ", " << fmt(axis.z())
            << "), angle = " << fmt(th) << "\n";
}

void print_vec2(const char* name, const Vec2& v) {
  std::cout << name << " = (" << fmt(v.x()) << ", " << fmt(v.y()) << ")\n";
}

struct SimulateArgs {
  std::string params;
  std::string u1 = "1";
  std::string u2 = "1";
  double T = 1.0;
  double dt = 1e-3;
  std::string out;
};

int run_simulate(const SimulateArgs& a) {
  const RobotParams p = params_or_default(a.params);
  const WheelRates u{angle(a.u1, "--u1"), angle(a.u2, "--u2")};
  echo_params(a.params, p);
  const Trajectory traj = integrate(p, Configuration{}, Control(u), a.T, a.dt);
  io::write_trajectory(traj, a.out);
  const auto& last = traj.back();
  std::cout << "samples: " << traj.size() << " -> " << a.out << "\n"
            << "phi(T) = (" << fmt(last.shape.phi1) << ", " << fmt(last.shape.phi2) << ")\n";
  print_vec2("x(T)", last.pose.x);
  print_rotation(last.pose.R);
  return kOk;
}

struct HolonomyArgs {
  std::string loop;
  std::string alpha;
  std::string beta;
  std::string params;
  std::optional<double> numeric;
};

int run_holonomy(const HolonomyArgs& a) {
  const RobotParams p = params_or_default(a.params);
  const double alpha = angle(a.alpha, "--alpha");
  const double beta = angle(a.beta, "--beta");
  echo_params(a.params, p);
  std::cout << "loop: " << a.loop << ", alpha = " << fmt(alpha) << ", beta = " << fmt(beta) << "\n";

  if (a.loop == "rect-xy") {
    const RectLoopXY loop{alpha, beta};
    print_vec2("dx", translational_holonomy_rect(p, loop));
    // No closed form for the attitude on this loop.
    const double dt = a.numeric.value_or(1e-4);
    const Holonomy num = holonomy_numeric(p, rect_xy_control(loop), dt);
    if (a.numeric) {
      print_vec2("dx (numeric)", num.dx);
    }
    std::cout << "attitude by integration, dt = " << fmt(dt) << "\n";
    print_rotation(num.R);
  } else {
    const RectLoopDiag loop{alpha, beta};
    print_vec2("dx", translational_holonomy_diag(p, loop));
    print_rotation(rotational_holonomy_rect(p, loop));
    if (a.numeric) {
      const Holonomy num = holonomy_numeric(p, rect_loop_control(loop), *a.numeric);
      std::cout << "numeric, dt = " << fmt(*a.numeric) << "\n";
      print_vec2("dx (numeric)", num.dx);
      print_rotation(num.R);
    }
  }
  return kOk;
}

int run_controllability(const std::string& params, std::size_t n) {
  const RobotParams p = params_or_default(params);
  echo_params(params, p);
  const GridCertificate g = certify_grid(p, n);
  std::cout << "grid: " << n << " x " << n << " over [0, 2 pi / c)^2\n"
            << "controllable points: " << g.controllable_points << " / " << g.points << "\n"
            << "min so(3) singular value: " << fmt(g.min_so3_singular) << "\n"
            << "min R^2 singular value: " << fmt(g.min_r2_singular) << "\n"
            << "certificate: " << (g.all_controllable() ? "controllable" : "NOT controllable")
            << "\n";
  return g.all_controllable() ? kOk : kDomain;
}

struct OcpArgs {
  std::string params;
  std::vector<std::string> x0{"0", "0"};
  std::vector<std::string> xT;
  std::vector<std::string> phi0{"0", "0"};
  std::vector<std::string> phiT;
  double T = 10.0;
  double dt = 1e-3;
  bool exact = false;
  std::uint64_t seed = 0;
  int restarts = 32;
  std::string out;
};

// max |theta_closed - theta_ode| over the run, or nullopt if the closed form
// refuses the branch.
std::optional<double> theta_gap(const RobotParams& p, const PMPRun& run, EllipticConvention conv) {
  try {
    const ExactExtremal ex = ExactExtremal::from_state(p, run.samples.front().state, conv);
    const std::vector<double> ode = heading_history(p, run);
    double worst = 0.0;
    for (std::size_t i = 0; i < ode.size(); ++i) {
      worst = std::max(worst, std::abs(ex.at(run.samples[i].t).theta - ode[i]));
    }
    return worst;
  } catch (const BranchError&) {
    return std::nullopt;
  } catch (const ConditionError&) {
    return std::nullopt;
  }
}

int run_ocp(const OcpArgs& a) {
  BvpProblem prob;
  prob.params = params_or_default(a.params);
  prob.x0 = pair(a.x0, "--x0");
  prob.xT = pair(a.xT, "--xT");
  const Vec2 phi0 = pair(a.phi0, "--phi0");
  const Vec2 phiT = pair(a.phiT, "--phiT");
  prob.phi0 = {phi0.x(), phi0.y()};
  prob.phiT = {phiT.x(), phiT.y()};
  prob.T = a.T;
  prob.dt = a.dt;
  const RobotParams& p = prob.params;
  echo_params(a.params, p);

  ShootingOptions opt;
  opt.seed = a.seed;
  opt.restarts = a.restarts;
  // Initial guess: the straight shape-space line with zero position costate.
  const Costate guess{(phiT.x() - phi0.x()) / a.T, (phiT.y() - phi0.y()) / a.T, Vec2::Zero()};
  const BvpResult res = solve_bvp(prob, guess, opt);
  const BvpSolution& best = res.best;
  const PMPRun run = integrate_pmp(p, best.initial, prob.T, prob.dt);

  std::cout << "starts: " << res.starts_tried << ", distinct solutions: " << res.distinct.size()
            << "\n"
            << "residual = " << fmt(best.residual) << " (start " << best.start << ", "
            << best.iterations << " iterations)\n"
            << "cost = " << fmt(best.cost) << " (quadrature " << fmt(control_cost(p, run))
            << ")\n"
            << "gamma(0) = (" << fmt(best.initial.gamma1) << ", " << fmt(best.initial.gamma2)
            << ")\n";
  print_vec2("p", best.initial.p);
  const FirstIntegrals& f = best.integrals;
  std::cout << "first integrals: H = " << fmt(f.H) << ", gamma1 + gamma2 = " << fmt(f.gamma_sum)
            << ", p1 = " << fmt(f.p1) << ", p2 = " << fmt(f.p2) << "\n"
            << "drift: H " << fmt(run.drift.H) << ", gamma sum " << fmt(run.drift.gamma_sum)
            << ", p1 " << fmt(run.drift.p1) << ", p2 " << fmt(run.drift.p2) << "\n";
  const ReducedConstants& k = best.branch.constants;
  std::cout << "branch: E = " << fmt(k.E) << ", A = " << fmt(k.A) << ", "
            << (best.branch.circulating ? "A < E (circulating)" : "A >= E (librating)")
            << "; a - 2(sqrt(H) - sigma1) = " << fmt(k.positivity_margin()) << "\n";
  for (std::size_t i = 1; i < res.distinct.size(); ++i) {
    std::cout << "  other solution: cost " << fmt(res.distinct[i].cost) << " (start "
              << res.distinct[i].start << ")\n";
  }

  const auto gap = theta_gap(p, run, EllipticConvention::kParameter);
  const auto gap_modulus = theta_gap(p, run, EllipticConvention::kModulus);
  if (gap) {
    std::cout << "closed form vs integration, max |theta gap|: parameter 2A/(E+A) "
              << fmt(*gap) << ", its square root " << fmt(*gap_modulus) << "\n";
  } else {
    std::cout << "closed form unavailable on this branch\n";
  }

  if (!a.out.empty()) {
    PMPRun emitted = run;
    if (a.exact && gap) {
      // Wheel angles and position by quadrature of the closed form; attitude
      // and costate stay from integration.
      const ExactExtremal ex = ExactExtremal::from_state(p, best.initial);
      const auto path = reconstruct_by_quadrature(ex, prob.phi0, prob.x0, prob.T, prob.dt);
      for (std::size_t i = 0; i < emitted.samples.size() && i < path.size(); ++i) {
        emitted.samples[i].state.phi1 = path[i].shape.phi1;
        emitted.samples[i].state.phi2 = path[i].shape.phi2;
        emitted.samples[i].state.x = path[i].x;
      }
      std::cout << "trajectory: closed form by quadrature\n";
    } else if (a.exact) {
      std::cout << "trajectory: integration (closed form not available)\n";
    }
    io::write_extremal(emitted, a.out);
    std::cout << "samples: " << emitted.samples.size() << " -> " << a.out << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinematics, holonomy and optimal control of a two-wheel spherical robot"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Integrate constant wheel rates and write a CSV");
  s->add_option("--params", sim.params, "Parameter file (key = value)");
  s->add_option("--u1", sim.u1, "Wheel 1 rate")->required();
  s->add_option("--u2", sim.u2, "Wheel 2 rate")->required();
  s->add_option("--T", sim.T, "Duration")->required();
  s->add_option("--dt", sim.dt, "Step")->capture_default_str();
  s->add_option("--out", sim.out, "Output CSV")->required();

  HolonomyArgs hol;
  auto* h = app.add_subcommand("holonomy", "Net displacement and rotation around a shape loop");
  h->add_option("loop", hol.loop, "rect-xy or rect-diag")
      ->required()
      ->check(CLI::IsMember({"rect-xy", "rect-diag"}));
  h->add_option("--alpha", hol.alpha, "First side (radians, or e.g. 7pi)")->required();
  h->add_option("--beta", hol.beta, "Second side")->required();
  h->add_option("--params", hol.params, "Parameter file");
  h->add_option("--numeric", hol.numeric, "Also integrate the loop with this step");

  std::string ctrl_params;
  std::size_t grid = 100;
  auto* c = app.add_subcommand("controllability", "Fiber controllability over a shape grid");
  c->add_option("--params", ctrl_params, "Parameter file");
  c->add_option("--grid", grid, "Points per axis")->capture_default_str()->check(CLI::PositiveNumber);

  OcpArgs ocp;
  auto* o = app.add_subcommand("ocp", "Minimum-energy transfer by multi-start shooting");
  o->add_option("--params", ocp.params, "Parameter file");
  o->add_option("--x0", ocp.x0, "Initial center position")->expected(2);
  o->add_option("--xT", ocp.xT, "Final center position")->expected(2)->required();
  o->add_option("--phi0", ocp.phi0, "Initial wheel angles")->expected(2);
  o->add_option("--phiT", ocp.phiT, "Final wheel angles")->expected(2)->required();
  o->add_option("--T", ocp.T, "Horizon")->capture_default_str();
  o->add_option("--dt", ocp.dt, "Step")->capture_default_str();
  o->add_flag("--exact", ocp.exact, "Emit the closed-form extremal where the branch allows");
  o->add_option("--seed", ocp.seed, "Seed for restart sampling")->capture_default_str();
  o->add_option("--restarts", ocp.restarts, "Random restarts")->capture_default_str();
  o->add_option("--out", ocp.out, "Output CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*s) {
      return run_simulate(sim);
    }
    if (*h) {
      return run_holonomy(hol);
    }
    if (*c) {
      return run_controllability(ctrl_params, grid);
    }
    return run_ocp(ocp);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NoConvergence& e) {
    std::cerr << "error: " << e.what() << " (best residual " << fmt(e.best_residual()) << ")\n";
    return kDomain;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
}
