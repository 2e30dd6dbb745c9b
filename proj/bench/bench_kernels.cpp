// Serial reference against the OpenMP kernels. Set OMP_NUM_THREADS to vary
// the thread count.

#include <benchmark/benchmark.h>

#include <numbers>

#include "sphero/connection.hpp"
#include "sphero/shooting.hpp"

using namespace sphero;

namespace {

void BM_CertifyGridSerial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_grid_serial(RobotParams{}, n));
  }
}

void BM_CertifyGridParallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(certify_grid(RobotParams{}, n));
  }
}

BvpProblem transfer() {
  BvpProblem prob;
  prob.xT = Vec2(1.0, 1.0);
  prob.phiT = {10.0 * std::numbers::pi, 10.0 * std::numbers::pi};
  prob.T = 10.0;
  prob.dt = 1e-3;
  return prob;
}

ShootingOptions options(benchmark::State& state) {
  ShootingOptions opt;
  opt.restarts = static_cast<int>(state.range(0));
  return opt;
}

const Costate kGuess{std::numbers::pi, std::numbers::pi, Vec2::Zero()};

void BM_ShootingSerial(benchmark::State& state) {
  const BvpProblem prob = transfer();
  const ShootingOptions opt = options(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bvp_serial(prob, kGuess, opt));
  }
}

void BM_ShootingParallel(benchmark::State& state) {
  const BvpProblem prob = transfer();
  const ShootingOptions opt = options(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_bvp(prob, kGuess, opt));
  }
}

}  // namespace

BENCHMARK(BM_CertifyGridSerial)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CertifyGridParallel)->Arg(100)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ShootingSerial)->Arg(8)->Unit(benchmark::kSecond)->Iterations(1);
BENCHMARK(BM_ShootingParallel)->Arg(8)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
