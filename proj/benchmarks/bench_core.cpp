#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <random>

#include "sqz/bogoliubov.hpp"
#include "sqz/flow.hpp"
#include "sqz/geometry.hpp"
#include "sqz/squeezed.hpp"
#include "sqz/weber.hpp"

using namespace sqz;
using Complex = std::complex<double>;

namespace {

Eigen::MatrixXcd random_symmetric_contraction(std::mt19937_64& rng, int n, double top) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Complex(unit(rng), unit(rng));
  m = (0.5 * (m + m.transpose())).eval();
  return m * (top / m.jacobiSvd().singularValues()(0));
}

void bm_integrate_fundamental(benchmark::State& state) {
  const flow::FrequencyProfile prof{1.0, 0.0};
  const double horizon = static_cast<double>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(flow::integrate_fundamental(prof, horizon, 1e-10));
}
BENCHMARK(bm_integrate_fundamental)->Arg(10)->Arg(40)->Arg(80);

void bm_propagator_symmetric(benchmark::State& state) {
  const flow::FrequencyProfile prof{1.0, 1.0};
  for (auto _ : state)
    benchmark::DoNotOptimize(flow::propagator(prof, -40.0, 40.0, 1e-10));
}
BENCHMARK(bm_propagator_symmetric);

void bm_hyp_m_series(benchmark::State& state) {
  const Complex a(0.25, 0.25), b(0.5, 0.0);
  const Complex z(0.0, static_cast<double>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(weber::hyp_m_series(a, b, z));
}
BENCHMARK(bm_hyp_m_series)->Arg(4)->Arg(16)->Arg(30);

void bm_hyp_m_asymptotic(benchmark::State& state) {
  const Complex a(0.25, 0.25), b(0.5, 0.0), z(0.0, 400.0);
  for (auto _ : state) benchmark::DoNotOptimize(weber::hyp_m_asymptotic(a, b, z));
}
BENCHMARK(bm_hyp_m_asymptotic);

void bm_even_solution(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(weber::even_solution(4.5, 1.0));
}
BENCHMARK(bm_even_solution);

void bm_diagonalize(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const int n = static_cast<int>(state.range(0));
  const auto phi = bogoliubov::phi_from_z({random_symmetric_contraction(rng, n, 0.6)});
  std::vector<double> rho(static_cast<size_t>(n), 0.4);
  const auto moved = bogoliubov::act_on_state(phi, bogoliubov::gauge_state(rho));
  for (auto _ : state) benchmark::DoNotOptimize(bogoliubov::diagonalize(moved, 1e-10));
}
BENCHMARK(bm_diagonalize)->Arg(2)->Arg(6);

void bm_takagi(benchmark::State& state) {
  std::mt19937_64 rng(8);
  const bogoliubov::ZMatrix z{
      random_symmetric_contraction(rng, static_cast<int>(state.range(0)), 0.8)};
  for (auto _ : state) benchmark::DoNotOptimize(bogoliubov::takagi(z));
}
BENCHMARK(bm_takagi)->Arg(4)->Arg(8);

void bm_fock_oracle(benchmark::State& state) {
  const flow::SqueezeParam tau{0.8, 2.1};
  const int dim = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(squeezed::fock_oracle(tau, dim));
}
BENCHMARK(bm_fock_oracle)->Arg(64)->Arg(128);

void bm_occupation_probs(benchmark::State& state) {
  const flow::SqueezeParam tau{0.88, 0.3};
  for (auto _ : state) benchmark::DoNotOptimize(squeezed::occupation_probs(tau, 400));
}
BENCHMARK(bm_occupation_probs);

void bm_fd_check(benchmark::State& state) {
  std::mt19937_64 rng(9);
  const bogoliubov::ZMatrix z{random_symmetric_contraction(rng, 3, 0.6)};
  const auto t1 = random_symmetric_contraction(rng, 3, 1.0);
  const auto t2 = random_symmetric_contraction(rng, 3, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(geometry::fd_check(z, t1, t2, 1e-4));
}
BENCHMARK(bm_fd_check);

}  // namespace

BENCHMARK_MAIN();
