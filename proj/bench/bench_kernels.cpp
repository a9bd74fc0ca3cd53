// Serial reference kernels against the OpenMP ones. Sizes follow the test2
// grid (N = 80, c_max = 250) unless the reference would take minutes.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "kinnet/drift.hpp"
#include "kinnet/fp_solver.hpp"
#include "kinnet/mc_solver.hpp"
#include "kinnet/network.hpp"
#include "kinnet/reference.hpp"

using namespace kinnet;

namespace {

DensityField field(int n, int c_max) {
  DensityField f{OpinionGrid(n), ConnectivityRange(c_max)};
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (double& v : f.values()) v = u(gen);
  f.normalize();
  return f;
}

// half the positivity bound of the starting field
double safe_dt(const DensityField& f, const FpModel& m) {
  return 0.5 * explicit_dt_bound(assemble_coefficients(f, m), f.grid());
}

FpModel leader_model() {
  FpModel m;
  m.kernel = {OpinionKernel::local(), ConnectivityKernel::power(3.0, 3.0, false)};
  m.sigma2 = 5e-3;
  return m;
}

ModelParams network_params() {
  ModelParams p;
  p.rate_r = p.rate_a = 10.0;
  p.gamma_policy = GammaPolicy::pinned;
  return p;
}

// P[f] at every half-point and c
void BM_policy_reference(benchmark::State& st) {
  const auto f = field(40, static_cast<int>(st.range(0)));
  const auto m = leader_model();
  for (auto _ : st) {
    double s = 0.0;
    for (int h = 0; h < f.grid().intervals(); ++h)
      for (int c = 0; c < f.cols(); ++c) s += reference::policy_operator(f, m.kernel, f.grid().half(h), c);
    benchmark::DoNotOptimize(s);
  }
}
void BM_policy_parallel(benchmark::State& st) {
  const auto f = field(40, static_cast<int>(st.range(0)));
  const auto m = leader_model();
  std::vector<double> pts(f.grid().intervals());
  for (int h = 0; h < f.grid().intervals(); ++h) pts[h] = f.grid().half(h);
  std::vector<double> out(pts.size() * f.cols());
  for (auto _ : st) {
    const auto P = compute_P_operator(f, m.kernel);
    P.evaluate(pts, out);
    benchmark::DoNotOptimize(out.data());
  }
}

void BM_explicit_reference(benchmark::State& st) {
  auto f = field(40, static_cast<int>(st.range(0)));
  const auto m = leader_model();
  const double dt = safe_dt(f, m);
  for (auto _ : st) {
    reference::explicit_opinion_step(f, m, dt);
    benchmark::DoNotOptimize(f.values().data());
  }
}
void BM_explicit_parallel(benchmark::State& st) {
  auto f = field(40, static_cast<int>(st.range(0)));
  const auto m = leader_model();
  const double dt = safe_dt(f, m);
  for (auto _ : st) {
    explicit_opinion_step(f, m, dt);
    benchmark::DoNotOptimize(f.values().data());
  }
}

void BM_implicit_reference(benchmark::State& st) {
  auto f = field(80, 250);
  const auto p = network_params();
  for (auto _ : st) {
    reference::implicit_network_step(f, p, 1e-3);
    benchmark::DoNotOptimize(f.values().data());
  }
}
void BM_implicit_parallel(benchmark::State& st) {
  auto f = field(80, 250);
  const auto p = network_params();
  for (auto _ : st) {
    implicit_network_step(f, p, 1e-3);
    benchmark::DoNotOptimize(f.values().data());
  }
}

void BM_collision_reference(benchmark::State& st) {
  auto e = sample_initial(field(80, 250), static_cast<std::size_t>(st.range(0)), 3, ModelParams{});
  const InteractionKernel k{OpinionKernel::bounded_confidence(0.25), ConnectivityKernel::unity()};
  for (auto _ : st) reference::collision_step(e, 0.01, k, DiffusionFunction::one_minus_w2(), 0.01, 0.05);
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
void BM_collision_parallel(benchmark::State& st) {
  auto e = sample_initial(field(80, 250), static_cast<std::size_t>(st.range(0)), 3, ModelParams{});
  const InteractionKernel k{OpinionKernel::bounded_confidence(0.25), ConnectivityKernel::unity()};
  for (auto _ : st) collision_step(e, 0.01, k, DiffusionFunction::one_minus_w2(), 0.01, 0.05);
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

}  // namespace

BENCHMARK(BM_policy_reference)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_policy_parallel)->Arg(10)->Arg(40)->Arg(250)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_explicit_reference)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_explicit_parallel)->Arg(10)->Arg(250)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_implicit_reference)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_implicit_parallel)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_collision_reference)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_collision_parallel)->Arg(100000)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
