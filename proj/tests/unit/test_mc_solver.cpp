#include <doctest.h>

#include <cmath>
#include <omp.h>

#include "helpers.hpp"
#include "kinnet/diagnostics.hpp"
#include "kinnet/error.hpp"
#include "kinnet/marginals.hpp"
#include "kinnet/mc_solver.hpp"
#include "kinnet/stationary.hpp"

using namespace kinnet;

namespace {

DensityField smooth_product(int n, int c_max) {
  const OpinionGrid grid(n);
  std::vector<double> g(grid.size());
  for (int i = 0; i < grid.size(); ++i) g[i] = std::exp(-8.0 * (grid.node(i) - 0.2) * (grid.node(i) - 0.2));
  std::vector<double> rho(c_max + 1);
  for (int c = 0; c <= c_max; ++c) rho[c] = rho_inf_poisson(c, 6.0);
  return f_inf_product(rho, g, grid);
}

ModelParams pinned(double rate) {
  ModelParams p;
  p.gamma_policy = GammaPolicy::pinned;
  p.gamma_ref = 30.0;
  p.alpha = 0.1;
  p.rate_r = p.rate_a = rate;
  return p;
}

}  // namespace

TEST_SUITE("mc_solver") {
  TEST_CASE("sampling reproduces both marginals") {
    const auto f = smooth_product(40, 20);
    const auto e = sample_initial(f, 100000, 7, ModelParams{});
    const auto h = reconstruct_density(e, f.grid(), f.crange());
    CHECK(h.mass() == doctest::Approx(1.0).epsilon(1e-12));
    const double eg = l1_relative_error(marginal_g(h), marginal_g(f));
    const double er = l1_relative_error(marginal_rho(h), marginal_rho(f));
    MESSAGE("g L1 " << eg << ", rho L1 " << er);
    CHECK(eg <= 0.02);
    CHECK(er <= 0.02);
    for (double w : e.w) CHECK_UNARY(w >= -1.0 && w <= 1.0);
  }

  TEST_CASE("sampling rejects odd counts and empty fields") {
    const auto f = smooth_product(10, 5);
    CHECK_THROWS_AS(sample_initial(f, 11, 1, ModelParams{}), Error);
    DensityField z{OpinionGrid(10), ConnectivityRange(5)};
    CHECK_THROWS_AS(sample_initial(z, 10, 1, ModelParams{}), Error);
  }

  TEST_CASE("same seed, same trajectory; thread count does not matter") {
    const auto f = smooth_product(20, 20);
    McSchedule s;
    s.t_end = 0.2;
    s.dt = 0.01;
    s.epsilon = 0.05;
    auto run = [&](std::uint64_t seed, int threads) {
      omp_set_num_threads(threads);
      auto e = sample_initial(f, 2000, seed, pinned(1.0));
      run_mc(e, s);
      return e;
    };
    const auto a = run(42, 1), b = run(42, 3), c = run(43, 1);
    CHECK(a.w == b.w);
    CHECK(a.c == b.c);
    CHECK(a.w != c.w);
    omp_set_num_threads(omp_get_num_procs());
  }

  TEST_CASE("attachment probability per step") {
    // c = 30, dt = 0.1, V_a = 1, alpha = 0.1, gamma = 30: p = 0.1 * 30.1 / 30.1
    Ensemble e;
    e.crange = ConnectivityRange(250);
    e.params = pinned(1.0);
    e.params.rate_r = 0.0;
    e.seed = 99;
    const std::size_t n = 100000;
    e.w.assign(n, 0.0);
    e.c.assign(n, 30);
    network_step(e, 0.1);
    double up = 0.0;
    for (int c : e.c) up += c == 31;
    const double p = up / n, se = std::sqrt(0.1 * 0.9 / n);
    CHECK(std::abs(p - 0.1) <= 3.0 * se);
  }

  TEST_CASE("network step bound is enforced") {
    Ensemble e;
    e.crange = ConnectivityRange(250);
    e.params = pinned(1.0);
    e.w.assign(4, 0.0);
    e.c.assign(4, 3);
    const double bound = network_dt_bound(30.0, e.params, 250);
    CHECK(bound == doctest::Approx(30.0 / 250.0));
    try {
      network_step(e, 2.0 * bound);
      FAIL("expected time_step");
    } catch (const Error& err) {
      CHECK(err.code() == ErrorCode::time_step);
      CHECK(err.admissible_dt() == doctest::Approx(bound));
    }
    e.params.rate_mode = RateMode::remark1;
    CHECK_THROWS_AS(network_step(e, 0.5 * bound), Error);
  }

  TEST_CASE("collision step preconditions") {
    Ensemble e;
    e.w.assign(4, 0.0);
    e.c.assign(4, 0);
    const auto D = DiffusionFunction::one_minus_w2();
    CHECK_THROWS_AS(collision_step(e, 0.2, InteractionKernel{}, D, 0.1, 0.05), Error);
    const InteractionKernel unbounded{OpinionKernel::unity(), ConnectivityKernel::power(1.0, 1.0, false)};
    CHECK_THROWS_AS(collision_step(e, 0.1, unbounded, D, 0.1, 0.05), Error);
    CHECK_THROWS_AS(collision_step(e, 0.1, InteractionKernel{}, D, 0.0, 0.05), Error);
  }

  TEST_CASE("noisy collisions keep opinions inside [-1, 1]") {
    const auto f = smooth_product(20, 10);
    auto e = sample_initial(f, 20000, 3, ModelParams{});
    for (int s = 0; s < 50; ++s) collision_step(e, 0.1, InteractionKernel{}, DiffusionFunction::one_minus_w2(), 0.1, 0.5);
    for (double w : e.w) CHECK_UNARY(std::abs(w) <= 1.0);
  }

  TEST_CASE("degree mean stays put under balanced rates") {
    const std::size_t n = 20000;
    const auto rho = rho_inf_truncated({30.0, 0.1, 250});
    DensityField f{OpinionGrid(10), ConnectivityRange(250)};
    for (int i = 0; i <= 10; ++i)
      for (int c = 0; c <= 250; ++c) f(i, c) = rho[c];
    f.normalize();
    auto e = sample_initial(f, n, 5, pinned(1.0));
    const double g0 = e.mean_connectivity();
    for (int s = 0; s < 1000; ++s) network_step(e, 0.01);
    double var = 0.0;
    for (int c = 0; c <= 250; ++c) var += rho[c] * (c - mean_connectivity(rho)) * (c - mean_connectivity(rho));
    const double se = std::sqrt(2.0 * var / n);
    MESSAGE("gamma drift " << e.mean_connectivity() - g0 << " vs 3 SE " << 3.0 * se);
    CHECK(std::abs(e.mean_connectivity() - g0) <= 3.0 * se);
  }

  TEST_CASE("landing on output times never oversteps epsilon") {
    const auto f = smooth_product(10, 10);
    auto e = sample_initial(f, 100, 2, pinned(1.0));
    McSchedule s;
    s.t_end = 10.0;
    s.dt = s.epsilon = 0.005;
    for (int k = 1; k <= 100; ++k) s.snapshot_times.push_back(std::min(10.0, k * 0.1));
    long snaps = 0;
    CHECK_NOTHROW(run_mc(e, s, [&](double, const Ensemble&, long) { ++snaps; }));
    CHECK(snaps == 101);
  }

  TEST_CASE("run stops exactly on snapshot times") {
    const auto f = smooth_product(20, 20);
    auto e = sample_initial(f, 200, 1, pinned(1.0));
    McSchedule s;
    s.t_end = 0.35;
    s.dt = 0.1;
    s.epsilon = 0.1;
    std::vector<double> seen;
    const auto res = run_mc(e, s, [&](double t, const Ensemble&, long) { seen.push_back(t); });
    CHECK(seen == std::vector<double>{0.0});
    CHECK(res.steps == 4);
    s.snapshot_times = {0.15, 0.35};
    seen.clear();
    run_mc(e, s, [&](double t, const Ensemble&, long) { seen.push_back(t); });
    CHECK(seen == std::vector<double>{0.0, 0.15, 0.35});
  }
}
