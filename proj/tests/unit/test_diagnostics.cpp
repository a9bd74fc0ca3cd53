#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "kinnet/diagnostics.hpp"
#include "kinnet/error.hpp"
#include "kinnet/marginals.hpp"
#include "kinnet/stationary.hpp"

using namespace kinnet;

namespace {

std::vector<double> bumps(const std::vector<std::pair<double, double>>& centres_heights, int n = 200) {
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double w = -1.0 + 2.0 * i / n;
    for (auto [c, h] : centres_heights) g[i] += h * std::exp(-(w - c) * (w - c) / 0.002);
  }
  return g;
}

}  // namespace

TEST_SUITE("diagnostics") {
  TEST_CASE("moments of a product field") {
    const OpinionGrid grid(40);
    std::vector<double> g(grid.size(), 1.0);
    const auto rho = rho_inf_truncated({5.0, 1.0, 30});
    const auto f = f_inf_product(rho, g, grid);
    const auto r = compute_moments(f, 2.5);
    CHECK(r.t == 2.5);
    CHECK(r.mass == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(r.gamma == doctest::Approx(mean_connectivity(rho)).epsilon(1e-13));
    CHECK(std::abs(r.total_mean) <= 1e-15);
    // E = sum_c E_w(c) = dw sum w^2 g / (dw sum g) on a flat profile
    double s = 0.0, e = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      s += 1.0;
      e += grid.node(i) * grid.node(i);
    }
    double total_E = 0.0;
    for (double v : r.E_w) total_E += v;
    CHECK(total_E == doctest::Approx(e / s).epsilon(1e-13));
  }

  TEST_CASE("relative L1 error") {
    CHECK(l1_relative_error({1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}) == 0.0);
    CHECK(l1_relative_error({1.0, 1.0}, {2.0, 2.0}) == doctest::Approx(0.5));
  }

  TEST_CASE("cluster counting") {
    CHECK(count_clusters(bumps({{0.0, 1.0}})) == 1);
    CHECK(count_clusters(bumps({{-0.5, 1.0}, {0.5, 0.7}})) == 2);
    CHECK(count_clusters(bumps({{-0.6, 1.0}, {0.0, 0.5}, {0.6, 1.0}})) == 3);
    // a bump below 10% of the peak is noise
    CHECK(count_clusters(bumps({{-0.5, 1.0}, {0.5, 0.05}})) == 1);
    CHECK(count_clusters(bumps({{-0.5, 1.0}, {0.5, 0.05}}), 0.01) == 2);
    // a flat top counts once, an end node counts when it beats its neighbour
    CHECK(count_clusters({0.0, 1.0, 1.0, 1.0, 0.0}, 0.1, false) == 1);
    CHECK(count_clusters({3.0, 1.0, 0.0, 1.0, 0.0}, 0.1, false) == 2);
  }

  TEST_CASE("moment system: mass, mean and variance") {
    const int C = 40;
    ModelParams p;
    p.alpha = 0.5;
    p.eta = 0.25;
    p.lambda_freq = 1.0;
    auto rho = rho_inf_truncated({8.0, 0.5, C});
    std::vector<double> m(C + 1), E(C + 1);
    for (int c = 0; c <= C; ++c) {
      const double w = std::sin(0.3 * c);
      m[c] = rho[c] * w;
      E[c] = rho[c] * (w * w + 0.1);
    }
    double M0 = 0.0, S0 = 0.0;
    for (int c = 0; c <= C; ++c) {
      M0 += m[c];
      S0 += E[c];
    }
    const auto traj = solve_moment_system(rho, m, E, p, 1.0, {0.5, 1.0}, 1e-4);
    REQUIRE(traj.records.size() == 3);
    const auto& last = traj.records.back();
    CHECK(last.t == doctest::Approx(1.0));
    CHECK(std::abs(last.mass - 1.0) <= 1e-12);
    CHECK(std::abs(last.total_mean - M0) <= 1e-12);
    // with R = 1 the total variance obeys V' = -2 eta lambda (1 - eta) V
    double S = 0.0;
    for (double v : last.E_w) S += v;
    const double V0 = S0 - M0 * M0, V = S - M0 * M0;
    CHECK(V == doctest::Approx(V0 * std::exp(-2.0 * 0.25 * 0.75)).epsilon(1e-5));
  }

  TEST_CASE("moment system rejects non-constant rates") {
    ModelParams p;
    p.rate_mode = RateMode::remark1;
    const std::vector<double> v(5, 0.2);
    CHECK_THROWS_AS(solve_moment_system(v, v, v, p, 1.0, {}), Error);
  }
}
