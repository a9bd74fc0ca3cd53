#include <doctest.h>

#include <cmath>

#include "kinnet/error.hpp"
#include "kinnet/marginals.hpp"
#include "kinnet/stationary.hpp"

using namespace kinnet;

// Reference values computed once at 30 digits from the negative-binomial pmf
// and from direct quadrature of the zero-flux ODE (sigma2/2)(D^2 g)' = (m - w) g.
TEST_SUITE("stationary") {
  TEST_CASE("degree law point values") {
    CHECK(rho_inf(0, 30.0, 0.1) == doctest::Approx(0.565123478059662280).epsilon(1e-13));
    CHECK(rho_inf(1, 30.0, 0.1) == doctest::Approx(0.0563245991421590313).epsilon(1e-13));
    CHECK(rho_inf(30, 30.0, 0.1) == doctest::Approx(0.00251409679990346431).epsilon(1e-12));
    CHECK(rho_inf(-1, 30.0, 0.1) == 0.0);
    CHECK_THROWS_AS(rho_inf(0, 30.0, 0.0), Error);
  }

  TEST_CASE("truncation at 250 keeps most but not all mass") {
    const StationaryDegreeLaw law{30.0, 0.1, 250};
    CHECK(truncation_deficit(law) == doctest::Approx(1.0 - 0.968277022821726295).epsilon(1e-10));
    const auto r = rho_inf_truncated(law);
    double s = 0.0;
    for (double v : r) s += v;
    CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(mean_connectivity(r) == doctest::Approx(16.0843481198859951).epsilon(1e-11));
  }

  TEST_CASE("mean equals gamma once the tail is resolved") {
    const auto r = rho_inf_table({30.0, 0.1, 20000});
    CHECK(std::abs(mean_connectivity(r) - 30.0) <= 1e-6);
  }

  TEST_CASE("large alpha approaches Poisson") {
    // relative gap is ((c - gamma)^2 - c) / (2 alpha) to leading order, so it
    // stays below 1e-3 only up to c = 70
    double worst = 0.0;
    for (int c = 0; c <= 70; ++c) {
      const double p = rho_inf_poisson(c, 30.0);
      worst = std::max(worst, std::abs(rho_inf(c, 30.0, 1e6) - p) / p);
    }
    CHECK(worst < 1e-3);
    const double gap100 = rho_inf(100, 30.0, 1e6) / rho_inf_poisson(100, 30.0) - 1.0;
    CHECK(gap100 == doctest::Approx((70.0 * 70.0 - 100.0) / 2e6).epsilon(0.02));
  }

  TEST_CASE("power-law limit") {
    CHECK(rho_inf_powerlaw(10, 30.0, 1e-3) == doctest::Approx(std::pow(1e-3 / 30.0, 1e-3) * 1e-4));
    CHECK_THROWS_AS(rho_inf_powerlaw(0, 30.0, 1e-3), Error);
    // c rho_inf(c) is nearly flat when alpha is tiny
    const double a = rho_inf(5, 30.0, 1e-3) * 5, b = rho_inf(20, 30.0, 1e-3) * 20;
    CHECK(a / b == doctest::Approx(1.0).epsilon(2e-3));
    CHECK(rho_inf(10, 30.0, 1e-3) == doctest::Approx(rho_inf_powerlaw(10, 30.0, 1e-3)).epsilon(2e-2));
  }

  TEST_CASE("case1 profile against quadrature") {
    const OpinionGrid grid(80);
    StationaryOpinionProfile pr;
    pr.mbar = 0.1;
    pr.sigma2 = 0.05;
    const auto g = g_inf(pr, grid);
    CHECK(g[0] == 0.0);
    CHECK(g[80] == 0.0);
    CHECK(g[10] == doctest::Approx(3.3228021544715810e-13).epsilon(1e-9));
    CHECK(g[20] == doctest::Approx(4.0136642984577185e-4).epsilon(1e-10));
    CHECK(g[40] == doctest::Approx(2.019020284314861382).epsilon(1e-10));
    CHECK(g[44] == doctest::Approx(2.5177955908652717072).epsilon(1e-10));
    CHECK(g[60] == doctest::Approx(0.051987887835751933).epsilon(1e-10));
  }

  TEST_CASE("generic variant reproduces case1") {
    const OpinionGrid grid(80);
    StationaryOpinionProfile a;
    a.mbar = -0.2;
    StationaryOpinionProfile b = a;
    b.variant = StationaryOpinionProfile::Variant::generic;
    const auto ga = g_inf(a, grid), gb = g_inf(b, grid);
    for (int i = 0; i <= 80; ++i) CHECK(std::abs(ga[i] - gb[i]) <= 1e-8 * std::max(1.0, ga[i]));
  }

  TEST_CASE("case2 is a beta profile") {
    const OpinionGrid grid(40);
    StationaryOpinionProfile pr;
    pr.variant = StationaryOpinionProfile::Variant::case2;
    pr.mbar = 0.0;
    pr.sigma2 = 0.25;  // exponents -2 + 4 = 2
    const auto g = g_inf(pr, grid);
    const double ratio = g[30] / g[20];  // ((1-w)(1+w))^2 at w = 0.5 vs 0
    CHECK(ratio == doctest::Approx(0.5625).epsilon(1e-12));
    pr.sigma2 = 1.0;  // exponent -1: singular
    CHECK_THROWS_AS(g_inf(pr, grid), Error);
  }

  TEST_CASE("product field has the requested marginals") {
    const OpinionGrid grid(20);
    StationaryOpinionProfile pr;
    const auto g = g_inf(pr, grid);
    const auto rho = rho_inf_truncated({30.0, 0.1, 100});
    const auto f = f_inf_product(rho, g, grid);
    CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-14));
    const auto r = marginal_rho(f);
    for (int c = 0; c <= 100; ++c) CHECK(r[c] == doctest::Approx(rho[c]).epsilon(1e-12));
  }
}
