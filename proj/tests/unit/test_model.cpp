#include <doctest.h>

#include <numeric>

#include "helpers.hpp"
#include "kinnet/error.hpp"
#include "kinnet/initial_data.hpp"
#include "kinnet/marginals.hpp"
#include "kinnet/model.hpp"

using namespace kinnet;

TEST_SUITE("model") {
  TEST_CASE("grid nodes are symmetric and hit the endpoints") {
    const OpinionGrid g(80);
    CHECK(g.size() == 81);
    CHECK(g.dw() == doctest::Approx(0.025));
    CHECK(g.node(0) == -1.0);
    CHECK(g.node(80) == 1.0);
    CHECK(g.node(40) == 0.0);
    for (int i = 0; i <= 80; ++i) CHECK(g.node(i) == -g.node(80 - i));
    CHECK(g.half(0) == doctest::Approx(-1.0 + 0.0125));
    CHECK(g.quarter(3, 2) == doctest::Approx(g.half(3)));
    CHECK(g.quarter(3, 4) == doctest::Approx(g.node(4)));
  }

  TEST_CASE("degenerate sizes are rejected") {
    CHECK_THROWS_AS(OpinionGrid(1), Error);
    CHECK_THROWS_AS(ConnectivityRange(0), Error);
  }

  TEST_CASE("mass is the dw-weighted node sum") {
    DensityField f{OpinionGrid(10), ConnectivityRange(3)};
    for (double& v : f.values()) v = 1.0;
    CHECK(f.mass() == doctest::Approx(0.2 * 11 * 4));
    f.normalize();
    CHECK(f.mass() == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("normalize refuses a zero field") {
    DensityField f{OpinionGrid(10), ConnectivityRange(3)};
    try {
      f.normalize();
      FAIL("expected zero_mass");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::zero_mass);
    }
  }

  TEST_CASE("parameter validation") {
    ModelParams p;
    CHECK_NOTHROW(p.validate());
    p.alpha = 0.0;
    CHECK_THROWS_AS(p.validate(), Error);
    p = {};
    p.eta = 0.5;
    CHECK_THROWS_AS(p.validate(), Error);
    p = {};
    p.rate_r = -1.0;
    CHECK_THROWS_AS(p.validate(), Error);
  }

  TEST_CASE("presets have unit mass") {
    const OpinionGrid grid(80);
    const ConnectivityRange cr(250);
    for (auto kind : {InitialKind::test1_g0, InitialKind::test2_f0, InitialKind::test3_f0, InitialKind::test4_uniform,
                      InitialKind::dirac}) {
      InitialDataSetup s;
      s.kind = kind;
      const auto f = make_initial(s, grid, cr);
      CHECK(std::abs(f.mass() - 1.0) <= 1e-12);
      CHECK(f.min() >= 0.0);
    }
  }

  TEST_CASE("test2 degree law: support and mixture weights") {
    const OpinionGrid grid(80);
    const auto f = test2_initial(grid, ConnectivityRange(250), 6e-2, 30.0);
    const auto rho = marginal_rho(f);
    CHECK(std::accumulate(rho.begin(), rho.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rho[0] == 0.0);
    CHECK(rho[1] > 0.0);
    CHECK(rho[79] > 0.0);
    for (int c = 80; c <= 250; ++c) CHECK(rho[c] == 0.0);
    // rows below 20 only see the first component
    const auto g = marginal_g(f);
    double mbar = 0.0;
    for (int i = 0; i < grid.size(); ++i) mbar += grid.dw() * grid.node(i) * g[i];
    CHECK(mbar == doctest::Approx(-1.0 / 6.0).epsilon(0.03));
  }

  TEST_CASE("test3 mean is the follower/leader mix") {
    const OpinionGrid grid(80);
    const auto f = test3_initial(grid, ConnectivityRange(250), 4e-2, 2.5e-2, 30.0, 1e-4);
    const auto g = marginal_g(f);
    double mbar = 0.0;
    for (int i = 0; i < grid.size(); ++i) mbar += grid.dw() * grid.node(i) * g[i];
    CHECK(mbar > -0.5);
    CHECK(mbar < 0.75);
  }

  TEST_CASE("dirac sits on a single cell") {
    const auto f = dirac_initial(OpinionGrid(40), ConnectivityRange(50), 0.3, 7);
    int nonzero = 0;
    for (double v : f.values()) nonzero += v > 0.0;
    CHECK(nonzero == 1);
    CHECK(f(26, 7) > 0.0);  // w_26 = 0.3
  }
}
