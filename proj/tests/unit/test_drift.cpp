#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "kinnet/drift.hpp"
#include "kinnet/reference.hpp"
#include "kinnet/stationary.hpp"

using namespace kinnet;

namespace {

std::vector<InteractionKernel> kernel_zoo() {
  return {
      {OpinionKernel::unity(), ConnectivityKernel::unity()},
      {OpinionKernel::local(), ConnectivityKernel::unity()},
      {OpinionKernel::bounded_confidence(0.25), ConnectivityKernel::unity()},
      {OpinionKernel::bounded_confidence_scaled(1.01), ConnectivityKernel::unity()},
      {OpinionKernel::local(), ConnectivityKernel::power(3.0, 3.0, false)},
      {OpinionKernel::bounded_confidence(0.4), ConnectivityKernel::power(1.0, 2.0, true)},
  };
}

}  // namespace

TEST_SUITE("drift") {
  TEST_CASE("fast operator agrees with the brute-force sum") {
    const auto f = kinnet::testing::random_field(24, 15, 21);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> uw(-1.0, 1.0);
    std::uniform_int_distribution<int> uc(0, 15);
    for (const auto& k : kernel_zoo()) {
      const auto P = compute_P_operator(f, k);
      for (int s = 0; s < 40; ++s) {
        // include nodes and half-points, where bounded confidence windows switch
        const double w = s % 4 == 0 ? f.grid().node(s % 25) : (s % 4 == 1 ? f.grid().half(s % 24) : uw(gen));
        const int c = uc(gen);
        const double ref = reference::policy_operator(f, k, w, c);
        CHECK(P(w, c) == doctest::Approx(ref).epsilon(1e-12).scale(1.0));
      }
    }
  }

  TEST_CASE("batch evaluation matches pointwise calls") {
    const auto f = kinnet::testing::random_field(16, 10, 2);
    const InteractionKernel k{OpinionKernel::bounded_confidence_scaled(1.0), ConnectivityKernel::unity()};
    const auto P = compute_P_operator(f, k);
    const std::vector<double> pts = {-0.9, -0.1, 0.0, 0.33, 0.99};
    std::vector<double> out(pts.size() * P.cols());
    P.evaluate(pts, out);
    for (std::size_t p = 0; p < pts.size(); ++p)
      for (int c = 0; c < P.cols(); ++c) CHECK(out[p * P.cols() + c] == doctest::Approx(P(pts[p], c)).epsilon(1e-14));
  }

  TEST_CASE("factorized kernel on a product field") {
    // P = (1 - w^2) left(c) right(c*), f = g rho: P[f] = kappa(c) (1 - w^2)(m - w)
    const OpinionGrid grid(40);
    std::vector<double> g(grid.size());
    for (int i = 0; i < grid.size(); ++i) g[i] = std::exp(-4.0 * (grid.node(i) - 0.3) * (grid.node(i) - 0.3));
    const auto rho = rho_inf_truncated({10.0, 0.5, 50});
    const auto f = f_inf_product(rho, g, grid);
    double mass_g = 0.0, m = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      mass_g += grid.dw() * g[i];
      m += grid.dw() * grid.node(i) * g[i];
    }
    m /= mass_g;
    const InteractionKernel k{OpinionKernel::local(), ConnectivityKernel::power(2.0, 1.0, false)};
    double kbar = 0.0;
    for (int c = 0; c <= 50; ++c) kbar += k.k.right(c, 50) * rho[c];
    const auto P = compute_P_operator(f, k);
    for (int c : {0, 3, 25, 50})
      for (double w : {-0.7, 0.0, 0.45}) {
        const double expect = k.k.left(c, 50) * kbar * (1.0 - w * w) * (m - w);
        CHECK(std::abs(P(w, c) - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
      }
  }

  TEST_CASE("unity kernel gives the mean-field pull") {
    const auto f = kinnet::testing::random_field(20, 5, 8);
    double m = 0.0;
    for (int i = 0; i < f.rows(); ++i)
      for (int c = 0; c < f.cols(); ++c) m += f.grid().dw() * f.grid().node(i) * f(i, c);
    const auto P = compute_P_operator(f, InteractionKernel{});
    CHECK(P.c_independent());
    CHECK(P(0.2, 3) == doctest::Approx(m - 0.2).epsilon(1e-13));
  }
}
