#include "kinnet/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kinnet/error.hpp"

namespace kinnet {

namespace {

void check_law(double gamma, double alpha) {
  if (!(gamma > 0.0) || !(alpha > 0.0))
    throw Error(ErrorCode::invalid_argument, "stationary law needs gamma > 0 and alpha > 0");
}

// log rho(0..c_max) by the ratio recursion
// rho(c+1)/rho(c) = gamma/(c+1) * (alpha + c)/(alpha + gamma).
std::vector<double> log_rho_table(int c_max, double gamma, double alpha) {
  std::vector<double> lr(c_max + 1);
  lr[0] = -alpha * std::log1p(gamma / alpha);
  for (int c = 0; c < c_max; ++c)
    lr[c + 1] = lr[c] + std::log(gamma / (c + 1)) + std::log1p((c - gamma) / (alpha + gamma));
  return lr;
}

std::vector<double> normalize_log_profile(std::vector<double> logg, const OpinionGrid& grid) {
  double top = -std::numeric_limits<double>::infinity();
  for (double v : logg) top = std::max(top, v);
  if (!std::isfinite(top)) throw Error(ErrorCode::non_normalizable, "profile vanishes on every node");
  std::vector<double> g(logg.size());
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g[i] = std::exp(logg[i] - top);
  s *= grid.dw();
  for (double& v : g) v /= s;
  return g;
}

// x log(y) with the convention 0 log 0 = 0
double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

}  // namespace

double rho_inf(int c, double gamma, double alpha) {
  check_law(gamma, alpha);
  if (c < 0) return 0.0;
  return std::exp(log_rho_table(c, gamma, alpha)[c]);
}

std::vector<double> rho_inf_table(const StationaryDegreeLaw& law) {
  check_law(law.gamma, law.alpha);
  auto lr = log_rho_table(law.c_max, law.gamma, law.alpha);
  for (double& v : lr) v = std::exp(v);
  return lr;
}

std::vector<double> rho_inf_truncated(const StationaryDegreeLaw& law) {
  auto r = rho_inf_table(law);
  double s = 0.0;
  for (double v : r) s += v;
  for (double& v : r) v /= s;
  return r;
}

double truncation_deficit(const StationaryDegreeLaw& law) {
  const auto r = rho_inf_table(law);
  double s = 0.0;
  for (double v : r) s += v;
  return 1.0 - s;
}

double rho_inf_poisson(int c, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::invalid_argument, "Poisson law needs gamma > 0");
  if (c < 0) return 0.0;
  return std::exp(-gamma + c * std::log(gamma) - std::lgamma(c + 1.0));
}

double rho_inf_powerlaw(int c, double gamma, double alpha) {
  check_law(gamma, alpha);
  if (c < 1) throw Error(ErrorCode::out_of_domain, "power-law form is defined for c >= 1");
  return std::pow(alpha / gamma, alpha) * alpha / c;
}

std::vector<double> g_inf(const StationaryOpinionProfile& pr, const OpinionGrid& grid) {
  if (!(pr.sigma2 > 0.0)) throw Error(ErrorCode::invalid_argument, "stationary profile needs sigma2 > 0");
  const int n = grid.intervals();
  const double ninf = -std::numeric_limits<double>::infinity();
  std::vector<double> logg(grid.size(), ninf);
  const double q = pr.kappa / pr.sigma2;

  switch (pr.variant) {
    case StationaryOpinionProfile::Variant::case1: {
      if (!(pr.mbar > -1.0 && pr.mbar < 1.0)) throw Error(ErrorCode::invalid_argument, "mbar must lie in (-1,1)");
      for (int i = 1; i < n; ++i) {
        const double w = grid.node(i);
        // power exponents carry mbar q / 2; this makes the profile the zero-flux
        // solution for mbar != 0 as well
        logg[i] = (-2.0 + 0.5 * pr.mbar * q) * std::log1p(w) + (-2.0 - 0.5 * pr.mbar * q) * std::log1p(-w) -
                  q * (1.0 - pr.mbar * w) / ((1.0 - w) * (1.0 + w));
      }
      break;
    }
    case StationaryOpinionProfile::Variant::case2: {
      if (!(pr.mbar > -1.0 && pr.mbar < 1.0)) throw Error(ErrorCode::invalid_argument, "mbar must lie in (-1,1)");
      const double e_right = -2.0 + (1.0 - pr.mbar) * q;  // exponent of (1-w)
      const double e_left = -2.0 + (1.0 + pr.mbar) * q;   // exponent of (1+w)
      // Exponents in (-1,0) are integrable but infinite at a node, so the
      // nodal quadrature cannot represent them either.
      if (e_right < 0.0 || e_left < 0.0)
        throw Error(ErrorCode::non_normalizable,
                    "case2 profile is singular at the boundary (exponents " + std::to_string(e_left) + ", " +
                        std::to_string(e_right) + ")");
      for (int i = 0; i <= n; ++i) {
        const double w = grid.node(i);
        const double a = xlogy(e_right, 1.0 - w), b = xlogy(e_left, 1.0 + w);
        logg[i] = a + b;  // -inf at a boundary where the exponent is positive
      }
      break;
    }
    case StationaryOpinionProfile::Variant::generic: {
      const auto& D = pr.diffusion;
      auto hbar = [&](double v) { return pr.h == OpinionKernel::Kind::local ? 1.0 - v * v : 1.0; };
      auto integrand = [&](double v) {
        const double d = D(v, 0);
        return hbar(v) * (pr.mbar - v) / (d * d);
      };
      auto cell = [&](double a, double b) {
        return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 12, 1e-14);
      };
      auto log_at = [&](int i, double integral) {
        const double d = D(grid.node(i), 0);
        if (!(d > 0.0)) return ninf;
        return 2.0 * q * integral - 2.0 * std::log(d);
      };
      // accumulate outward from w = 0
      const int mid = n / 2;
      const double base = cell(0.0, grid.node(mid));
      auto interior = [&](int i) { return D(grid.node(i), 0) > 0.0; };
      double acc = base;
      if (interior(mid)) logg[mid] = log_at(mid, acc);
      for (int i = mid + 1; i <= n && interior(i); ++i) {
        acc += cell(grid.node(i - 1), grid.node(i));
        logg[i] = log_at(i, acc);
      }
      acc = base;
      for (int i = mid - 1; i >= 0 && interior(i); --i) {
        acc -= cell(grid.node(i), grid.node(i + 1));
        logg[i] = log_at(i, acc);
      }
      break;
    }
  }
  return normalize_log_profile(std::move(logg), grid);
}

DensityField f_inf_product(const std::vector<double>& rho, const std::vector<double>& g, const OpinionGrid& grid) {
  if (static_cast<int>(g.size()) != grid.size())
    throw Error(ErrorCode::invalid_argument, "opinion profile does not match the grid");
  DensityField f(grid, ConnectivityRange(static_cast<int>(rho.size()) - 1));
  for (int i = 0; i < f.rows(); ++i)
    for (int c = 0; c < f.cols(); ++c) f(i, c) = g[i] * rho[c];
  f.normalize();
  return f;
}

}  // namespace kinnet
