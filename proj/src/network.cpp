#include "kinnet/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kinnet/error.hpp"
#include "kinnet/marginals.hpp"

namespace kinnet {

namespace {

void row_operator(const double* f, int c_max, double vr, double va, double alpha, double beta, double* out) {
  if (c_max == 0) {
    out[0] = 0.0;
    return;
  }
  out[0] = -vr * (1.0 + beta) * f[1] + va * alpha * f[0];
  for (int c = 1; c < c_max; ++c) {
    out[c] = -vr * ((c + 1 + beta) * f[c + 1] - (c + beta) * f[c]) -
             va * ((c - 1 + alpha) * f[c - 1] - (c + alpha) * f[c]);
  }
  out[c_max] = vr * (c_max + beta) * f[c_max] - va * (c_max - 1 + alpha) * f[c_max - 1];
}

void check_gamma(double g, const ModelParams& p) {
  if (!(g + p.beta > 0.0) || !(g + p.alpha > 0.0))
    throw Error(ErrorCode::degenerate_connectivity,
                "gamma + beta and gamma + alpha must be positive (gamma = " + std::to_string(g) + ")");
}

}  // namespace

double rate_gamma(const DensityField& f, const ModelParams& p) {
  return p.gamma_policy == GammaPolicy::pinned ? p.gamma_ref : gamma(f);
}

NetworkCoefficients network_coefficients(const DensityField& f, const ModelParams& p) {
  const int n = f.rows();
  NetworkCoefficients k{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  if (p.rate_mode == RateMode::constant) {
    const double g = rate_gamma(f, p);
    check_gamma(g, p);
    std::fill(k.vr.begin(), k.vr.end(), 2.0 * p.rate_r / (g + p.beta));
    std::fill(k.va.begin(), k.va.end(), 2.0 * p.rate_a / (g + p.alpha));
    return k;
  }
  // Degree-scaled (remark1) rates. The global gamma cancels in the prefactor, leaving
  // v_r = 2U_r/(gamma_f + beta g), v_a = 2U_a/(gamma_f + alpha g). Under the
  // pinned policy gamma_f is taken as gamma_ref g.
  const auto g = marginal_g(f);
  const auto gf = gamma_f(f);
  for (int i = 0; i < n; ++i) {
    const double mean_c = p.gamma_policy == GammaPolicy::pinned ? p.gamma_ref * g[i] : gf[i];
    const double den_r = mean_c + p.beta * g[i];
    const double den_a = mean_c + p.alpha * g[i];
    k.vr[i] = den_r > kEmptyRow ? 2.0 * p.rate_r / den_r : 0.0;
    k.va[i] = den_a > kEmptyRow ? 2.0 * p.rate_a / den_a : 0.0;
  }
  return k;
}

RateEvaluation evaluate_rates(const DensityField& f, const ModelParams& p) {
  const double g = rate_gamma(f, p);
  const auto k = network_coefficients(f, p);
  RateEvaluation r{k.vr, k.va};
  for (std::size_t i = 0; i < r.vr.size(); ++i) {
    r.vr[i] *= 0.5 * (g + p.beta);
    r.va[i] *= 0.5 * (g + p.alpha);
  }
  return r;
}

std::vector<double> apply_network_operator(const DensityField& f, const RateEvaluation& rates, const ModelParams& p) {
  const double g = rate_gamma(f, p);
  check_gamma(g, p);
  const int cols = f.cols();
  std::vector<double> out(f.values().size(), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < f.rows(); ++i) {
    const double vr = 2.0 * rates.vr[i] / (g + p.beta);
    const double va = 2.0 * rates.va[i] / (g + p.alpha);
    row_operator(f.row(i).data(), cols - 1, vr, va, p.alpha, p.beta, out.data() + static_cast<std::size_t>(i) * cols);
  }
  return out;
}

double gamma_derivative(const DensityField& f, const RateEvaluation& rates, const ModelParams& p) {
  const double g = rate_gamma(f, p);
  check_gamma(g, p);
  const int c_max = f.crange().c_max();
  const auto gm = marginal_g(f);
  const auto gf = gamma_f(f);
  double s = 0.0;
  for (int i = 0; i < f.rows(); ++i) {
    const double vr = rates.vr[i], va = rates.va[i];
    s += -2.0 * vr * (gf[i] + p.beta * gm[i]) / (g + p.beta) + 2.0 * va * (gf[i] + p.alpha * gm[i]) / (g + p.alpha) +
         2.0 * p.beta / (g + p.beta) * vr * f(i, 0) - 2.0 * (c_max + p.alpha) / (g + p.alpha) * va * f(i, c_max);
  }
  return s * f.grid().dw();
}

void apply_rho_operator(std::span<const double> rho, double vr, double va, double alpha, double beta,
                        std::span<double> out) {
  row_operator(rho.data(), static_cast<int>(rho.size()) - 1, vr, va, alpha, beta, out.data());
}

RhoPrefactors rho_prefactors(std::span<const double> rho, const ModelParams& p) {
  if (p.rate_mode != RateMode::constant)
    throw Error(ErrorCode::unsupported, "closed degree dynamics needs constant rates");
  double g = p.gamma_ref;
  if (p.gamma_policy == GammaPolicy::dynamic) {
    g = 0.0;
    for (std::size_t c = 0; c < rho.size(); ++c) g += static_cast<double>(c) * rho[c];
  }
  check_gamma(g, p);
  return {2.0 * p.rate_r / (g + p.beta), 2.0 * p.rate_a / (g + p.alpha)};
}

double rho_explicit_dt_bound(std::span<const double> rho, const ModelParams& p) {
  const auto [vr, va] = rho_prefactors(rho, p);
  const int c_max = static_cast<int>(rho.size()) - 1;
  double out_max = 0.0;
  for (int c = 0; c <= c_max; ++c) {
    double out = 0.0;
    if (c < c_max) out += va * (c + p.alpha);
    if (c >= 1) out += vr * (c + p.beta);
    out_max = std::max(out_max, out);
  }
  return out_max > 0.0 ? 1.0 / out_max : std::numeric_limits<double>::infinity();
}

std::vector<double> step_rho_explicit(std::span<const double> rho, const ModelParams& p, double dt) {
  const double bound = rho_explicit_dt_bound(rho, p);
  if (!(dt > 0.0) || dt > bound)
    throw Error(ErrorCode::time_step, "dt " + std::to_string(dt) + " exceeds the positivity bound", bound);
  const auto [vr, va] = rho_prefactors(rho, p);
  std::vector<double> out(rho.size());
  apply_rho_operator(rho, vr, va, p.alpha, p.beta, out);
  for (std::size_t c = 0; c < rho.size(); ++c) out[c] = rho[c] - dt * out[c];
  clamp_roundoff(out, "step_rho_explicit");
  return out;
}

std::vector<double> rho_discrete_fixed_point(int c_max, const ModelParams& p) {
  if (p.rate_mode != RateMode::constant)
    throw Error(ErrorCode::unsupported, "closed degree dynamics needs constant rates");
  const double g = p.gamma_ref;
  check_gamma(g, p);
  const double vr = 2.0 * p.rate_r / (g + p.beta), va = 2.0 * p.rate_a / (g + p.alpha);
  if (!(vr > 0.0) || !(va > 0.0))
    throw Error(ErrorCode::degenerate_connectivity, "fixed point needs positive rates");
  // Zero net flux between c and c+1: va (c+alpha) rho(c) = vr (c+1+beta) rho(c+1).
  std::vector<double> logr(c_max + 1, 0.0);
  for (int c = 0; c < c_max; ++c)
    logr[c + 1] = logr[c] + std::log(va * (c + p.alpha)) - std::log(vr * (c + 1 + p.beta));
  const double top = *std::max_element(logr.begin(), logr.end());
  std::vector<double> rho(c_max + 1);
  double s = 0.0;
  for (int c = 0; c <= c_max; ++c) s += rho[c] = std::exp(logr[c] - top);
  for (double& v : rho) v /= s;
  return rho;
}

void clamp_roundoff(std::span<double> x, const char* where) {
  double scale = 1.0;
  for (double v : x) scale = std::max(scale, std::abs(v));
  const double tol = -kRoundoffTolerance * scale;
  for (double& v : x) {
    if (v < 0.0) {
      if (v < tol || !std::isfinite(v))
        throw Error(ErrorCode::negative_density, std::string(where) + ": negative value " + std::to_string(v));
      v = 0.0;
    } else if (!std::isfinite(v)) {
      throw Error(ErrorCode::negative_density, std::string(where) + ": non-finite value");
    }
  }
}

}  // namespace kinnet
