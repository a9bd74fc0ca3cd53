#pragma once

#include <span>
#include <vector>

#include "kinnet/model.hpp"

namespace kinnet {

// Characteristic rates V_r(w_i), V_a(w_i).
struct RateEvaluation {
  std::vector<double> vr;
  std::vector<double> va;
};

// Per-row prefactors v_r = 2 V_r/(gamma+beta), v_a = 2 V_a/(gamma+alpha).
struct NetworkCoefficients {
  std::vector<double> vr;
  std::vector<double> va;
};

// gamma entering the rate prefactors: field mean or the pinned reference.
double rate_gamma(const DensityField& f, const ModelParams& p);

RateEvaluation evaluate_rates(const DensityField& f, const ModelParams& p);
NetworkCoefficients network_coefficients(const DensityField& f, const ModelParams& p);

// N[f] with the boundary rows at c = 0 and c = c_max. df/dt = -N[f].
std::vector<double> apply_network_operator(const DensityField& f, const RateEvaluation& rates, const ModelParams& p);

// dgamma/dt from the closed four-integral expression.
double gamma_derivative(const DensityField& f, const RateEvaluation& rates, const ModelParams& p);

// Constant-rate operator L on a single degree profile, with given prefactors.
void apply_rho_operator(std::span<const double> rho, double vr, double va, double alpha, double beta,
                        std::span<double> out);

// Prefactors of the closed rho dynamics (constant rates only).
struct RhoPrefactors {
  double vr, va;
};
RhoPrefactors rho_prefactors(std::span<const double> rho, const ModelParams& p);

// Largest dt keeping every coefficient of the forward-Euler map nonnegative.
double rho_explicit_dt_bound(std::span<const double> rho, const ModelParams& p);

// rho' = rho - dt L[rho]. Throws time_step when dt exceeds the bound.
std::vector<double> step_rho_explicit(std::span<const double> rho, const ModelParams& p, double dt);

// Fixed point of the constant-rate rho dynamics with gamma held at gamma_ref,
// normalized to unit mass. Solved directly from the detailed-balance
// recursion of the tridiagonal generator.
std::vector<double> rho_discrete_fixed_point(int c_max, const ModelParams& p);

// Zeroes roundoff negatives above -tol * max(1, max|x|); throws on anything
// more negative.
void clamp_roundoff(std::span<double> x, const char* where);

inline constexpr double kRoundoffTolerance = 1e-15;
// Rows whose rate denominator falls below this carry no agents.
inline constexpr double kEmptyRow = 1e-200;

}  // namespace kinnet
