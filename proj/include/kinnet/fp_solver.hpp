#pragma once

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "kinnet/drift.hpp"
#include "kinnet/kernels.hpp"
#include "kinnet/model.hpp"

namespace kinnet {

enum class QuadratureRule { midpoint, milne };

// Open rule on [a, b]: midpoint, or Milne's (4h/3)(2F1 - F2 + 2F3), h = (b-a)/4.
template <class F>
double integrate_cell(QuadratureRule rule, double a, double b, F&& func) {
  if (rule == QuadratureRule::midpoint) return (b - a) * func(0.5 * (a + b));
  const double h = 0.25 * (b - a);
  return (4.0 * h / 3.0) * (2.0 * func(a + h) - func(a + 2.0 * h) + 2.0 * func(a + 3.0 * h));
}

// delta(lambda) = 1/lambda + 1/(1 - e^lambda)
double compute_weights(double lambda);
// Bernoulli function x / (e^x - 1), stable for all x.
double bernoulli(double x);

struct FpModel {
  InteractionKernel kernel;
  DiffusionFunction diffusion = DiffusionFunction::one_minus_w2();
  double sigma2 = 0.05;
  QuadratureRule rule = QuadratureRule::midpoint;
  ModelParams params;

  // Rejects diffusion vanishing at interior evaluation points when sigma2 > 0.
  void validate(const OpinionGrid& grid) const;
};

// Chang-Cooper quantities per interior half-point h = i+1/2 (h = 0..n-1) and
// c. When P[f] does not depend on c one column is stored and broadcast.
struct FluxAssembly {
  int halves = 0;
  int cols = 0;     // stored columns, 1 when uniform
  int c_size = 0;   // actual number of c values
  bool upwind = false;  // sigma2 == 0
  std::vector<double> lambda, delta, drift, diff;
  // Coefficients of f_{i+1} and f_i in F_{i+1/2}.
  std::vector<double> upper, lower;

  std::size_t index(int h, int c) const {
    return static_cast<std::size_t>(h) * cols + (cols == 1 ? 0 : c);
  }
};

// lambda per half-point, from the rule-consistent integral of
// (sigma2 D'D - P[f])/D^2.
std::vector<double> compute_lambda(const DensityField& f, const FpModel& model);
FluxAssembly assemble_coefficients(const DensityField& f, const FpModel& model);
// F_{i+1/2} for h = 0..n-1, [h * c_size + c]. Boundary fluxes are zero and not stored.
std::vector<double> assemble_flux(const DensityField& f, const FluxAssembly& a);

// Exact positivity limit dt <= dw / nu for the explicit opinion step.
double explicit_dt_bound(const FluxAssembly& a, const OpinionGrid& grid);
// Closed-form bound 0.5 dw / (2 + sigma2 M + sigma2/(2dw)), valid for 0 <= P <= 1.
double explicit_dt_bound_closed(const OpinionGrid& grid, const DiffusionFunction& D, double sigma2);
// Row-dominance bounds for the implicit network step (constant rates).
// Returns +inf when none is active.
double implicit_dt_bound(const DensityField& f, const ModelParams& p);

void explicit_opinion_step(DensityField& f, const FluxAssembly& a, double dt);
void explicit_opinion_step(DensityField& f, const FpModel& model, double dt);
void implicit_network_step(DensityField& f, const ModelParams& p, double dt);
void imex_step(DensityField& f, const FpModel& model, double dt);

// dt selection: auto = 0.9 x tightest bound; diffusive = dw^2/(4 sigma2). fixed and diffusive are capped
// by the bounds.
struct DtPolicy {
  enum class Kind { automatic, fixed, diffusive };
  Kind kind = Kind::automatic;
  double value = 0.0;

  static DtPolicy parse(const std::string& text);
  std::string str() const;
};

struct FpSchedule {
  double t_end = 1.0;
  DtPolicy dt;
  std::vector<double> snapshot_times;
};

// Observer gets (time, field, step index); called at t = 0, after every step
// when every_step is set, and at each snapshot time.
struct FpObserver {
  std::function<void(double, const DensityField&, long)> on_snapshot;
  std::function<void(double, const DensityField&, long)> on_step;
};

// Appends dt to a run-length history. Steps within 1e-12 relative count as
// the same step, so landing on an output time does not split the history.
void record_dt(std::vector<std::pair<double, long>>& history, double dt);

struct FpRunResult {
  DensityField field;
  long steps = 0;
  // Run-length encoded dt history (dt, count).
  std::vector<std::pair<double, long>> dt_history;
};

// Picks the step for the current state under policy and bounds.
double select_dt(const DensityField& f, const FpModel& model, const FluxAssembly& a, const DtPolicy& policy);

FpRunResult run_fp(DensityField f, const FpModel& model, const FpSchedule& schedule,
                   const FpObserver& observer = {});

// Discrete steady opinion profile of the scheme: g_{i+1}/g_i = exp(-lambda_{i+1/2}),
// iterated to self-consistency with rho held fixed. Normalized to unit mass.
std::vector<double> discrete_equilibrium(const std::vector<double>& rho, const OpinionGrid& grid,
                                         const FpModel& model, const std::vector<double>& g_start,
                                         int max_iter = 200, double tol = 1e-15);

}  // namespace kinnet
