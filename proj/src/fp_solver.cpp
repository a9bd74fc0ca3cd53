#include "kinnet/fp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "kinnet/error.hpp"
#include "kinnet/network.hpp"
#include "kinnet/stationary.hpp"

namespace kinnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (1 - B(mu))/mu for mu >= 0, i.e. delta(mu).
double delta_positive(double mu, double bern_mu) {
  if (mu < 1e-4) return 0.5 - mu / 12.0 + mu * mu * mu / 720.0;
  return (1.0 - bern_mu) / mu;
}

struct CellCoefficients {
  double delta, upper, lower;
};

// Chang-Cooper coefficients from lambda and C/dw. Both flux coefficients are
// written as sums of nonnegative terms so their signs hold exactly in floating
// point: upper = (C/dw) B(-lambda), lower = -(C/dw) B(lambda).
CellCoefficients chang_cooper(double lambda, double c_over_dw) {
  const double mu = std::abs(lambda);
  const double b = bernoulli(mu);
  const double d = delta_positive(mu, b);
  if (lambda >= 0.0) return {d, c_over_dw * (b + mu), -c_over_dw * b};
  return {1.0 - d, c_over_dw * b, -c_over_dw * (b + mu)};
}

}  // namespace

double bernoulli(double x) {
  if (std::isnan(x)) return x;
  if (std::abs(x) < 1e-8) return 1.0 - 0.5 * x;
  if (x == kInf) return 0.0;
  if (x == -kInf) return kInf;
  return x / std::expm1(x);
}

double compute_weights(double lambda) {
  if (std::isnan(lambda)) throw Error(ErrorCode::invalid_argument, "lambda is NaN");
  if (lambda == kInf) return 0.0;
  if (lambda == -kInf) return 1.0;
  const double mu = std::abs(lambda);
  const double d = delta_positive(mu, bernoulli(mu));
  return lambda >= 0.0 ? d : 1.0 - d;
}

void FpModel::validate(const OpinionGrid& grid) const {
  params.validate();
  if (!(sigma2 >= 0.0)) throw Error(ErrorCode::invalid_argument, "sigma2 must be >= 0");
  if (sigma2 == 0.0) return;
  for (int h = 0; h < grid.intervals(); ++h)
    for (int k = 1; k <= 3; ++k)
      if (!(diffusion(grid.quarter(h, k), 0) > 0.0))
        throw Error(ErrorCode::degenerate_diffusion,
                    "diffusion vanishes at interior point w = " + std::to_string(grid.quarter(h, k)));
}

FluxAssembly assemble_coefficients(const DensityField& f, const FpModel& model) {
  const OpinionGrid& grid = f.grid();
  model.validate(grid);
  const PolicyOperator P(f, model.kernel);
  const double dw = grid.dw();
  const double s2 = model.sigma2;
  const bool milne = model.rule == QuadratureRule::milne;

  FluxAssembly a;
  a.halves = grid.intervals();
  a.c_size = f.cols();
  a.cols = model.kernel.c_independent() ? 1 : f.cols();
  a.upwind = s2 == 0.0;
  const std::size_t total = static_cast<std::size_t>(a.halves) * a.cols;
  a.lambda.resize(total);
  a.delta.resize(total);
  a.drift.resize(total);
  a.diff.resize(total);
  a.upper.resize(total);
  a.lower.resize(total);

  const auto& D = model.diffusion;
#pragma omp parallel for schedule(static)
  for (int h = 0; h < a.halves; ++h) {
    const double wh = grid.half(h);
    const double dh = D(wh, 0);
    double pts[3], g_d2[3], dpd[3];
    const int np = milne ? 3 : 1;
    if (milne) {
      for (int k = 0; k < 3; ++k) pts[k] = grid.quarter(h, k + 1);
    } else {
      pts[0] = wh;
    }
    for (int k = 0; k < np; ++k) {
      const double d = D(pts[k], 0);
      g_d2[k] = a.upwind ? 1.0 : 1.0 / (d * d);
      dpd[k] = s2 * D.derivative(pts[k], 0) * d;
    }
    for (int col = 0; col < a.cols; ++col) {
      // integral of (sigma2 D'D - P)/D^2 over the cell; plain average when upwinding.
      // The compromise drift moves w toward w*, so P enters the flux with a minus sign.
      double val[3];
      for (int k = 0; k < np; ++k) val[k] = (dpd[k] - P(pts[k], col)) * g_d2[k];
      const double I = milne ? (dw / 3.0) * (2.0 * val[0] - val[1] + 2.0 * val[2]) : dw * val[0];
      const std::size_t at = a.index(h, col);
      if (a.upwind) {
        const double B = I / dw;
        a.lambda[at] = std::numeric_limits<double>::quiet_NaN();
        a.drift[at] = B;
        a.diff[at] = 0.0;
        a.delta[at] = B > 0.0 ? 0.0 : (B < 0.0 ? 1.0 : 0.5);
        a.upper[at] = std::max(B, 0.0);
        a.lower[at] = std::min(B, 0.0);
        continue;
      }
      const double lambda = 2.0 * I / s2;
      const double C = 0.5 * s2 * dh * dh;
      const auto cc = chang_cooper(lambda, C / dw);
      a.lambda[at] = lambda;
      a.drift[at] = dh * dh * I / dw;
      a.diff[at] = C;
      a.delta[at] = cc.delta;
      a.upper[at] = cc.upper;
      a.lower[at] = cc.lower;
    }
  }
  return a;
}

std::vector<double> compute_lambda(const DensityField& f, const FpModel& model) {
  const auto a = assemble_coefficients(f, model);
  std::vector<double> out(static_cast<std::size_t>(a.halves) * a.c_size);
  for (int h = 0; h < a.halves; ++h)
    for (int c = 0; c < a.c_size; ++c) out[static_cast<std::size_t>(h) * a.c_size + c] = a.lambda[a.index(h, c)];
  return out;
}

std::vector<double> assemble_flux(const DensityField& f, const FluxAssembly& a) {
  const int C = f.cols();
  std::vector<double> F(static_cast<std::size_t>(a.halves) * C);
#pragma omp parallel for schedule(static)
  for (int h = 0; h < a.halves; ++h) {
    const auto lo_row = f.row(h);
    const auto hi_row = f.row(h + 1);
    double* out = F.data() + static_cast<std::size_t>(h) * C;
    if (a.cols == 1) {
      const double up = a.upper[h], lo = a.lower[h];
      for (int c = 0; c < C; ++c) out[c] = up * hi_row[c] + lo * lo_row[c];
    } else {
      const double* up = a.upper.data() + static_cast<std::size_t>(h) * C;
      const double* lo = a.lower.data() + static_cast<std::size_t>(h) * C;
      for (int c = 0; c < C; ++c) out[c] = up[c] * hi_row[c] + lo[c] * lo_row[c];
    }
  }
  return F;
}

double explicit_dt_bound(const FluxAssembly& a, const OpinionGrid& grid) {
  double nu = 0.0;
  const int n = a.halves;
  for (int i = 0; i <= n; ++i)
    for (int col = 0; col < a.cols; ++col) {
      double v = 0.0;
      if (i >= 1) v += a.upper[a.index(i - 1, col)];
      if (i < n) v -= a.lower[a.index(i, col)];
      nu = std::max(nu, v);
    }
  return nu > 0.0 ? grid.dw() / nu : kInf;
}

double explicit_dt_bound_closed(const OpinionGrid& grid, const DiffusionFunction& D, double sigma2) {
  const double dw = grid.dw();
  return 0.5 * dw / (2.0 + sigma2 * D.max_abs_derivative() + sigma2 / (2.0 * dw));
}

double implicit_dt_bound(const DensityField& f, const ModelParams& p) {
  if (p.rate_mode != RateMode::constant) return kInf;
  const auto k = network_coefficients(f, p);
  const double vr = k.vr.front(), va = k.va.front();
  const int c_max = f.crange().c_max();
  double dt = kInf;
  if (vr > va) dt = std::min(dt, 1.0 / (vr - va));
  if (vr * (1.0 + p.beta) > va * p.alpha) dt = std::min(dt, 1.0 / (vr * (1.0 + p.beta) - va * p.alpha));
  if (va * (c_max - 1 + p.alpha) > vr * (c_max + p.beta))
    dt = std::min(dt, 1.0 / (va * (c_max - 1 + p.alpha) - vr * (c_max + p.beta)));
  return dt;
}

void explicit_opinion_step(DensityField& f, const FluxAssembly& a, double dt) {
  const double bound = explicit_dt_bound(a, f.grid());
  if (!(dt > 0.0) || dt > bound)
    throw Error(ErrorCode::time_step, "dt " + std::to_string(dt) + " exceeds the explicit positivity bound", bound);
  const auto F = assemble_flux(f, a);
  const int C = f.cols(), n = a.halves;
  const double r = dt / f.grid().dw();
#pragma omp parallel for schedule(static)
  for (int i = 0; i <= n; ++i) {
    auto row = f.row(i);
    const double* right = i < n ? F.data() + static_cast<std::size_t>(i) * C : nullptr;
    const double* left = i > 0 ? F.data() + static_cast<std::size_t>(i - 1) * C : nullptr;
    for (int c = 0; c < C; ++c) {
      const double fr = right ? right[c] : 0.0;
      const double fl = left ? left[c] : 0.0;
      row[c] += r * (fr - fl);
    }
  }
  clamp_roundoff(f.values(), "explicit_opinion_step");
}

void explicit_opinion_step(DensityField& f, const FpModel& model, double dt) {
  explicit_opinion_step(f, assemble_coefficients(f, model), dt);
}

void implicit_network_step(DensityField& f, const ModelParams& p, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorCode::time_step, "dt must be positive");
  const auto k = network_coefficients(f, p);
  const int C = f.cols(), c_max = C - 1;
  bool bad = false;
#pragma omp parallel
  {
    std::vector<double> cp(C), dp(C);
#pragma omp for schedule(static)
    for (int i = 0; i < f.rows(); ++i) {
      const double vr = dt * k.vr[i], va = dt * k.va[i];
      if (vr == 0.0 && va == 0.0) continue;
      if (!std::isfinite(vr) || !std::isfinite(va)) {
#pragma omp atomic write
        bad = true;
        continue;
      }
      auto x = f.row(i);
      // row c: diag x(c) - up(c) x(c+1) - low(c) x(c-1) = rhs(c), all up/low >= 0
      auto up = [&](int c) { return vr * (c + 1 + p.beta); };
      auto low = [&](int c) { return va * (c - 1 + p.alpha); };
      // Columns sum to 1, so each pivot is its column excess plus the one
      // remaining sub-diagonal entry. Building it that way (GTH style) avoids
      // the subtraction diag - low * cp, which cancels badly when dt*v is huge
      // (nearly empty rows under remark1 rates).
      auto below = [&](int c) { return c < c_max ? va * (c + p.alpha) : 0.0; };
      double excess = 1.0;
      double den = excess + below(0);
      cp[0] = up(0) / den;
      dp[0] = x[0] / den;
      for (int c = 1; c <= c_max; ++c) {
        const double l = low(c);
        excess = 1.0 + up(c - 1) * excess / den;
        den = excess + below(c);
        cp[c] = c < c_max ? up(c) / den : 0.0;
        dp[c] = (x[c] + l * dp[c - 1]) / den;
      }
      double before = 0.0;
      for (int c = 0; c <= c_max; ++c) before += x[c];
      x[c_max] = dp[c_max];
      for (int c = c_max - 1; c >= 0; --c) x[c] = dp[c] + cp[c] * x[c + 1];
      // the exact solve keeps the row mass; remove the roundoff drift
      double after = 0.0;
      for (int c = 0; c <= c_max; ++c) after += x[c];
      if (after > 0.0) {
        const double scale = before / after;
        for (int c = 0; c <= c_max; ++c) x[c] *= scale;
      }
    }
  }
  if (bad) throw Error(ErrorCode::time_step, "network system has non-finite coefficients");
  clamp_roundoff(f.values(), "implicit_network_step");
}

void imex_step(DensityField& f, const FpModel& model, double dt) {
  explicit_opinion_step(f, model, dt);
  implicit_network_step(f, model.params, dt);
}

DtPolicy DtPolicy::parse(const std::string& text) {
  if (text == "auto") return {Kind::automatic, 0.0};
  if (text == "diffusive") return {Kind::diffusive, 0.0};
  if (text.rfind("fixed:", 0) == 0) {
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(text.substr(6), &used);
      if (used != text.size() - 6) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::config, "bad dt policy '" + text + "'");
    }
    if (!(v > 0.0) || !std::isfinite(v)) throw Error(ErrorCode::config, "fixed dt must be positive");
    return {Kind::fixed, v};
  }
  throw Error(ErrorCode::config, "unknown dt policy '" + text + "' (auto, fixed:<v>, diffusive)");
}

std::string DtPolicy::str() const {
  switch (kind) {
    case Kind::automatic: return "auto";
    case Kind::diffusive: return "diffusive";
    case Kind::fixed: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "fixed:%.17g", value);
      return buf;
    }
  }
  return "auto";
}

double select_dt(const DensityField& f, const FpModel& model, const FluxAssembly& a, const DtPolicy& policy) {
  double bound = std::min(explicit_dt_bound(a, f.grid()), implicit_dt_bound(f, model.params));
  if (model.kernel.bounded())
    bound = std::min(bound, explicit_dt_bound_closed(f.grid(), model.diffusion, model.sigma2));
  switch (policy.kind) {
    case DtPolicy::Kind::automatic: return 0.9 * bound;
    case DtPolicy::Kind::fixed: return std::min(policy.value, bound);
    case DtPolicy::Kind::diffusive: {
      if (!(model.sigma2 > 0.0)) throw Error(ErrorCode::config, "diffusive dt needs sigma2 > 0");
      const double dw = f.grid().dw();
      return std::min(dw * dw / (4.0 * model.sigma2), bound);
    }
  }
  return 0.9 * bound;
}

void record_dt(std::vector<std::pair<double, long>>& history, double dt) {
  if (!history.empty() && std::abs(history.back().first - dt) <= 1e-12 * dt)
    ++history.back().second;
  else
    history.emplace_back(dt, 1);
}

FpRunResult run_fp(DensityField f, const FpModel& model, const FpSchedule& schedule, const FpObserver& observer) {
  model.validate(f.grid());
  std::vector<double> snaps;
  for (double t : schedule.snapshot_times)
    if (t > 0.0 && t <= schedule.t_end) snaps.push_back(t);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

  FpRunResult res;
  if (observer.on_snapshot) observer.on_snapshot(0.0, f, 0);
  double t = 0.0;
  std::size_t next = 0;
  const double t_end = schedule.t_end;
  while (t < t_end) {
    const auto a = assemble_coefficients(f, model);
    double dt = select_dt(f, model, a, schedule.dt);
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw Error(ErrorCode::time_step, "no admissible time step at step " + std::to_string(res.steps));
    const double target = next < snaps.size() ? std::min(snaps[next], t_end) : t_end;
    bool hit = false;
    if (t + dt >= target * (1.0 - 1e-13)) {
      dt = target - t;
      hit = true;
    }
    try {
      explicit_opinion_step(f, a, dt);
      implicit_network_step(f, model.params, dt);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(e.what()) + " (step " + std::to_string(res.steps) + ")", e.admissible_dt());
    }
    t = hit ? target : t + dt;
    ++res.steps;
    record_dt(res.dt_history, dt);
    if (observer.on_step) observer.on_step(t, f, res.steps);
    while (next < snaps.size() && snaps[next] <= t) {
      if (observer.on_snapshot) observer.on_snapshot(snaps[next], f, res.steps);
      ++next;
    }
  }
  res.field = std::move(f);
  return res;
}

std::vector<double> discrete_equilibrium(const std::vector<double>& rho, const OpinionGrid& grid,
                                         const FpModel& model, const std::vector<double>& g_start, int max_iter,
                                         double tol) {
  if (!model.kernel.c_independent())
    throw Error(ErrorCode::unsupported, "discrete equilibrium needs a c-independent kernel");
  if (!(model.sigma2 > 0.0)) throw Error(ErrorCode::unsupported, "discrete equilibrium needs sigma2 > 0");
  std::vector<double> g = g_start;
  for (int it = 0; it < max_iter; ++it) {
    const auto f = f_inf_product(rho, g, grid);
    const auto a = assemble_coefficients(f, model);
    // anchored at the centre: summing from a boundary leaves |log g| in the
    // hundreds at the peak and exp() amplifies its roundoff
    std::vector<double> logg(grid.size(), 0.0);
    const int mid = grid.intervals() / 2;
    for (int h = mid; h < a.halves; ++h) logg[h + 1] = logg[h] - a.lambda[a.index(h, 0)];
    for (int h = mid - 1; h >= 0; --h) logg[h] = logg[h + 1] + a.lambda[a.index(h, 0)];
    const double top = *std::max_element(logg.begin(), logg.end());
    std::vector<double> next(grid.size());
    double s = 0.0;
    for (int i = 0; i < grid.size(); ++i) s += next[i] = std::exp(logg[i] - top);
    s *= grid.dw();
    double diff = 0.0, scale = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
      next[i] /= s;
      diff = std::max(diff, std::abs(next[i] - g[i]));
      scale = std::max(scale, next[i]);
    }
    g = std::move(next);
    if (diff <= tol * scale) break;
  }
  return g;
}

}  // namespace kinnet
