#include "kinnet/mc_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "kinnet/error.hpp"
#include "kinnet/marginals.hpp"
#include "kinnet/rng.hpp"

namespace kinnet {

namespace {

double empirical_gamma(const Ensemble& e) {
  if (e.params.gamma_policy == GammaPolicy::pinned) return e.params.gamma_ref;
  return e.mean_connectivity();
}

}  // namespace

double Ensemble::mean_opinion() const {
  return w.empty() ? 0.0 : std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
}

double Ensemble::mean_connectivity() const {
  long long s = 0;
  for (int v : c) s += v;
  return c.empty() ? 0.0 : static_cast<double>(s) / static_cast<double>(c.size());
}

Ensemble sample_initial(const DensityField& f, std::size_t n_samples, std::uint64_t seed, const ModelParams& params) {
  if (n_samples == 0 || n_samples % 2 != 0)
    throw Error(ErrorCode::invalid_argument, "sample count must be positive and even (particles are paired)");
  if (!(f.mass() > 0.0)) throw Error(ErrorCode::zero_mass, "cannot sample from a density with zero mass");

  const int rows = f.rows(), cols = f.cols();
  const auto rho = marginal_rho(f);
  std::vector<double> cdf_c(cols);
  std::partial_sum(rho.begin(), rho.end(), cdf_c.begin());
  // per-column cumulative sums over i
  std::vector<double> cdf_w(static_cast<std::size_t>(rows) * cols);
  for (int c = 0; c < cols; ++c) {
    double s = 0.0;
    for (int i = 0; i < rows; ++i) cdf_w[static_cast<std::size_t>(c) * rows + i] = s += f(i, c);
  }

  Ensemble e;
  e.grid = f.grid();
  e.crange = f.crange();
  e.params = params;
  e.seed = seed;
  e.w.resize(n_samples);
  e.c.resize(n_samples);
  const double dw = f.grid().dw();
  const auto n = static_cast<long long>(n_samples);
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < n; ++k) {
    CounterRng rng(seed, 0, static_cast<std::uint64_t>(k), kSample);
    const double u1 = rng.uniform() * cdf_c.back();
    int c = static_cast<int>(std::upper_bound(cdf_c.begin(), cdf_c.end(), u1) - cdf_c.begin());
    c = std::min(c, cols - 1);
    const double* col = cdf_w.data() + static_cast<std::size_t>(c) * rows;
    const double u2 = rng.uniform() * col[rows - 1];
    int i = static_cast<int>(std::upper_bound(col, col + rows, u2) - col);
    i = std::min(i, rows - 1);
    const double lo = std::max(-1.0, f.grid().node(i) - 0.5 * dw);
    const double hi = std::min(1.0, f.grid().node(i) + 0.5 * dw);
    e.w[k] = lo + (hi - lo) * rng.uniform();
    e.c[k] = c;
  }
  return e;
}

double network_dt_bound(double g, const ModelParams& p, int c_max) {
  double dt = std::numeric_limits<double>::infinity();
  if (p.rate_r > 0.0) dt = std::min(dt, (g + p.beta) / (p.rate_r * (c_max + p.beta)));
  if (p.rate_a > 0.0) dt = std::min(dt, (g + p.alpha) / (p.rate_a * (c_max + p.alpha)));
  return dt;
}

void network_step(Ensemble& e, double dt) {
  const ModelParams& p = e.params;
  if (p.rate_mode != RateMode::constant)
    throw Error(ErrorCode::unsupported, "the particle network step needs constant rates");
  const int c_max = e.crange.c_max();
  const double g = empirical_gamma(e);
  if (!(g + p.beta > 0.0)) throw Error(ErrorCode::degenerate_connectivity, "gamma + beta vanishes");
  const double bound = network_dt_bound(g, p, c_max);
  if (!(dt > 0.0) || dt > bound)
    throw Error(ErrorCode::time_step, "dt " + std::to_string(dt) + " exceeds the network step bound", bound);
  const double ka = dt * p.rate_a / (g + p.alpha);
  const double kr = dt * p.rate_r / (g + p.beta);
  const std::uint64_t step = e.step++;
  const auto n = static_cast<long long>(e.size());
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < n; ++k) {
    CounterRng rng(e.seed, step, static_cast<std::uint64_t>(k), kNetwork);
    const int c0 = e.c[k];
    int c = c0;
    const double u_add = rng.uniform(), u_rem = rng.uniform();
    if (c <= c_max - 1 && u_add < ka * (c0 + p.alpha)) ++c;
    if (c >= 1 && u_rem < kr * (c0 + p.beta)) --c;
    e.c[k] = c;
  }
}

void collision_step(Ensemble& e, double dt, const InteractionKernel& kernel, const DiffusionFunction& D,
                    double epsilon, double sigma2) {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::invalid_argument, "epsilon must be > 0");
  if (!(dt > 0.0) || dt > epsilon)
    throw Error(ErrorCode::time_step, "collision step needs dt <= epsilon", epsilon);
  if (!kernel.bounded()) throw Error(ErrorCode::unsupported, "binary interactions need 0 <= P <= 1");
  if (!(sigma2 >= 0.0)) throw Error(ErrorCode::invalid_argument, "sigma2 must be >= 0");
  const std::uint64_t step = e.step++;
  const std::size_t n = e.size();

  // uniform random disjoint pairing
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  CounterRng shuffle(e.seed, step, 0, kPairing);
  for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[shuffle.below(k)]);

  const double prob = dt / epsilon;
  const double amp = std::sqrt(3.0 * epsilon * sigma2);
  const int c_max = e.crange.c_max();
  const auto pairs = static_cast<long long>(n / 2);
#pragma omp parallel for schedule(static)
  for (long long k = 0; k < pairs; ++k) {
    CounterRng rng(e.seed, step, static_cast<std::uint64_t>(k), kCollision);
    const double u = rng.uniform();
    const double xi = amp * (2.0 * rng.uniform() - 1.0);
    const double xs = amp * (2.0 * rng.uniform() - 1.0);
    if (!(u < prob)) continue;
    const std::uint32_t a = perm[2 * k], b = perm[2 * k + 1];
    const double wa = e.w[a], wb = e.w[b];
    const int ca = e.c[a], cb = e.c[b];
    const double na = wa + epsilon * kernel(wa, wb, ca, cb, c_max) * (wb - wa) + xi * D(wa, ca);
    const double nb = wb + epsilon * kernel(wb, wa, cb, ca, c_max) * (wa - wb) + xs * D(wb, cb);
    if (std::abs(na) > 1.0 || std::abs(nb) > 1.0) continue;
    e.w[a] = na;
    e.w[b] = nb;
  }
}

DensityField reconstruct_density(const Ensemble& e, const OpinionGrid& grid, const ConnectivityRange& crange) {
  DensityField f(grid, crange);
  if (e.size() == 0) return f;
  const double dw = grid.dw();
  const double weight = 1.0 / (static_cast<double>(e.size()) * dw);
  const int n = grid.intervals();
  for (std::size_t k = 0; k < e.size(); ++k) {
    const int i = std::clamp(static_cast<int>(std::lround((e.w[k] + 1.0) / dw)), 0, n);
    const int c = std::clamp(e.c[k], 0, crange.c_max());
    f(i, c) += weight;
  }
  return f;
}

McRunResult run_mc(Ensemble& e, const McSchedule& s, const std::function<void(double, const Ensemble&, long)>& on_snapshot) {
  if (!(s.dt > 0.0)) throw Error(ErrorCode::time_step, "dt must be positive");
  if (s.dt > s.epsilon) throw Error(ErrorCode::time_step, "collision step needs dt <= epsilon", s.epsilon);
  std::vector<double> snaps;
  for (double t : s.snapshot_times)
    if (t > 0.0 && t <= s.t_end) snaps.push_back(t);
  std::sort(snaps.begin(), snaps.end());
  snaps.erase(std::unique(snaps.begin(), snaps.end()), snaps.end());

  McRunResult res;
  if (on_snapshot) on_snapshot(0.0, e, 0);
  double t = 0.0;
  std::size_t next = 0;
  while (t < s.t_end) {
    const double target = next < snaps.size() ? std::min(snaps[next], s.t_end) : s.t_end;
    double dt = s.dt;
    bool hit = false;
    if (t + dt >= target * (1.0 - 1e-13)) {
      // target - t can exceed s.dt by roundoff; never step past the nominal dt
      dt = std::min(target - t, s.dt);
      hit = true;
    }
    try {
      if (s.network) network_step(e, dt);
      collision_step(e, dt, s.kernel, s.diffusion, s.epsilon, s.sigma2);
    } catch (const Error& err) {
      throw Error(err.code(), std::string(err.what()) + " (step " + std::to_string(res.steps) + ")",
                  err.admissible_dt());
    }
    t = hit ? target : t + dt;
    ++res.steps;
    while (next < snaps.size() && snaps[next] <= t) {
      if (on_snapshot) on_snapshot(snaps[next], e, res.steps);
      ++next;
    }
  }
  return res;
}

}  // namespace kinnet
