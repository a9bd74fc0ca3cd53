#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kinnet/kernels.hpp"
#include "kinnet/model.hpp"

namespace kinnet {

struct Particle {
  double w;
  int c;
};

// Particle population. Randomness is drawn from substreams keyed by
// (seed, step, index), so trajectories are reproducible and independent of
// the thread count.
struct Ensemble {
  std::vector<double> w;
  std::vector<int> c;
  OpinionGrid grid;
  ConnectivityRange crange;
  ModelParams params;
  std::uint64_t seed = 0;
  std::uint64_t step = 0;  // advanced by every network or collision step

  std::size_t size() const { return w.size(); }
  Particle particle(std::size_t k) const { return {w[k], c[k]}; }
  double mean_opinion() const;
  double mean_connectivity() const;
};

// Inverse-CDF sampling: c from rho, then w uniform inside the chosen cell
// [w_i - dw/2, w_i + dw/2] clipped to [-1,1]. n_samples must be even.
Ensemble sample_initial(const DensityField& f, std::size_t n_samples, std::uint64_t seed,
                        const ModelParams& params);

// particle network step bound: min{(gamma+beta)/(V_r(c_max+beta)), (gamma+alpha)/(V_a(c_max+alpha))}.
double network_dt_bound(double gamma, const ModelParams& p, int c_max);

void network_step(Ensemble& e, double dt);
// Pure-noise strength xi ~ U[-sqrt(3 eps sigma2), +sqrt(3 eps sigma2)].
void collision_step(Ensemble& e, double dt, const InteractionKernel& kernel, const DiffusionFunction& D,
                    double epsilon, double sigma2);

// Histogram on the N+1 opinion cells x c values, mass 1.
DensityField reconstruct_density(const Ensemble& e, const OpinionGrid& grid, const ConnectivityRange& crange);

struct McSchedule {
  double t_end = 1.0;
  double dt = 0.01;
  double epsilon = 0.01;
  double sigma2 = 0.05;
  InteractionKernel kernel;
  DiffusionFunction diffusion = DiffusionFunction::one_minus_w2();
  bool network = true;  // false freezes connectivity
  std::vector<double> snapshot_times;
};

struct McRunResult {
  long steps = 0;
};

// Alternates network_step and collision_step. on_snapshot receives
// (time, ensemble, step) at t = 0 and at every snapshot time.
McRunResult run_mc(Ensemble& e, const McSchedule& schedule,
                   const std::function<void(double, const Ensemble&, long)>& on_snapshot = {});

}  // namespace kinnet
