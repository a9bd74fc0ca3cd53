#pragma once

#include <vector>

#include "kinnet/model.hpp"

namespace kinnet {

struct MomentRecord {
  double t = 0.0;
  std::vector<double> rho;
  std::vector<double> m_w;
  std::vector<double> E_w;
  double gamma = 0.0;
  double total_mean = 0.0;
  double mass = 0.0;
};

MomentRecord compute_moments(const DensityField& f, double t = 0.0);

// Moment system for constant rates, P = 1, no diffusion, derived from the
// binary rule w' = w + eta (w* - w) at interaction frequency lambda:
//   drho/dt = -L[rho]
//   dm/dt   = -L[m] + eta lambda (rho M - m R)
//   dE/dt   = -L[E] - 2 eta lambda (E R - m M) + eta^2 lambda (E R + rho S - 2 m M)
// with R = sum rho, M = sum m, S = sum E. Explicit Euler under the network bound.
struct MomentTrajectory {
  std::vector<MomentRecord> records;
};
MomentTrajectory solve_moment_system(const std::vector<double>& rho0, const std::vector<double>& m0,
                                     const std::vector<double>& E0, const ModelParams& p, double t_end,
                                     const std::vector<double>& output_times, double dt = 0.0);

// sum |num - ref| / sum |ref|
double l1_relative_error(const std::vector<double>& num, const std::vector<double>& ref);

// Strict local maxima (plateaus count once) above threshold * max(g), after one
// pass of a 3-point moving average when smooth is set. End nodes count when
// they exceed their single neighbour.
int count_clusters(const std::vector<double>& g, double threshold = 0.1, bool smooth = true);

}  // namespace kinnet
