#pragma once

// Serial reference versions of the hot kernels. They follow the defining
// formulas literally and are kept for cross-checking the parallel kernels and
// for the benchmark.

#include <vector>

#include "kinnet/fp_solver.hpp"
#include "kinnet/kernels.hpp"
#include "kinnet/mc_solver.hpp"
#include "kinnet/model.hpp"

namespace kinnet::reference {

// Direct double sum over c* and the w* nodes.
double policy_operator(const DensityField& f, const InteractionKernel& kernel, double w, int c);

// Gain-minus-loss form of the network operator, N = -(df/dt).
std::vector<double> network_operator(const DensityField& f, const std::vector<double>& vr,
                                     const std::vector<double>& va, double alpha, double beta);

// Explicit opinion step using delta = 1/lambda + 1/(1 - e^lambda) and the
// brute-force P[f].
void explicit_opinion_step(DensityField& f, const FpModel& model, double dt);

// Implicit network step with the a, b, d coefficients written out and plain
// Gaussian elimination on each row.
void implicit_network_step(DensityField& f, const ModelParams& p, double dt);

// Serial collision step drawing from the same substreams as the parallel one.
void collision_step(Ensemble& e, double dt, const InteractionKernel& kernel, const DiffusionFunction& D,
                    double epsilon, double sigma2);

}  // namespace kinnet::reference
