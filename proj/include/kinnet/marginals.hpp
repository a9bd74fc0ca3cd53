#pragma once

#include <vector>

#include "kinnet/kernels.hpp"
#include "kinnet/model.hpp"

namespace kinnet {

// rho(c) = dw sum_i f_i(c)
std::vector<double> marginal_rho(const DensityField& f);
// g_i = sum_c f_i(c)
std::vector<double> marginal_g(const DensityField& f);
// gamma = sum_c c rho(c)
double gamma(const DensityField& f);
// gamma_f(w_i) = sum_c c f_i(c)
std::vector<double> gamma_f(const DensityField& f);
// Mean of a degree law given on 0..c_max (not renormalized).
double mean_connectivity(const std::vector<double>& rho);

// Noise amplitude bound d = min over nodes with D != 0 of (1 - w)/D(w).
// The node w = +1 is skipped, (1-w) vanishes there.
double noise_bound(const DiffusionFunction& D, const OpinionGrid& grid, const ConnectivityRange& crange);

}  // namespace kinnet
