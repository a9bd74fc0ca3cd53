#pragma once

#include <vector>

#include "kinnet/kernels.hpp"
#include "kinnet/model.hpp"

namespace kinnet {

struct StationaryDegreeLaw {
  double gamma = 30.0;
  double alpha = 0.1;
  int c_max = 250;
};

// Negative-binomial stationary law evaluated in log space.
double rho_inf(int c, double gamma, double alpha);
// rho_inf(0..c_max), not renormalized.
std::vector<double> rho_inf_table(const StationaryDegreeLaw& law);
// Same law restricted to 0..c_max and renormalized to unit mass.
std::vector<double> rho_inf_truncated(const StationaryDegreeLaw& law);
// 1 - sum_{c<=c_max} rho_inf(c)
double truncation_deficit(const StationaryDegreeLaw& law);

// e^{-gamma} gamma^c / c!
double rho_inf_poisson(int c, double gamma);
// (alpha/gamma)^alpha alpha / c, c >= 1
double rho_inf_powerlaw(int c, double gamma, double alpha);

struct StationaryOpinionProfile {
  enum class Variant { case1, case2, generic };
  double kappa = 1.0;
  double mbar = 0.0;
  double sigma2 = 0.05;
  Variant variant = Variant::case1;
  // Used by the generic variant only.
  OpinionKernel::Kind h = OpinionKernel::Kind::unity;
  DiffusionFunction diffusion = DiffusionFunction::one_minus_w2();
};

// Stationary opinion profile on the grid, normalized to dw sum g = 1.
std::vector<double> g_inf(const StationaryOpinionProfile& profile, const OpinionGrid& grid);

// Outer product g x rho normalized to unit mass.
DensityField f_inf_product(const std::vector<double>& rho, const std::vector<double>& g,
                           const OpinionGrid& grid);

}  // namespace kinnet
