#pragma once

#include <string>
#include <vector>

#include "kinnet/model.hpp"

namespace kinnet {

enum class InitialKind { test1_g0, test2_f0, test3_f0, test4_uniform, dirac, custom };

InitialKind parse_initial_kind(const std::string& name);
std::string to_string(InitialKind kind);

struct InitialDataSetup {
  InitialKind kind = InitialKind::test1_g0;
  double sigma_F2 = 6e-2;
  double sigma_L2 = 2.5e-2;
  // Degree-law parameters for the presets built on rho_inf.
  double gamma0 = 30.0;
  double alpha = 0.1;
  // dirac: all mass at the node nearest dirac_w and at c = dirac_c
  double dirac_w = 0.0;
  int dirac_c = 30;
  // custom: CSV with header w,c,f on the same grid
  std::string path;
};

// Builds the initial field and normalizes it to discrete mass 1.
DensityField make_initial(const InitialDataSetup& setup, const OpinionGrid& grid, const ConnectivityRange& crange);

// Bimodal Gaussian (w -/+ 1/2) times the truncated degree law.
DensityField test1_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double sigma_F2,
                           double gamma0, double alpha);
// 2/3 p0(c) g+(w) + 1/3 p0(c - 20) g-(w), p0(c) = max{c (2 gamma0 - c), 0}.
DensityField test2_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double sigma_F2,
                           double gamma0);
// Followers near -1/2 for c <= 20, leaders near 3/4 for 60 <= c <= 80.
DensityField test3_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double sigma_F2,
                           double sigma_L2, double gamma0, double alpha);
// rho_inf(c) / 2
DensityField test4_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double gamma0, double alpha);
DensityField dirac_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double w, int c);

}  // namespace kinnet
