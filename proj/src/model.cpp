#include "kinnet/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "kinnet/error.hpp"

namespace kinnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::degenerate_diffusion: return "degenerate_diffusion";
    case ErrorCode::degenerate_connectivity: return "degenerate_connectivity";
    case ErrorCode::time_step: return "time_step";
    case ErrorCode::out_of_domain: return "out_of_domain";
    case ErrorCode::non_normalizable: return "non_normalizable";
    case ErrorCode::zero_mass: return "zero_mass";
    case ErrorCode::negative_density: return "negative_density";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

OpinionGrid::OpinionGrid(int intervals) : n_(intervals) {
  if (intervals < 2) throw Error(ErrorCode::invalid_argument, "grid needs at least 2 intervals");
}

ConnectivityRange::ConnectivityRange(int c_max) : c_max_(c_max) {
  if (c_max < 1) throw Error(ErrorCode::invalid_argument, "c_max must be >= 1");
}

DensityField::DensityField(OpinionGrid grid, ConnectivityRange crange)
    : grid_(grid), crange_(crange), values_(static_cast<std::size_t>(grid.size()) * crange.size(), 0.0) {}

double DensityField::mass() const {
  return grid_.dw() * std::accumulate(values_.begin(), values_.end(), 0.0);
}

double DensityField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double DensityField::max() const { return *std::max_element(values_.begin(), values_.end()); }

void DensityField::normalize() {
  const double m = mass();
  if (!(m > 0.0) || !std::isfinite(m)) throw Error(ErrorCode::zero_mass, "density has no positive mass");
  for (double& v : values_) v /= m;
}

void ModelParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
  if (!(alpha > 0.0)) fail("alpha must be > 0");
  if (!(beta >= 0.0)) fail("beta must be >= 0");
  if (!(rate_r >= 0.0) || !(rate_a >= 0.0)) fail("rates must be >= 0");
  if (!(sigma2 >= 0.0)) fail("sigma2 must be >= 0");
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
  if (!(eta > 0.0 && eta < 0.5)) fail("eta must lie in (0, 1/2)");
  if (!(lambda_freq > 0.0)) fail("lambda_freq must be > 0");
  if (gamma_policy == GammaPolicy::pinned && !(gamma_ref > 0.0)) fail("gamma_ref must be > 0");
}

}  // namespace kinnet
