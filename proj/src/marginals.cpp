#include "kinnet/marginals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "kinnet/error.hpp"

namespace kinnet {

std::vector<double> marginal_rho(const DensityField& f) {
  std::vector<double> rho(f.cols(), 0.0);
  for (int i = 0; i < f.rows(); ++i) {
    auto r = f.row(i);
    for (int c = 0; c < f.cols(); ++c) rho[c] += r[c];
  }
  for (double& v : rho) v *= f.grid().dw();
  return rho;
}

std::vector<double> marginal_g(const DensityField& f) {
  std::vector<double> g(f.rows(), 0.0);
  for (int i = 0; i < f.rows(); ++i) {
    double s = 0.0;
    for (double v : f.row(i)) s += v;
    g[i] = s;
  }
  return g;
}

double mean_connectivity(const std::vector<double>& rho) {
  double s = 0.0;
  for (std::size_t c = 0; c < rho.size(); ++c) s += static_cast<double>(c) * rho[c];
  return s;
}

double gamma(const DensityField& f) { return mean_connectivity(marginal_rho(f)); }

std::vector<double> gamma_f(const DensityField& f) {
  std::vector<double> out(f.rows(), 0.0);
  for (int i = 0; i < f.rows(); ++i) {
    auto r = f.row(i);
    double s = 0.0;
    for (int c = 1; c < f.cols(); ++c) s += c * r[c];
    out[i] = s;
  }
  return out;
}

double noise_bound(const DiffusionFunction& D, const OpinionGrid& grid, const ConnectivityRange& crange) {
  if (D.identically_zero())
    throw Error(ErrorCode::degenerate_diffusion, "diffusion vanishes identically, noise is unconstrained");
  double d = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.intervals(); ++i) {  // node n (w = +1) skipped
    const double w = grid.node(i);
    for (int c = 0; c < crange.size(); ++c) {
      const double dv = D(w, c);
      if (dv != 0.0) d = std::min(d, (1.0 - w) / dv);
    }
  }
  if (!std::isfinite(d)) throw Error(ErrorCode::degenerate_diffusion, "diffusion vanishes on every node");
  return d;
}

}  // namespace kinnet
