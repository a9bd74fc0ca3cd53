#include "kinnet/initial_data.hpp"

#include <cmath>

#include "kinnet/error.hpp"
#include "kinnet/io.hpp"
#include "kinnet/stationary.hpp"

namespace kinnet {

namespace {

double gauss(double w, double center, double s2) {
  return std::exp(-(w - center) * (w - center) / (2.0 * s2)) / std::sqrt(2.0 * M_PI * s2);
}

std::vector<double> degree_law(const ConnectivityRange& crange, double gamma0, double alpha) {
  return rho_inf_truncated({gamma0, alpha, crange.c_max()});
}

}  // namespace

InitialKind parse_initial_kind(const std::string& name) {
  if (name == "test1_g0") return InitialKind::test1_g0;
  if (name == "test2_f0") return InitialKind::test2_f0;
  if (name == "test3_f0") return InitialKind::test3_f0;
  if (name == "test4_uniform") return InitialKind::test4_uniform;
  if (name == "dirac") return InitialKind::dirac;
  if (name == "custom" || name == "custom-from-file") return InitialKind::custom;
  throw Error(ErrorCode::config, "unknown initial data '" + name + "'");
}

std::string to_string(InitialKind kind) {
  switch (kind) {
    case InitialKind::test1_g0: return "test1_g0";
    case InitialKind::test2_f0: return "test2_f0";
    case InitialKind::test3_f0: return "test3_f0";
    case InitialKind::test4_uniform: return "test4_uniform";
    case InitialKind::dirac: return "dirac";
    case InitialKind::custom: return "custom";
  }
  return "?";
}

DensityField test1_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double sigma_F2,
                           double gamma0, double alpha) {
  const auto rho = degree_law(crange, gamma0, alpha);
  DensityField f(grid, crange);
  for (int i = 0; i < f.rows(); ++i) {
    const double w = grid.node(i);
    const double g = 0.5 * (gauss(w, -0.5, sigma_F2) + gauss(w, 0.5, sigma_F2));
    for (int c = 0; c < f.cols(); ++c) f(i, c) = g * rho[c];
  }
  f.normalize();
  return f;
}

DensityField test2_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double sigma_F2,
                           double gamma0) {
  constexpr int c0 = 20;
  const double k0 = 3.0 / (20.0 * gamma0 * gamma0 * gamma0);
  auto p0 = [&](int c) { return k0 * std::max(c * (2.0 * gamma0 - c), 0.0); };
  DensityField f(grid, crange);
  for (int i = 0; i < f.rows(); ++i) {
    const double w = grid.node(i);
    const double gp = gauss(w, -0.5, sigma_F2), gm = gauss(w, 0.5, sigma_F2);
    for (int c = 0; c < f.cols(); ++c) f(i, c) = (2.0 / 3.0) * p0(c) * gp + (1.0 / 3.0) * p0(c - c0) * gm;
  }
  f.normalize();
  return f;
}

DensityField test3_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double sigma_F2,
                           double sigma_L2, double gamma0, double alpha) {
  const auto rho = degree_law(crange, gamma0, alpha);
  DensityField f(grid, crange);
  for (int i = 0; i < f.rows(); ++i) {
    const double w = grid.node(i);
    const double gf = std::exp(-(w + 0.5) * (w + 0.5) / (2.0 * sigma_F2));
    const double gl = std::exp(-(w - 0.75) * (w - 0.75) / (2.0 * sigma_L2));
    for (int c = 0; c < f.cols(); ++c) {
      if (c <= 20) f(i, c) = rho[c] * gf;
      else if (c >= 60 && c <= 80) f(i, c) = rho[c] * gl;
    }
  }
  f.normalize();
  return f;
}

DensityField test4_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double gamma0, double alpha) {
  const auto rho = degree_law(crange, gamma0, alpha);
  DensityField f(grid, crange);
  for (int i = 0; i < f.rows(); ++i)
    for (int c = 0; c < f.cols(); ++c) f(i, c) = 0.5 * rho[c];
  f.normalize();
  return f;
}

DensityField dirac_initial(const OpinionGrid& grid, const ConnectivityRange& crange, double w, int c) {
  if (!(w >= -1.0 && w <= 1.0) || c < 0 || c > crange.c_max())
    throw Error(ErrorCode::out_of_domain, "dirac location outside [-1,1] x {0..c_max}");
  DensityField f(grid, crange);
  const int i = static_cast<int>(std::lround((w + 1.0) / grid.dw()));
  f(i, c) = 1.0 / grid.dw();
  return f;
}

DensityField make_initial(const InitialDataSetup& s, const OpinionGrid& grid, const ConnectivityRange& crange) {
  switch (s.kind) {
    case InitialKind::test1_g0: return test1_initial(grid, crange, s.sigma_F2, s.gamma0, s.alpha);
    case InitialKind::test2_f0: return test2_initial(grid, crange, s.sigma_F2, s.gamma0);
    case InitialKind::test3_f0: return test3_initial(grid, crange, s.sigma_F2, s.sigma_L2, s.gamma0, s.alpha);
    case InitialKind::test4_uniform: return test4_initial(grid, crange, s.gamma0, s.alpha);
    case InitialKind::dirac: return dirac_initial(grid, crange, s.dirac_w, s.dirac_c);
    case InitialKind::custom: {
      DensityField f = read_field_csv(s.path, grid, crange);
      f.normalize();
      return f;
    }
  }
  throw Error(ErrorCode::config, "unhandled initial data kind");
}

}  // namespace kinnet
