#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "kinnet/model.hpp"

namespace kinnet::testing {

// Positive random field with unit mass.
inline DensityField random_field(int n, int c_max, unsigned seed) {
  DensityField f{OpinionGrid(n), ConnectivityRange(c_max)};
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  for (double& v : f.values()) v = u(gen);
  f.normalize();
  return f;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace kinnet::testing
