#pragma once

#include <span>
#include <vector>

namespace kinnet {

// Uniform grid w_i = -1 + i dw, i = 0..n. Nodes are computed as (2i - n)/n so
// the grid is exactly symmetric under w -> -w.
class OpinionGrid {
 public:
  OpinionGrid() = default;
  explicit OpinionGrid(int intervals);

  int intervals() const { return n_; }
  int size() const { return n_ + 1; }
  double dw() const { return 2.0 / n_; }
  double node(int i) const { return static_cast<double>(2 * i - n_) / n_; }
  // w_{i+1/2}, i = 0..n-1
  double half(int i) const { return static_cast<double>(2 * i + 1 - n_) / n_; }
  // w_i + k dw / 4, k = 0..4
  double quarter(int i, int k) const {
    return static_cast<double>(4 * i + k - 2 * n_) / (2.0 * n_);
  }

  friend bool operator==(const OpinionGrid&, const OpinionGrid&) = default;

 private:
  int n_ = 80;
};

class ConnectivityRange {
 public:
  ConnectivityRange() = default;
  explicit ConnectivityRange(int c_max);

  int c_max() const { return c_max_; }
  int size() const { return c_max_ + 1; }

  friend bool operator==(const ConnectivityRange&, const ConnectivityRange&) = default;

 private:
  int c_max_ = 250;
};

// Cell averages f_i(c), row-major over (i, c).
class DensityField {
 public:
  DensityField() = default;
  DensityField(OpinionGrid grid, ConnectivityRange crange);

  const OpinionGrid& grid() const { return grid_; }
  const ConnectivityRange& crange() const { return crange_; }
  int rows() const { return grid_.size(); }
  int cols() const { return crange_.size(); }

  double& operator()(int i, int c) { return values_[static_cast<std::size_t>(i) * cols() + c]; }
  double operator()(int i, int c) const { return values_[static_cast<std::size_t>(i) * cols() + c]; }

  std::span<double> row(int i) { return {values_.data() + static_cast<std::size_t>(i) * cols(), static_cast<std::size_t>(cols())}; }
  std::span<const double> row(int i) const { return {values_.data() + static_cast<std::size_t>(i) * cols(), static_cast<std::size_t>(cols())}; }

  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  double mass() const;
  double min() const;
  double max() const;
  // Rescales to unit discrete mass; throws zero_mass if the mass is not positive.
  void normalize();

 private:
  OpinionGrid grid_;
  ConnectivityRange crange_;
  std::vector<double> values_;
};

enum class RateMode { constant, remark1 };
// dynamic: gamma in the rate prefactors is read from the current field.
// pinned: gamma (and the per-row mean connectivity in remark1 mode) is the
// fixed reference gamma_ref.
enum class GammaPolicy { dynamic, pinned };

struct ModelParams {
  double alpha = 0.1;
  double beta = 0.0;
  RateMode rate_mode = RateMode::constant;
  // V_r, V_a in constant mode; U_r, U_a in remark1 mode.
  double rate_r = 1.0;
  double rate_a = 1.0;
  double sigma2 = 0.05;
  double epsilon = 0.01;
  double eta = 0.25;
  double lambda_freq = 1.0;
  GammaPolicy gamma_policy = GammaPolicy::dynamic;
  double gamma_ref = 30.0;

  void validate() const;
};

}  // namespace kinnet
