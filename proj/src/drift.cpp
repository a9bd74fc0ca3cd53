#include "kinnet/drift.hpp"

#include <algorithm>
#include <cmath>

namespace kinnet {

PolicyOperator::PolicyOperator(const DensityField& f, const InteractionKernel& kernel)
    : grid_(f.grid()),
      kernel_(kernel),
      cols_(f.cols()),
      c_max_(f.crange().c_max()),
      separable_(kernel.k.separable()) {
  const int rows = f.rows();
  width_ = separable_ ? 1 : cols_;
  prefix0_.assign(static_cast<std::size_t>(rows + 1) * width_, 0.0);
  prefix1_.assign(static_cast<std::size_t>(rows + 1) * width_, 0.0);

  if (separable_) {
    left_.resize(cols_);
    std::vector<double> right(cols_);
    for (int c = 0; c < cols_; ++c) {
      left_[c] = kernel.k.left(c, c_max_);
      right[c] = kernel.k.right(c, c_max_);
    }
    for (int j = 0; j < rows; ++j) {
      double s = 0.0;
      auto r = f.row(j);
      for (int c = 0; c < cols_; ++c) s += right[c] * r[c];
      prefix0_[j + 1] = prefix0_[j] + s;
      prefix1_[j + 1] = prefix1_[j] + grid_.node(j) * s;
    }
    return;
  }

  // A_j(c) = sum_{c*} K(c,c*) f_j(c*)
  std::vector<double> K(static_cast<std::size_t>(cols_) * cols_);
  for (int c = 0; c < cols_; ++c)
    for (int cs = 0; cs < cols_; ++cs) K[static_cast<std::size_t>(c) * cols_ + cs] = kernel.k(c, cs, c_max_);
  std::vector<double> A(static_cast<std::size_t>(rows) * cols_);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < rows; ++j) {
    auto r = f.row(j);
    for (int c = 0; c < cols_; ++c) {
      const double* k = K.data() + static_cast<std::size_t>(c) * cols_;
      double s = 0.0;
      for (int cs = 0; cs < cols_; ++cs) s += k[cs] * r[cs];
      A[static_cast<std::size_t>(j) * cols_ + c] = s;
    }
  }
  for (int j = 0; j < rows; ++j) {
    const double w = grid_.node(j);
    const std::size_t at = static_cast<std::size_t>(j) * cols_, next = at + cols_;
    for (int c = 0; c < cols_; ++c) {
      prefix0_[next + c] = prefix0_[at + c] + A[at + c];
      prefix1_[next + c] = prefix1_[at + c] + w * A[at + c];
    }
  }
}

// Returns sum w_j A_j over the kernel's support around w and writes sum A_j.
double PolicyOperator::window(double w, int c, double& s0) const {
  const int n = grid_.intervals();
  const int col = separable_ ? 0 : c;
  auto p0 = [&](int j) { return prefix0_[static_cast<std::size_t>(j) * width_ + col]; };
  auto p1 = [&](int j) { return prefix1_[static_cast<std::size_t>(j) * width_ + col]; };
  int lo = 0, hi = n;
  if (kernel_.h.kind() == OpinionKernel::Kind::bounded_confidence) {
    const double delta = kernel_.h.radius(c, c_max_);
    auto inside = [&](int j) { return std::abs(w - grid_.node(j)) <= delta; };
    lo = std::clamp(static_cast<int>(std::ceil(0.5 * n * (w - delta + 1.0))), 0, n);
    hi = std::clamp(static_cast<int>(std::floor(0.5 * n * (w + delta + 1.0))), 0, n);
    while (lo > 0 && inside(lo - 1)) --lo;
    while (lo <= n && !inside(lo)) ++lo;
    while (hi < n && inside(hi + 1)) ++hi;
    while (hi >= 0 && !inside(hi)) --hi;
    if (lo > hi) {
      s0 = 0.0;
      return 0.0;
    }
  }
  s0 = p0(hi + 1) - p0(lo);
  return p1(hi + 1) - p1(lo);
}

double PolicyOperator::operator()(double w, int c) const {
  double s0 = 0.0;
  const double s1 = window(w, c, s0);
  double v = grid_.dw() * (s1 - w * s0);
  if (separable_) v *= left_[c];
  if (kernel_.h.kind() == OpinionKernel::Kind::local) v *= 1.0 - w * w;
  return v;
}

void PolicyOperator::evaluate(std::span<const double> points, std::span<double> out) const {
  const int np = static_cast<int>(points.size());
#pragma omp parallel for schedule(static)
  for (int p = 0; p < np; ++p)
    for (int c = 0; c < cols_; ++c) out[static_cast<std::size_t>(p) * cols_ + c] = (*this)(points[p], c);
}

PolicyOperator compute_P_operator(const DensityField& f, const InteractionKernel& kernel) {
  return PolicyOperator(f, kernel);
}

}  // namespace kinnet
