#pragma once

#include <span>
#include <vector>

#include "kinnet/kernels.hpp"
#include "kinnet/model.hpp"

namespace kinnet {

// P[f](w,c) = sum_{c*} int P(w,w*;c,c*)(w* - w) f(w*,c*) dw*, with the w*
// integral taken as the dw-weighted node sum. Built once per field; cheap to
// evaluate at arbitrary w afterwards.
//
// The c*-sum is folded first into A_j(c) = sum_{c*} K(c,c*) f_j(c*). For a
// separable K this is left(c) S_j, otherwise a full matrix. Prefix sums of
// A_j and w_j A_j over j turn every built-in H into O(1) work per point.
class PolicyOperator {
 public:
  PolicyOperator(const DensityField& f, const InteractionKernel& kernel);

  double operator()(double w, int c) const;
  // out[p * cols + c] for every point p and every c.
  void evaluate(std::span<const double> points, std::span<double> out) const;
  bool c_independent() const { return kernel_.c_independent(); }
  int cols() const { return cols_; }

 private:
  double window(double w, int c, double& s0) const;

  OpinionGrid grid_;
  InteractionKernel kernel_;
  int cols_;
  int c_max_;
  bool separable_;
  std::vector<double> left_;      // left(c), separable case
  std::vector<double> prefix0_;   // [(j+1) * width + col], width = 1 or cols
  std::vector<double> prefix1_;
  int width_;
};

PolicyOperator compute_P_operator(const DensityField& f, const InteractionKernel& kernel);

}  // namespace kinnet
