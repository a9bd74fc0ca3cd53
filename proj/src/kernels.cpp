#include "kinnet/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "kinnet/error.hpp"

namespace kinnet {

OpinionKernel OpinionKernel::bounded_confidence(double delta) {
  if (!(delta >= 0.0)) throw Error(ErrorCode::invalid_argument, "confidence radius must be >= 0");
  return OpinionKernel(Kind::bounded_confidence, delta, false);
}

OpinionKernel OpinionKernel::bounded_confidence_scaled(double d0) {
  if (!(d0 >= 0.0)) throw Error(ErrorCode::invalid_argument, "confidence scale must be >= 0");
  return OpinionKernel(Kind::bounded_confidence, d0, true);
}

double OpinionKernel::operator()(double w, double ws, int c, int c_max) const {
  switch (kind_) {
    case Kind::unity: return 1.0;
    case Kind::local: return 1.0 - w * w;
    case Kind::bounded_confidence: return std::abs(w - ws) <= radius(c, c_max) ? 1.0 : 0.0;
  }
  return 0.0;
}

ConnectivityKernel ConnectivityKernel::power(double a, double b, bool clamp) {
  if (!(a >= 0.0) || !(b >= 0.0)) throw Error(ErrorCode::invalid_argument, "kernel exponents must be >= 0");
  return ConnectivityKernel(Kind::power, a, b, clamp);
}

double ConnectivityKernel::left(int c, int c_max) const {
  if (kind_ == Kind::unity) return 1.0;
  return std::pow(static_cast<double>(std::max(c, 1)) / c_max, -a_);
}

double ConnectivityKernel::right(int cs, int c_max) const {
  if (kind_ == Kind::unity) return 1.0;
  return std::pow(static_cast<double>(cs) / c_max, b_);
}

double ConnectivityKernel::operator()(int c, int cs, int c_max) const {
  if (kind_ == Kind::unity) return 1.0;
  const double v = left(c, c_max) * right(cs, c_max);
  return clamp_ ? std::clamp(v, 0.0, 1.0) : v;
}

DiffusionFunction DiffusionFunction::constant(double value) {
  if (!(value >= 0.0)) throw Error(ErrorCode::invalid_argument, "diffusion must be >= 0");
  return DiffusionFunction(Kind::constant, value);
}

}  // namespace kinnet
