#pragma once

namespace kinnet {

// Opinion part H of the interaction kernel P = H K.
class OpinionKernel {
 public:
  enum class Kind { unity, local, bounded_confidence };

  static OpinionKernel unity() { return OpinionKernel(Kind::unity, 0.0, false); }
  // H = 1 - w^2
  static OpinionKernel local() { return OpinionKernel(Kind::local, 0.0, false); }
  // indicator |w - w*| <= delta
  static OpinionKernel bounded_confidence(double delta);
  // indicator |w - w*| <= d0 c / c_max
  static OpinionKernel bounded_confidence_scaled(double d0);

  Kind kind() const { return kind_; }
  double delta() const { return delta_; }
  bool scaled() const { return scaled_; }
  bool depends_on_c() const { return kind_ == Kind::bounded_confidence && scaled_; }
  double radius(int c, int c_max) const { return scaled_ ? delta_ * c / c_max : delta_; }

  double operator()(double w, double ws, int c, int c_max) const;

 private:
  OpinionKernel(Kind k, double d, bool s) : kind_(k), delta_(d), scaled_(s) {}
  Kind kind_;
  double delta_;
  bool scaled_;
};

// Connectivity part K(c, c*).
class ConnectivityKernel {
 public:
  enum class Kind { unity, power };

  static ConnectivityKernel unity() { return ConnectivityKernel(Kind::unity, 0.0, 0.0, true); }
  // (c/c_max)^(-a) (c*/c_max)^b with c replaced by max(c,1); clamp limits the
  // value to [0,1].
  static ConnectivityKernel power(double a, double b, bool clamp = true);

  Kind kind() const { return kind_; }
  double a() const { return a_; }
  double b() const { return b_; }
  bool clamped() const { return clamp_; }
  // K(c,c*) = left(c) right(c*) exactly
  bool separable() const { return kind_ == Kind::unity || !clamp_; }
  double left(int c, int c_max) const;
  double right(int cs, int c_max) const;

  double operator()(int c, int cs, int c_max) const;

 private:
  ConnectivityKernel(Kind k, double a, double b, bool clamp) : kind_(k), a_(a), b_(b), clamp_(clamp) {}
  Kind kind_;
  double a_, b_;
  bool clamp_;
};

struct InteractionKernel {
  OpinionKernel h = OpinionKernel::unity();
  ConnectivityKernel k = ConnectivityKernel::unity();

  double operator()(double w, double ws, int c, int cs, int c_max) const {
    return h(w, ws, c, c_max) * k(c, cs, c_max);
  }
  // P[f] does not depend on c.
  bool c_independent() const { return k.kind() == ConnectivityKernel::Kind::unity && !h.depends_on_c(); }
  // 0 <= P <= 1 everywhere.
  bool bounded() const { return k.kind() == ConnectivityKernel::Kind::unity || k.clamped(); }
  // P(w,w*;c,c*) = P(w*,w;c*,c)
  bool symmetric() const {
    return k.kind() == ConnectivityKernel::Kind::unity &&
           (h.kind() == OpinionKernel::Kind::unity ||
            (h.kind() == OpinionKernel::Kind::bounded_confidence && !h.scaled()));
  }
};

class DiffusionFunction {
 public:
  enum class Kind { one_minus_w2, constant, zero };

  static DiffusionFunction one_minus_w2() { return DiffusionFunction(Kind::one_minus_w2, 0.0); }
  static DiffusionFunction constant(double value);
  static DiffusionFunction zero() { return DiffusionFunction(Kind::zero, 0.0); }

  Kind kind() const { return kind_; }
  double value() const { return value_; }

  double operator()(double w, int /*c*/) const {
    switch (kind_) {
      case Kind::one_minus_w2: return 1.0 - w * w;
      case Kind::constant: return value_;
      case Kind::zero: break;
    }
    return 0.0;
  }
  double derivative(double w, int /*c*/) const { return kind_ == Kind::one_minus_w2 ? -2.0 * w : 0.0; }
  // max |D'| on [-1,1]
  double max_abs_derivative() const { return kind_ == Kind::one_minus_w2 ? 2.0 : 0.0; }
  bool identically_zero() const { return kind_ == Kind::zero || (kind_ == Kind::constant && value_ == 0.0); }

 private:
  DiffusionFunction(Kind k, double v) : kind_(k), value_(v) {}
  Kind kind_;
  double value_;
};

}  // namespace kinnet
