#include "kinnet/reference.hpp"

#include <cmath>
#include <numeric>

#include "kinnet/error.hpp"
#include "kinnet/network.hpp"
#include "kinnet/rng.hpp"

namespace kinnet::reference {

double policy_operator(const DensityField& f, const InteractionKernel& kernel, double w, int c) {
  const int c_max = f.crange().c_max();
  const double dw = f.grid().dw();
  double s = 0.0;
  for (int cs = 0; cs <= c_max; ++cs)
    for (int j = 0; j < f.rows(); ++j) {
      const double ws = f.grid().node(j);
      s += dw * kernel(w, ws, c, cs, c_max) * (ws - w) * f(j, cs);
    }
  return s;
}

std::vector<double> network_operator(const DensityField& f, const std::vector<double>& vr,
                                     const std::vector<double>& va, double alpha, double beta) {
  const int c_max = f.crange().c_max();
  std::vector<double> out(f.values().size());
  for (int i = 0; i < f.rows(); ++i)
    for (int c = 0; c <= c_max; ++c) {
      double gain = 0.0, loss = 0.0;
      if (c >= 1) gain += va[i] * (c - 1 + alpha) * f(i, c - 1);       // c-1 -> c
      if (c < c_max) gain += vr[i] * (c + 1 + beta) * f(i, c + 1);     // c+1 -> c
      if (c < c_max) loss += va[i] * (c + alpha) * f(i, c);
      if (c >= 1) loss += vr[i] * (c + beta) * f(i, c);
      out[static_cast<std::size_t>(i) * (c_max + 1) + c] = loss - gain;
    }
  return out;
}

void explicit_opinion_step(DensityField& f, const FpModel& model, double dt) {
  if (!(model.sigma2 > 0.0)) throw Error(ErrorCode::unsupported, "reference step needs sigma2 > 0");
  const OpinionGrid& grid = f.grid();
  const int n = grid.intervals(), C = f.cols();
  const double dw = grid.dw(), s2 = model.sigma2;
  const auto& D = model.diffusion;
  std::vector<double> F(static_cast<std::size_t>(n) * C);
  for (int h = 0; h < n; ++h) {
    const double wh = grid.half(h);
    for (int c = 0; c < C; ++c) {
      auto G = [&](double x) {
        const double d = D(x, c);
        return (s2 * D.derivative(x, c) * d - policy_operator(f, model.kernel, x, c)) / (d * d);
      };
      double I = 0.0;
      if (model.rule == QuadratureRule::midpoint) {
        I = dw * G(wh);
      } else {
        I = (dw / 3.0) * (2.0 * G(grid.quarter(h, 1)) - G(grid.quarter(h, 2)) + 2.0 * G(grid.quarter(h, 3)));
      }
      const double lambda = 2.0 * I / s2;
      const double delta =
          std::abs(lambda) < 1e-6 ? 0.5 - lambda / 12.0 : 1.0 / lambda + 1.0 / (1.0 - std::exp(lambda));
      const double dh = D(wh, c);
      const double B = dh * dh * I / dw;
      const double Cc = 0.5 * s2 * dh * dh;
      F[static_cast<std::size_t>(h) * C + c] =
          ((1.0 - delta) * B + Cc / dw) * f(h + 1, c) + (delta * B - Cc / dw) * f(h, c);
    }
  }
  for (int i = 0; i <= n; ++i)
    for (int c = 0; c < C; ++c) {
      const double right = i < n ? F[static_cast<std::size_t>(i) * C + c] : 0.0;
      const double left = i > 0 ? F[static_cast<std::size_t>(i - 1) * C + c] : 0.0;
      f(i, c) += dt / dw * (right - left);
    }
}

void implicit_network_step(DensityField& f, const ModelParams& p, double dt) {
  const auto k = network_coefficients(f, p);
  const int C = f.cols(), c_max = C - 1;
  std::vector<double> a(C), b(C), d(C), diag(C), rhs(C);
  for (int i = 0; i < f.rows(); ++i) {
    const double vr = k.vr[i], va = k.va[i];
    for (int c = 0; c <= c_max; ++c) {
      a[c] = c < c_max ? dt * vr * (c + 1 + p.beta) : 0.0;
      b[c] = c > 0 ? dt * va * (c - 1 + p.alpha) : 0.0;
      d[c] = -dt * vr + dt * va;
    }
    d[0] = b[1] - a[0];
    d[c_max] = -b[c_max] + a[c_max - 1];
    for (int c = 0; c <= c_max; ++c) {
      diag[c] = 1.0 + d[c] + a[c] + b[c];
      rhs[c] = f(i, c);
    }
    // forward elimination of the sub-diagonal -b(c)
    for (int c = 1; c <= c_max; ++c) {
      const double m = -b[c] / diag[c - 1];
      diag[c] -= m * (-a[c - 1]);
      rhs[c] -= m * rhs[c - 1];
    }
    f(i, c_max) = rhs[c_max] / diag[c_max];
    for (int c = c_max - 1; c >= 0; --c) f(i, c) = (rhs[c] + a[c] * f(i, c + 1)) / diag[c];
  }
}

void collision_step(Ensemble& e, double dt, const InteractionKernel& kernel, const DiffusionFunction& D,
                    double epsilon, double sigma2) {
  const std::uint64_t step = e.step++;
  const std::size_t n = e.size();
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  CounterRng shuffle(e.seed, step, 0, kPairing);
  for (std::size_t k = n; k > 1; --k) std::swap(perm[k - 1], perm[shuffle.below(k)]);
  const double amp = std::sqrt(3.0 * epsilon * sigma2);
  const int c_max = e.crange.c_max();
  for (std::size_t k = 0; k < n / 2; ++k) {
    CounterRng rng(e.seed, step, k, kCollision);
    const double u = rng.uniform();
    const double xi = amp * (2.0 * rng.uniform() - 1.0);
    const double xs = amp * (2.0 * rng.uniform() - 1.0);
    if (!(u < dt / epsilon)) continue;
    const auto a = perm[2 * k], b = perm[2 * k + 1];
    const double wa = e.w[a], wb = e.w[b];
    const double na = wa + epsilon * kernel(wa, wb, e.c[a], e.c[b], c_max) * (wb - wa) + xi * D(wa, e.c[a]);
    const double nb = wb + epsilon * kernel(wb, wa, e.c[b], e.c[a], c_max) * (wa - wb) + xs * D(wb, e.c[b]);
    if (std::abs(na) > 1.0 || std::abs(nb) > 1.0) continue;
    e.w[a] = na;
    e.w[b] = nb;
  }
}

}  // namespace kinnet::reference
