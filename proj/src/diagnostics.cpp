#include "kinnet/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "kinnet/error.hpp"
#include "kinnet/network.hpp"

namespace kinnet {

MomentRecord compute_moments(const DensityField& f, double t) {
  MomentRecord r;
  r.t = t;
  const int C = f.cols();
  r.rho.assign(C, 0.0);
  r.m_w.assign(C, 0.0);
  r.E_w.assign(C, 0.0);
  for (int i = 0; i < f.rows(); ++i) {
    const double w = f.grid().node(i);
    auto row = f.row(i);
    for (int c = 0; c < C; ++c) {
      r.rho[c] += row[c];
      r.m_w[c] += w * row[c];
      r.E_w[c] += w * w * row[c];
    }
  }
  const double dw = f.grid().dw();
  for (int c = 0; c < C; ++c) {
    r.rho[c] *= dw;
    r.m_w[c] *= dw;
    r.E_w[c] *= dw;
    r.gamma += c * r.rho[c];
  }
  r.total_mean = std::accumulate(r.m_w.begin(), r.m_w.end(), 0.0);
  r.mass = std::accumulate(r.rho.begin(), r.rho.end(), 0.0);
  return r;
}

MomentTrajectory solve_moment_system(const std::vector<double>& rho0, const std::vector<double>& m0,
                                     const std::vector<double>& E0, const ModelParams& p, double t_end,
                                     const std::vector<double>& output_times, double dt_user) {
  if (p.rate_mode != RateMode::constant)
    throw Error(ErrorCode::unsupported, "the moment system needs constant (linear) rates");
  if (rho0.size() != m0.size() || rho0.size() != E0.size() || rho0.size() < 2)
    throw Error(ErrorCode::invalid_argument, "moment vectors must share a size >= 2");
  const std::size_t C = rho0.size();
  const double el = p.eta * p.lambda_freq;

  std::vector<double> times;
  for (double t : output_times)
    if (t > 0.0 && t <= t_end) times.push_back(t);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  std::vector<double> rho = rho0, m = m0, E = E0, Lm(C), LE(C);
  MomentTrajectory out;
  auto record = [&](double t) {
    MomentRecord r;
    r.t = t;
    r.rho = rho;
    r.m_w = m;
    r.E_w = E;
    for (std::size_t c = 0; c < C; ++c) r.gamma += static_cast<double>(c) * rho[c];
    r.total_mean = std::accumulate(m.begin(), m.end(), 0.0);
    r.mass = std::accumulate(rho.begin(), rho.end(), 0.0);
    out.records.push_back(std::move(r));
  };
  record(0.0);

  double t = 0.0;
  std::size_t next = 0;
  while (t < t_end) {
    double dt = 0.9 * std::min(rho_explicit_dt_bound(rho, p), 0.5 / el);
    if (dt_user > 0.0) dt = std::min(dt, dt_user);
    const double target = next < times.size() ? times[next] : t_end;
    bool hit = false;
    if (t + dt >= target * (1.0 - 1e-13)) {
      dt = target - t;
      hit = true;
    }
    const auto [vr, va] = rho_prefactors(rho, p);
    apply_rho_operator(m, vr, va, p.alpha, p.beta, Lm);
    apply_rho_operator(E, vr, va, p.alpha, p.beta, LE);
    const double R = std::accumulate(rho.begin(), rho.end(), 0.0);
    const double M = std::accumulate(m.begin(), m.end(), 0.0);
    const double S = std::accumulate(E.begin(), E.end(), 0.0);
    std::vector<double> m_new(C), E_new(C);
    for (std::size_t c = 0; c < C; ++c) {
      m_new[c] = m[c] - dt * Lm[c] + dt * el * (rho[c] * M - m[c] * R);
      E_new[c] = E[c] - dt * LE[c] - 2.0 * dt * el * (E[c] * R - m[c] * M) +
                 dt * el * p.eta * (E[c] * R + rho[c] * S - 2.0 * m[c] * M);
    }
    rho = step_rho_explicit(rho, p, dt);
    m = std::move(m_new);
    E = std::move(E_new);
    t = hit ? target : t + dt;
    while (next < times.size() && times[next] <= t) {
      record(times[next]);
      ++next;
    }
  }
  return out;
}

double l1_relative_error(const std::vector<double>& num, const std::vector<double>& ref) {
  if (num.size() != ref.size()) throw Error(ErrorCode::invalid_argument, "l1 error needs equal sizes");
  double d = 0.0, r = 0.0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    d += std::abs(num[i] - ref[i]);
    r += std::abs(ref[i]);
  }
  if (r == 0.0) throw Error(ErrorCode::invalid_argument, "l1 error against a zero reference");
  return d / r;
}

int count_clusters(const std::vector<double>& g, double threshold, bool smooth) {
  const std::size_t n = g.size();
  if (n == 0) return 0;
  std::vector<double> s = g;
  if (smooth && n >= 2) {
    s[0] = 0.5 * (g[0] + g[1]);
    s[n - 1] = 0.5 * (g[n - 2] + g[n - 1]);
    for (std::size_t i = 1; i + 1 < n; ++i) s[i] = (g[i - 1] + g[i] + g[i + 1]) / 3.0;
  }
  const double top = *std::max_element(s.begin(), s.end());
  if (!(top > 0.0)) return 0;
  const double floor = threshold * top;
  const double ninf = -std::numeric_limits<double>::infinity();
  int count = 0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && s[j + 1] == s[i]) ++j;  // plateau [i, j]
    const double left = i > 0 ? s[i - 1] : ninf;
    const double right = j + 1 < n ? s[j + 1] : ninf;
    if (s[i] > left && s[i] > right && s[i] > floor) ++count;
    i = j + 1;
  }
  return count;
}

}  // namespace kinnet
