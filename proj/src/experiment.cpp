#include "kinnet/experiment.hpp"

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>

#include "kinnet/diagnostics.hpp"
#include "kinnet/error.hpp"
#include "kinnet/fp_solver.hpp"
#include "kinnet/marginals.hpp"
#include "kinnet/mc_solver.hpp"
#include "kinnet/network.hpp"
#include "kinnet/stationary.hpp"

namespace kinnet {

namespace {

using Clock = std::chrono::steady_clock;
namespace fs = std::filesystem;

std::vector<double> merged_times(const ExperimentConfig& cfg) {
  const double step = cfg.diag_interval > 0.0 ? cfg.diag_interval : cfg.T / 100.0;
  std::vector<double> t;
  const long n = static_cast<long>(std::floor(cfg.T / step + 1e-9));
  for (long k = 1; k <= n; ++k) t.push_back(std::min(cfg.T, k * step));
  t.push_back(cfg.T);
  for (double s : cfg.snapshots)
    if (s > 0.0 && s <= cfg.T) t.push_back(s);
  std::sort(t.begin(), t.end());
  // merge near-duplicates so the solvers do not take tiny steps
  std::vector<double> out;
  for (double x : t)
    if (out.empty() || x - out.back() > 1e-9 * std::max(1.0, cfg.T)) out.push_back(x);
  return out;
}

bool is_snapshot(const ExperimentConfig& cfg, double t) {
  if (t == 0.0) return true;
  for (double s : cfg.snapshots)
    if (std::abs(s - t) <= 1e-9 * std::max(1.0, cfg.T)) return true;
  return false;
}

// Reference field or marginal for the l1 column.
struct Oracle {
  OracleKind kind = OracleKind::none;
  std::vector<double> g;
  std::vector<double> rho;
  DensityField f;

  bool active() const { return kind != OracleKind::none; }
  double error(const DensityField& field) const {
    switch (kind) {
      case OracleKind::g_case1: return l1_relative_error(marginal_g(field), g);
      case OracleKind::f_product: return l1_relative_error(field.values(), f.values());
      case OracleKind::rho_inf: return l1_relative_error(marginal_rho(field), rho);
      case OracleKind::none: break;
    }
    return 0.0;
  }
};

double mean_opinion(const DensityField& f) {
  const auto g = marginal_g(f);
  double s = 0.0;
  for (int i = 0; i < f.rows(); ++i) s += f.grid().node(i) * g[i];
  return s * f.grid().dw();
}

Oracle make_oracle(const ExperimentConfig& cfg, const DensityField& f0) {
  Oracle o;
  o.kind = cfg.oracle;
  if (!o.active()) return o;
  const auto& p = cfg.params;
  const double gamma_law = p.gamma_policy == GammaPolicy::pinned ? p.gamma_ref : gamma(f0);
  o.rho = rho_inf_truncated({gamma_law, p.alpha, cfg.c_max});
  if (o.kind == OracleKind::rho_inf) return o;
  StationaryOpinionProfile prof;
  prof.kappa = 1.0;
  prof.mbar = mean_opinion(f0);
  prof.sigma2 = p.sigma2;
  prof.variant = StationaryOpinionProfile::Variant::case1;
  o.g = g_inf(prof, f0.grid());
  if (o.kind == OracleKind::f_product) o.f = f_inf_product(o.rho, o.g, f0.grid());
  return o;
}

DiagnosticsRow row_for(double t, const DensityField& f, const Oracle& oracle) {
  DiagnosticsRow r;
  r.t = t;
  r.mass = f.mass();
  r.gamma = gamma(f);
  r.mean_opinion = mean_opinion(f);
  if (oracle.active()) {
    r.l1_error = oracle.error(f);
    r.has_error = true;
  }
  return r;
}

class Writer {
 public:
  Writer(const fs::path& dir, std::vector<fs::path>& files) : dir_(dir), files_(files) { fs::create_directories(dir); }

  void snapshot(double t, const DensityField& f) {
    const std::string tag = time_label(t);
    write_field_csv(add("f_t" + tag + ".csv"), f);
    write_g_csv(add("g_t" + tag + ".csv"), f.grid(), marginal_g(f));
    write_rho_csv(add("rho_t" + tag + ".csv"), marginal_rho(f));
  }
  fs::path add(const std::string& name) {
    files_.push_back(dir_ / name);
    return files_.back();
  }

 private:
  fs::path dir_;
  std::vector<fs::path>& files_;
};

void run_fp_solver(const ExperimentConfig& cfg, const DensityField& f0, const Oracle& oracle, Writer& out,
                   ExperimentResult& res) {
  FpModel model{cfg.kernel, cfg.diffusion, cfg.params.sigma2, cfg.quadrature, cfg.params};
  FpSchedule sched{cfg.T, cfg.dt, merged_times(cfg)};
  FpObserver obs;
  obs.on_snapshot = [&](double t, const DensityField& f, long) {
    res.diagnostics.push_back(row_for(t, f, oracle));
    if (is_snapshot(cfg, t)) out.snapshot(t, f);
  };
  auto r = run_fp(f0, model, sched, obs);
  res.steps = r.steps;
  res.dt_history = std::move(r.dt_history);
}

void run_mc_solver(const ExperimentConfig& cfg, const DensityField& f0, const Oracle& oracle, Writer& out,
                   ExperimentResult& res) {
  Ensemble e = sample_initial(f0, static_cast<std::size_t>(cfg.samples), cfg.seed, cfg.params);
  McSchedule s;
  s.t_end = cfg.T;
  s.dt = cfg.mc_dt > 0.0 ? cfg.mc_dt : cfg.params.epsilon;
  s.epsilon = cfg.params.epsilon;
  s.sigma2 = cfg.params.sigma2;
  s.kernel = cfg.kernel;
  s.diffusion = cfg.diffusion;
  s.network = cfg.mc_network;
  s.snapshot_times = merged_times(cfg);
  auto r = run_mc(e, s, [&](double t, const Ensemble& ens, long) {
    const DensityField f = reconstruct_density(ens, f0.grid(), f0.crange());
    DiagnosticsRow row = row_for(t, f, oracle);
    row.mean_opinion = ens.mean_opinion();
    row.gamma = ens.mean_connectivity();
    res.diagnostics.push_back(row);
    if (is_snapshot(cfg, t)) out.snapshot(t, f);
  });
  res.steps = r.steps;
  // steps cut short to land on output times are not listed separately
  res.dt_history.emplace_back(s.dt, r.steps);
}

void run_network_only(const ExperimentConfig& cfg, const DensityField& f0, Writer& out, ExperimentResult& res) {
  const auto& p = cfg.params;
  const double g_law = p.gamma_policy == GammaPolicy::pinned ? p.gamma_ref : gamma(f0);
  const auto ref = rho_inf_truncated({g_law, p.alpha, cfg.c_max});
  const double m0 = mean_opinion(f0);
  auto row = [&](double t, const std::vector<double>& rho) {
    DiagnosticsRow r;
    r.t = t;
    for (std::size_t c = 0; c < rho.size(); ++c) {
      r.mass += rho[c];
      r.gamma += static_cast<double>(c) * rho[c];
    }
    r.mean_opinion = m0;
    if (cfg.oracle != OracleKind::none) {
      r.l1_error = l1_relative_error(rho, ref);
      r.has_error = true;
    }
    return r;
  };
  if (cfg.network_mode == NetworkMode::stationary) {
    const auto law = rho_inf_table({g_law, p.alpha, cfg.c_max});
    write_rho_csv(out.add("rho_inf.csv"), law);
    res.diagnostics.push_back(row(0.0, law));
    return;
  }
  if (p.rate_mode != RateMode::constant)
    throw Error(ErrorCode::unsupported, "network-only evolution needs constant rates");
  std::vector<double> rho = marginal_rho(f0);
  const auto times = merged_times(cfg);
  res.diagnostics.push_back(row(0.0, rho));
  write_rho_csv(out.add("rho_t" + time_label(0.0) + ".csv"), rho);
  double t = 0.0;
  std::size_t next = 0;
  while (next < times.size()) {
    const double bound = rho_explicit_dt_bound(rho, p);
    double dt = 0.9 * bound;
    if (cfg.dt.kind == DtPolicy::Kind::fixed) dt = std::min(cfg.dt.value, bound);
    bool hit = false;
    if (t + dt >= times[next] * (1.0 - 1e-13)) {
      dt = times[next] - t;
      hit = true;
    }
    try {
      rho = step_rho_explicit(rho, p, dt);
    } catch (const Error& err) {
      throw Error(err.code(), std::string(err.what()) + " (step " + std::to_string(res.steps) + ")", err.admissible_dt());
    }
    ++res.steps;
    record_dt(res.dt_history, dt);
    t = hit ? times[next] : t + dt;
    if (hit) {
      res.diagnostics.push_back(row(t, rho));
      if (is_snapshot(cfg, t)) write_rho_csv(out.add("rho_t" + time_label(t) + ".csv"), rho);
      ++next;
    }
  }
}

void run_moments(const ExperimentConfig& cfg, const DensityField& f0, Writer& out, ExperimentResult& res) {
  const auto m0 = compute_moments(f0);
  const double dt_user = cfg.dt.kind == DtPolicy::Kind::fixed ? cfg.dt.value : 0.0;
  const auto traj = solve_moment_system(m0.rho, m0.m_w, m0.E_w, cfg.params, cfg.T, merged_times(cfg), dt_user);
  for (const auto& r : traj.records) {
    DiagnosticsRow d;
    d.t = r.t;
    d.mass = r.mass;
    d.gamma = r.gamma;
    d.mean_opinion = r.total_mean;
    res.diagnostics.push_back(d);
    if (!is_snapshot(cfg, r.t)) continue;
    std::ofstream os(out.add("moments_t" + time_label(r.t) + ".csv"));
    if (!os) throw Error(ErrorCode::io, "cannot write moments file");
    os << "c,rho,m_w,E_w\n";
    for (std::size_t c = 0; c < r.rho.size(); ++c)
      os << c << ',' << format_double(r.rho[c]) << ',' << format_double(r.m_w[c]) << ',' << format_double(r.E_w[c])
         << '\n';
  }
}

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_manifest(const ExperimentConfig& cfg, const ExperimentResult& res, const std::string& started) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json params;
  for (const auto& [k, v] : describe(cfg)) params[k] = v;
  j["preset"] = cfg.preset;
  j["solver"] = to_string(cfg.solver);
  j["seed"] = cfg.seed;
  j["parameters"] = params;
  j["steps"] = res.steps;
  auto hist = nlohmann::json::array();
  for (const auto& [dt, n] : res.dt_history) hist.push_back({{"dt", dt}, {"count", n}});
  j["dt_history"] = hist;
  j["started_utc"] = started;
  j["wall_time_seconds"] = res.wall_seconds;
  j["threads"] = omp_get_max_threads();
  auto files = nlohmann::json::array();
  for (const auto& f : res.files) files.push_back(f.filename().string());
  j["outputs"] = files;
  std::ofstream os(res.out_dir / "manifest.json");
  if (!os) throw Error(ErrorCode::io, "cannot write manifest");
  os << j.dump(2) << '\n';
}

ExperimentResult run_single(const ExperimentConfig& cfg) {
  const std::string started = utc_now();
  const auto t0 = Clock::now();
  ExperimentResult res;
  res.out_dir = cfg.out_dir;
  Writer out(cfg.out_dir, res.files);
  const OpinionGrid grid(cfg.N);
  const ConnectivityRange crange(cfg.c_max);
  const DensityField f0 = make_initial(cfg.initial, grid, crange);
  const Oracle oracle = make_oracle(cfg, f0);
  switch (cfg.solver) {
    case SolverKind::fp: run_fp_solver(cfg, f0, oracle, out, res); break;
    case SolverKind::mc: run_mc_solver(cfg, f0, oracle, out, res); break;
    case SolverKind::network_only: run_network_only(cfg, f0, out, res); break;
    case SolverKind::moments: run_moments(cfg, f0, out, res); break;
  }
  write_diagnostics_csv(out.add("diagnostics.csv"), res.diagnostics);
  res.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  write_manifest(cfg, res, started);
  return res;
}

}  // namespace

std::string time_label(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6g", t);
  return buf;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.alpha_sweep.empty()) return run_single(cfg);
  ExperimentResult all;
  all.out_dir = cfg.out_dir;
  for (double a : cfg.alpha_sweep) {
    ExperimentConfig sub = cfg;
    sub.alpha_sweep.clear();
    sub.params.alpha = a;
    sub.initial.alpha = a;
    sub.out_dir = cfg.out_dir / ("alpha_" + time_label(a));
    auto r = run_single(sub);
    all.files.insert(all.files.end(), r.files.begin(), r.files.end());
    all.steps += r.steps;
    all.wall_seconds += r.wall_seconds;
  }
  return all;
}

}  // namespace kinnet
