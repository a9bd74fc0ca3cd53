#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "kinnet/config.hpp"
#include "kinnet/error.hpp"
#include "kinnet/experiment.hpp"
#include "kinnet/io.hpp"
#include "kinnet/stationary.hpp"

namespace {

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<std::string> solver;
  std::optional<std::string> quadrature;

  void apply(kinnet::ExperimentConfig& cfg) const {
    if (seed) cfg.seed = *seed;
    if (out_dir) cfg.out_dir = *out_dir;
    if (solver) kinnet::apply_setting(cfg, "solver", *solver);
    if (quadrature) cfg.quadrature = kinnet::parse_quadrature(*quadrature);
  }
};

void report(const kinnet::ExperimentResult& r) {
  std::cout << r.out_dir.string() << ": " << r.steps << " steps, " << r.wall_seconds << " s";
  if (!r.diagnostics.empty() && r.diagnostics.back().has_error)
    std::cout << ", final l1 error " << kinnet::format_double(r.diagnostics.back().l1_error);
  std::cout << '\n';
}

void reproduce(const std::string& name, const Overrides& ov) {
  using namespace kinnet;
  if (name != "test2") {
    ExperimentConfig cfg = preset_config(name);
    cfg.out_dir = "out/" + name;
    ov.apply(cfg);
    report(run_experiment(cfg));
    return;
  }
  // both rate families of the error-decay study
  for (const char* mode : {"constant", "remark1"})
    for (double v : {1e3, 1e4, 1e5}) {
      ExperimentConfig cfg = preset_config("test2");
      apply_setting(cfg, "rate_mode", mode);
      cfg.params.rate_r = cfg.params.rate_a = v;
      ov.apply(cfg);
      const std::string base = ov.out_dir ? *ov.out_dir : "out/test2";
      cfg.out_dir = std::filesystem::path(base) / (std::string(mode) + "_" + time_label(v));
      report(run_experiment(cfg));
    }
}

int fail(const std::string& code, const std::string& message, double admissible_dt = NAN) {
  nlohmann::ordered_json j;
  j["error"] = code;
  j["message"] = message;
  if (std::isfinite(admissible_dt)) j["admissible_dt"] = admissible_dt;
  std::cerr << j.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kinetic opinion dynamics on an evolving network"};
  app.require_subcommand(1);
  Overrides ov;
  std::uint64_t seed = 0;
  std::string out_dir, solver, quadrature;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--out-dir", out_dir, "output directory");
    sub->add_option("--solver", solver, "fp, mc, network-only or moments");
    sub->add_option("--quadrature", quadrature, "midpoint or milne")->check(CLI::IsMember({"midpoint", "milne"}));
  };

  std::string config_path;
  auto* sim = app.add_subcommand("simulate", "run a configuration file");
  sim->add_option("config", config_path, "key = value configuration")->required();
  add_flags(sim);

  std::string preset;
  auto* rep = app.add_subcommand("reproduce", "run a built-in test case");
  rep->add_option("name", preset, "test1, test2, test3, test4 or fig1")
      ->required()
      ->check(CLI::IsMember({"test1", "test2", "test3", "test4", "fig1"}));
  add_flags(rep);

  auto* orc = app.add_subcommand("oracle", "print a closed-form stationary law as CSV");
  orc->require_subcommand(1);
  double gamma = 30.0, alpha = 0.1;
  int c_max = 250;
  bool truncated = false;
  auto* orho = orc->add_subcommand("rho-inf", "stationary degree law, columns c,rho");
  orho->add_option("--gamma", gamma, "mean connectivity");
  orho->add_option("--alpha", alpha, "attraction coefficient");
  orho->add_option("--c-max", c_max, "largest connectivity");
  orho->add_flag("--truncated", truncated, "renormalize on 0..c_max");
  double kappa = 1.0, mbar = 0.0, sigma2 = 0.05;
  int n = 80;
  std::string variant = "case1";
  auto* og = orc->add_subcommand("g-inf", "stationary opinion profile, columns w,g");
  og->add_option("--kappa", kappa, "kernel weight");
  og->add_option("--mbar", mbar, "mean opinion");
  og->add_option("--sigma2", sigma2, "noise variance");
  og->add_option("--variant", variant, "case1, case2 or generic")->check(CLI::IsMember({"case1", "case2", "generic"}));
  og->add_option("--N", n, "grid intervals");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("usage", e.what());
  }

  try {
    for (auto* sub : {sim, rep}) {
      if (!sub->parsed()) continue;
      if (sub->count("--seed")) ov.seed = seed;
      if (sub->count("--out-dir")) ov.out_dir = out_dir;
      if (sub->count("--solver")) ov.solver = solver;
      if (sub->count("--quadrature")) ov.quadrature = quadrature;
    }
    if (sim->parsed()) {
      auto cfg = kinnet::load_config(config_path);
      ov.apply(cfg);
      report(kinnet::run_experiment(cfg));
    } else if (rep->parsed()) {
      reproduce(preset, ov);
    } else if (orho->parsed()) {
      const kinnet::StationaryDegreeLaw law{gamma, alpha, c_max};
      const auto rho = truncated ? kinnet::rho_inf_truncated(law) : kinnet::rho_inf_table(law);
      std::cout << "c,rho\n";
      for (std::size_t c = 0; c < rho.size(); ++c) std::cout << c << ',' << kinnet::format_double(rho[c]) << '\n';
    } else if (og->parsed()) {
      kinnet::StationaryOpinionProfile prof;
      prof.kappa = kappa;
      prof.mbar = mbar;
      prof.sigma2 = sigma2;
      prof.variant = variant == "case1"   ? kinnet::StationaryOpinionProfile::Variant::case1
                     : variant == "case2" ? kinnet::StationaryOpinionProfile::Variant::case2
                                          : kinnet::StationaryOpinionProfile::Variant::generic;
      const kinnet::OpinionGrid grid(n);
      const auto g = kinnet::g_inf(prof, grid);
      std::cout << "w,g\n";
      for (int i = 0; i < grid.size(); ++i)
        std::cout << kinnet::format_double(grid.node(i)) << ',' << kinnet::format_double(g[i]) << '\n';
    }
  } catch (const kinnet::Error& e) {
    return fail(std::string(kinnet::to_string(e.code())), e.what(), e.admissible_dt());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
