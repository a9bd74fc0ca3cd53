#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kinnet/fp_solver.hpp"
#include "kinnet/initial_data.hpp"
#include "kinnet/kernels.hpp"
#include "kinnet/model.hpp"

namespace kinnet {

enum class SolverKind { fp, mc, network_only, moments };
// network-only: evolve the degree law in time, or write the closed form.
enum class NetworkMode { evolve, stationary };
// Reference used for the l1_error column.
enum class OracleKind { none, g_case1, f_product, rho_inf };

struct ExperimentConfig {
  std::string preset;
  SolverKind solver = SolverKind::fp;
  ModelParams params;
  InteractionKernel kernel;
  DiffusionFunction diffusion = DiffusionFunction::one_minus_w2();
  QuadratureRule quadrature = QuadratureRule::midpoint;
  InitialDataSetup initial;
  int N = 80;
  int c_max = 250;
  double T = 1.0;
  DtPolicy dt;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "out";
  std::vector<double> snapshots;
  // Spacing of the diagnostics rows; 0 means T/100.
  double diag_interval = 0.0;
  // Monte Carlo
  long samples = 100000;
  double mc_dt = 0.0;  // 0 means dt = epsilon
  bool mc_network = true;
  // network-only
  NetworkMode network_mode = NetworkMode::evolve;
  std::vector<double> alpha_sweep;
  OracleKind oracle = OracleKind::none;

  void validate() const;
};

// Starts from a named preset: test1, test2, test3, test4, fig1.
ExperimentConfig preset_config(const std::string& name);

// key = value lines, '#' starts a comment. A 'preset' key is applied first,
// then the remaining keys in file order. Unknown keys are rejected with the
// line number.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::filesystem::path& path);

// Sets one key; throws ErrorCode::config for unknown keys or bad values.
void apply_setting(ExperimentConfig& cfg, const std::string& key, const std::string& value);

// Every setting as key/value strings, in a stable order. Feeding these back
// through apply_setting reproduces the configuration.
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& cfg);

std::string to_string(SolverKind s);
std::string to_string(OracleKind o);
QuadratureRule parse_quadrature(const std::string& s);
std::string to_string(QuadratureRule q);

}  // namespace kinnet
