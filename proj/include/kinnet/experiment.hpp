#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "kinnet/config.hpp"
#include "kinnet/io.hpp"

namespace kinnet {

struct ExperimentResult {
  std::filesystem::path out_dir;
  std::vector<DiagnosticsRow> diagnostics;
  std::vector<std::filesystem::path> files;
  long steps = 0;
  std::vector<std::pair<double, long>> dt_history;
  double wall_seconds = 0.0;
};

// Runs one configuration and writes into cfg.out_dir:
//   diagnostics.csv, manifest.json, and per snapshot time t
//   f_t<t>.csv (w,c,f), g_t<t>.csv (w,g), rho_t<t>.csv (c,rho).
// With an alpha sweep (network-only) each alpha gets its own subdirectory
// alpha_<a>; the result then lists every file and leaves diagnostics empty.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

// Time label used in snapshot file names.
std::string time_label(double t);

}  // namespace kinnet
