#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kinnet/model.hpp"

namespace kinnet {

// All numbers are written with 17 significant digits.

// Header w,c,f, row-major over (i, c).
void write_field_csv(const std::filesystem::path& path, const DensityField& f);
// Reads a w,c,f file. Every (i, c) of the grid must appear exactly once.
DensityField read_field_csv(const std::filesystem::path& path, const OpinionGrid& grid, const ConnectivityRange& crange);

// Header w,g
void write_g_csv(const std::filesystem::path& path, const OpinionGrid& grid, const std::vector<double>& g);
// Header c,rho
void write_rho_csv(const std::filesystem::path& path, const std::vector<double>& rho);

struct DiagnosticsRow {
  double t = 0.0;
  double mass = 0.0;
  double gamma = 0.0;
  double mean_opinion = 0.0;
  double l1_error = 0.0;
  bool has_error = false;
};
// Header t,mass,gamma,mean_opinion,l1_error; l1_error is empty when no oracle applies.
void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows);

std::string format_double(double x);

}  // namespace kinnet
