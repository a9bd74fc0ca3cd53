#include "kinnet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "kinnet/error.hpp"

namespace kinnet {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_field_csv(const std::filesystem::path& path, const DensityField& f) {
  auto out = open_out(path);
  out << "w,c,f\n";
  for (int i = 0; i < f.rows(); ++i) {
    const std::string w = format_double(f.grid().node(i));
    for (int c = 0; c < f.cols(); ++c) out << w << ',' << c << ',' << format_double(f(i, c)) << '\n';
  }
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

DensityField read_field_csv(const std::filesystem::path& path, const OpinionGrid& grid, const ConnectivityRange& crange) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line.rfind("w,c,f", 0) != 0)
    throw Error(ErrorCode::io, path.string() + ": expected header w,c,f");
  DensityField f(grid, crange);
  std::vector<char> seen(f.values().size(), 0);
  long lineno = 1;
  const double tol = 1e-9 * grid.dw();
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ss(line);
    double w = 0.0, v = 0.0;
    long c = 0;
    char s1 = 0, s2 = 0;
    if (!(ss >> w >> s1 >> c >> s2 >> v) || s1 != ',' || s2 != ',')
      throw Error(ErrorCode::io, path.string() + ":" + std::to_string(lineno) + ": malformed row");
    const long i = std::lround((w + 1.0) / grid.dw());
    if (i < 0 || i > grid.intervals() || std::abs(grid.node(static_cast<int>(i)) - w) > tol || c < 0 ||
        c > crange.c_max())
      throw Error(ErrorCode::io, path.string() + ":" + std::to_string(lineno) + ": point not on the grid");
    if (!(v >= 0.0)) throw Error(ErrorCode::negative_density, path.string() + ":" + std::to_string(lineno) + ": negative density");
    const auto k = static_cast<std::size_t>(i) * crange.size() + static_cast<std::size_t>(c);
    if (seen[k]) throw Error(ErrorCode::io, path.string() + ":" + std::to_string(lineno) + ": duplicate point");
    seen[k] = 1;
    f.values()[k] = v;
  }
  for (char s : seen)
    if (!s) throw Error(ErrorCode::io, path.string() + ": field does not cover the grid");
  return f;
}

void write_g_csv(const std::filesystem::path& path, const OpinionGrid& grid, const std::vector<double>& g) {
  auto out = open_out(path);
  out << "w,g\n";
  for (int i = 0; i < grid.size(); ++i) out << format_double(grid.node(i)) << ',' << format_double(g.at(i)) << '\n';
}

void write_rho_csv(const std::filesystem::path& path, const std::vector<double>& rho) {
  auto out = open_out(path);
  out << "c,rho\n";
  for (std::size_t c = 0; c < rho.size(); ++c) out << c << ',' << format_double(rho[c]) << '\n';
}

void write_diagnostics_csv(const std::filesystem::path& path, const std::vector<DiagnosticsRow>& rows) {
  auto out = open_out(path);
  out << "t,mass,gamma,mean_opinion,l1_error\n";
  for (const auto& r : rows) {
    out << format_double(r.t) << ',' << format_double(r.mass) << ',' << format_double(r.gamma) << ','
        << format_double(r.mean_opinion) << ',';
    if (r.has_error) out << format_double(r.l1_error);
    out << '\n';
  }
}

}  // namespace kinnet
