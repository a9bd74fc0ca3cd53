#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "kinnet/error.hpp"
#include "kinnet/io.hpp"

using namespace kinnet;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "kinnet_io_test";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("field CSV round trip is exact") {
    const auto f = kinnet::testing::random_field(10, 7, 4);
    const auto p = scratch("field.csv");
    write_field_csv(p, f);
    const auto g = read_field_csv(p, f.grid(), f.crange());
    CHECK(g.values() == f.values());
    CHECK(slurp(p).rfind("w,c,f\n", 0) == 0);
  }

  TEST_CASE("field CSV must cover the grid once") {
    const auto p = scratch("bad.csv");
    {
      std::ofstream out(p);
      out << "w,c,f\n-1,0,1\n-1,0,2\n";
    }
    CHECK_THROWS_AS(read_field_csv(p, OpinionGrid(2), ConnectivityRange(1)), Error);
    {
      std::ofstream out(p);
      out << "w,c,f\n-1,0,1\n";
    }
    CHECK_THROWS_AS(read_field_csv(p, OpinionGrid(2), ConnectivityRange(1)), Error);
    CHECK_THROWS_AS(read_field_csv(scratch("missing.csv"), OpinionGrid(2), ConnectivityRange(1)), Error);
  }

  TEST_CASE("diagnostics CSV leaves the error column empty without an oracle") {
    const auto p = scratch("diag.csv");
    std::vector<DiagnosticsRow> rows(2);
    rows[0] = {0.0, 1.0, 30.0, -0.25, 0.0, false};
    rows[1] = {1.0, 1.0, 30.0, -0.25, 0.125, true};
    write_diagnostics_csv(p, rows);
    CHECK(slurp(p) == "t,mass,gamma,mean_opinion,l1_error\n0,1,30,-0.25,\n1,1,30,-0.25,0.125\n");
  }

  TEST_CASE("marginal CSVs") {
    const auto p = scratch("rho.csv");
    write_rho_csv(p, {0.5, 0.25, 0.25});
    CHECK(slurp(p) == "c,rho\n0,0.5\n1,0.25\n2,0.25\n");
    const auto q = scratch("g.csv");
    write_g_csv(q, OpinionGrid(2), {0.0, 1.0, 0.0});
    CHECK(slurp(q) == "w,g\n-1,0\n0,1\n1,0\n");
  }

  TEST_CASE("17 significant digits") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  }
}
