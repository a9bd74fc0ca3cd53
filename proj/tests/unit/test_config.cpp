#include <doctest.h>

#include <string>

#include "kinnet/config.hpp"
#include "kinnet/error.hpp"

using namespace kinnet;

namespace {

std::string config_error(const std::string& text) {
  try {
    parse_config(text, "t.cfg");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("config") {
  TEST_CASE("presets") {
    for (const char* name : {"test1", "test2", "test3", "test4", "fig1"}) {
      const auto c = preset_config(name);
      CHECK(c.preset == name);
      CHECK(c.params.gamma_policy == GammaPolicy::pinned);
      CHECK(c.params.gamma_ref == 30.0);
    }
    CHECK(preset_config("test4").kernel.h.delta() == 0.25);
    CHECK(!preset_config("test3").kernel.k.clamped());
    CHECK(preset_config("fig1").alpha_sweep.size() == 3);
    CHECK_THROWS_AS(preset_config("test9"), Error);
  }

  TEST_CASE("preset is applied first, later keys override") {
    const auto c = parse_config("T = 0.5\npreset = test1   # comment\n\nquadrature = milne\nseed = 12\n");
    CHECK(c.T == 0.5);
    CHECK(c.quadrature == QuadratureRule::milne);
    CHECK(c.seed == 12u);
    CHECK(c.initial.kind == InitialKind::test1_g0);
  }

  TEST_CASE("kernel, diffusion and list syntax") {
    const auto c = parse_config(
        "solver = fp\ninitial = test4_uniform\nT = 1\n"
        "kernel_h = bounded_confidence_scaled:1.01\nkernel_k = power:3,2\n"
        "diffusion = constant:0.5\nsnapshots = 0.5, 1\n");
    CHECK(c.kernel.h.scaled());
    CHECK(c.kernel.h.delta() == doctest::Approx(1.01));
    CHECK(c.kernel.k.clamped());
    CHECK(c.kernel.k.b() == 2.0);
    CHECK(c.diffusion.kind() == DiffusionFunction::Kind::constant);
    CHECK(c.snapshots == std::vector<double>{0.5, 1.0});
  }

  TEST_CASE("errors name the line") {
    CHECK(contains(config_error("preset = test1\nbogus_key = 1\n"), "t.cfg:2"));
    CHECK(contains(config_error("preset = test1\nbogus_key = 1\n"), "unknown key 'bogus_key'"));
    CHECK(contains(config_error("preset = test1\nT = 1\nT = 2\n"), "duplicate key 'T'"));
    CHECK(contains(config_error("preset = test1\nT\n"), "t.cfg:2"));
    CHECK(contains(config_error("preset = test1\nT = abc\n"), "not a number"));
    CHECK(contains(config_error("preset = test1\nN = 1.5\n"), "not an integer"));
    CHECK(contains(config_error("preset = test1\nkernel_h = fuzzy\n"), "unknown kernel"));
    CHECK(contains(config_error("solver = fp\nT = 1\n"), "missing required key 'initial'"));
    CHECK(contains(config_error("preset = test2\n"), "rate"));
    CHECK(contains(config_error("preset = test1\nsolver = mc\nsamples = 3\n"), "even"));
  }

  TEST_CASE("test2 accepts one rate or both") {
    CHECK(parse_config("preset = test2\nrate = 1e4\n").params.rate_a == 1e4);
    const auto c = parse_config("preset = test2\nrate_r = 10\nrate_a = 20\nrate_mode = remark1\n");
    CHECK(c.params.rate_r == 10.0);
    CHECK(c.params.rate_mode == RateMode::remark1);
  }

  TEST_CASE("describe round-trips through apply_setting") {
    for (const char* name : {"test1", "test3", "test4", "fig1"}) {
      const auto a = preset_config(name);
      ExperimentConfig b;
      for (const auto& [k, v] : describe(a))
        if (k != "preset") apply_setting(b, k, v);
      CHECK(describe(a).size() == describe(b).size());
      auto da = describe(a), db = describe(b);
      for (std::size_t i = 0; i < da.size(); ++i)
        if (da[i].first != "preset") CHECK(da[i] == db[i]);
    }
  }
}
