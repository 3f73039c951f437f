#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavetr/config.hpp"
#include "wavetr/configfile.hpp"
#include "wavetr/medium.hpp"
#include "wavetr/mirror.hpp"
#include "wavetr/rng.hpp"

using namespace wavetr;

namespace {

ExperimentConfig valid_config() {
  ExperimentConfig cfg;
  cfg.k0 = 16;
  cfg.L = 24;
  cfg.mirror = derive_mirror(std::sqrt(16.0 - 2.25), 1.5);  // r0 = 4, rho0 = 1.5
  cfg.medium = make_medium(0.05, 1.0);
  cfg.grid = TransverseGrid(128, 24.0);
  cfg.n_steps = 48;
  cfg.master_seed = 7;
  return cfg;
}

}  // namespace

TEST_CASE("derive_mirror basics") {
  // degenerate-element limit of r0^2 = R_m^2 + rho0^2
  CHECK(derive_mirror(1.0, 1e-9).r0 == doctest::Approx(1.0).epsilon(1e-12));
  // 3-4-5 arithmetic
  CHECK(derive_mirror(3.0, 4.0).r0 == doctest::Approx(5.0).epsilon(1e-15));
  // harmonic-type mean with equal scales (formula check, r0 = rho0 = 2)
  const double R0 = std::sqrt(2.0 / (1.0 / 4.0 + 1.0 / 4.0));
  CHECK(R0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(derive_mirror(2.0, 2.0).C0 == 1.0);

  CHECK_THROWS_WITH_AS(derive_mirror(-1.0, 1.0), doctest::Contains("R_m"), ValidationError);
  CHECK_THROWS_WITH_AS(derive_mirror(1.0, 0.0), doctest::Contains("rho_0"), ValidationError);
}

TEST_CASE("mirror invariants") {
  RngStream rng(11);
  for (int i = 0; i < 200; ++i) {
    const double R = 0.05 + 10 * rng.uniform01();
    const double rho = 0.05 + 10 * rng.uniform01();
    const MirrorSpec m = derive_mirror(R, rho);
    CHECK(m.r0 > m.rho0);
    CHECK(m.r0 * m.r0 - m.rho0 * m.rho0 == doctest::Approx(R * R).epsilon(1e-13));
    CHECK(m.R0 <= std::min(m.r0, m.rho0) * std::sqrt(2.0) * (1 + 1e-14));
    const double lhs = 1.0 / (m.R0 * m.R0);
    const double rhs = 0.5 * (1.0 / (m.r0 * m.r0) + 1.0 / (m.rho0 * m.rho0));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
  }
}

TEST_CASE("scattering mean free path") {
  CHECK(scattering_mean_free_path(make_medium(1, 1), 1.0) == doctest::Approx(4.0));
  CHECK(scattering_mean_free_path(make_medium(2, 1), 1.0) == doctest::Approx(1.0));
  CHECK(std::isinf(scattering_mean_free_path(make_medium(0, 1), 1.0)));
  // decay-rate identity exp(-L/(2 Lsca)) = exp(-k0^2 C(0) L / 8)
  const MediumModel m = make_medium(0.3, 2.5);
  const double k0 = 7.0, L = 11.0;
  const double lhs = std::exp(-L / (2 * scattering_mean_free_path(m, k0)));
  const double rhs = std::exp(-k0 * k0 * m.C0() * L / 8.0);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
}

TEST_CASE("scintillation scaling") {
  ExperimentConfig cfg = valid_config();
  cfg.source_offset = {0.7, -0.3};
  cfg.shift_phase = {2.0, 1.0};
  cfg.image = ImageFunction::from_points({{{0.5, 0.0}, 1.0}, {{0.0, -0.5}, 2.0}});

  SUBCASE("identity at eps = 1") {
    const ExperimentConfig out = apply_scintillation_scaling(cfg, {1.0});
    CHECK(out.L == cfg.L);
    CHECK(out.medium.sigma == cfg.medium.sigma);
    CHECK(out.mirror.R_m == cfg.mirror.R_m);
    CHECK(out.source_offset == cfg.source_offset);
    CHECK(out.shift_phase == cfg.shift_phase);
  }
  SUBCASE("eps = 1/2 doubles lengths, halves sigma^2") {
    const ExperimentConfig out = apply_scintillation_scaling(cfg, {0.5});
    CHECK(out.L == doctest::Approx(2 * cfg.L));
    CHECK(out.medium.sigma * out.medium.sigma ==
          doctest::Approx(0.5 * cfg.medium.sigma * cfg.medium.sigma).epsilon(1e-15));
    CHECK(out.mirror.R_m == doctest::Approx(2 * cfg.mirror.R_m));
    CHECK(out.mirror.rho0 == doctest::Approx(2 * cfg.mirror.rho0));
    CHECK(out.mirror.r0 == doctest::Approx(2 * cfg.mirror.r0).epsilon(1e-14));
    CHECK(out.source_offset.x == doctest::Approx(2 * cfg.source_offset.x));
    CHECK(out.shift_phase.y == doctest::Approx(2 * cfg.shift_phase.y));
    CHECK(out.image->points()[0].position.x == doctest::Approx(1.0));
    CHECK(out.image->points()[0].weight == doctest::Approx(1.0));  // weights unchanged
  }
  SUBCASE("composition eps1 then eps2 = eps1*eps2") {
    const auto two_step =
        apply_scintillation_scaling(apply_scintillation_scaling(cfg, {0.5}), {0.6});
    const auto one_step = apply_scintillation_scaling(cfg, {0.3});
    CHECK(two_step.L == doctest::Approx(one_step.L).epsilon(1e-14));
    CHECK(two_step.medium.sigma == doctest::Approx(one_step.medium.sigma).epsilon(1e-14));
    CHECK(two_step.mirror.R_m == doctest::Approx(one_step.mirror.R_m).epsilon(1e-14));
    CHECK(two_step.mirror.rho0 == doctest::Approx(one_step.mirror.rho0).epsilon(1e-14));
    CHECK(two_step.source_offset.x == doctest::Approx(one_step.source_offset.x).epsilon(1e-14));
    CHECK(two_step.shift_phase.x == doctest::Approx(one_step.shift_phase.x).epsilon(1e-14));
  }
  SUBCASE("L over L_sca is eps-invariant") {
    const ExperimentConfig out = apply_scintillation_scaling(cfg, {0.25});
    const double before = cfg.L / scattering_mean_free_path(cfg.medium, cfg.k0);
    const double after = out.L / scattering_mean_free_path(out.medium, out.k0);
    CHECK(after == doctest::Approx(before).epsilon(1e-13));
  }
  SUBCASE("rejects eps <= 0") {
    CHECK_THROWS_AS(apply_scintillation_scaling(cfg, {0.0}), ValidationError);
    CHECK_THROWS_AS(apply_scintillation_scaling(cfg, {-0.5}), ValidationError);
  }
}

TEST_CASE("config validation") {
  CHECK(valid_config().validate().empty());

  SUBCASE("undersampled medium in spectrum") {
    ExperimentConfig cfg = valid_config();
    cfg.medium = make_medium(0.001, 24.0 / (2 * std::numbers::pi) * 1.1);  // dual > 1/l_c
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("grid_extent"), ValidationError);
  }
  SUBCASE("unresolved medium in space") {
    ExperimentConfig cfg = valid_config();
    cfg.medium.l_c = 0.3;  // spacing 0.1875 > l_c/2 = 0.15
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("grid_n"), ValidationError);
  }
  SUBCASE("element radius vs source regularization") {
    ExperimentConfig cfg = valid_config();
    cfg.mirror = derive_mirror(4.0, 1.0);  // rho0 < 8 spacings = 1.5
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("rho_0"), ValidationError);
  }
  SUBCASE("per-screen scattering too strong") {
    ExperimentConfig cfg = valid_config();
    cfg.medium = make_medium(0.5, 1.0);
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("n_steps"), ValidationError);
  }
  SUBCASE("chirp aliasing guard") {
    ExperimentConfig cfg = valid_config();
    cfg.n_steps = 1;
    cfg.L = 2000.0;
    CHECK_THROWS_AS(cfg.validate(), ValidationError);
  }
  SUBCASE("source outside central half") {
    ExperimentConfig cfg = valid_config();
    cfg.source_offset = {10.0, 0.0};
    CHECK_THROWS_WITH_AS(cfg.validate(), doctest::Contains("y_x"), ValidationError);
  }
  SUBCASE("periodization warning") {
    ExperimentConfig cfg = valid_config();
    cfg.medium = make_medium(0.01, 3.5);  // extent 24 < 8 l_c = 28
    const auto warnings = cfg.validate();
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("periodization") != std::string::npos);
  }
}

TEST_CASE("config file round trip and errors") {
  ExperimentConfig cfg = valid_config();
  cfg.source_offset = {0.25, -0.125};
  cfg.n_realizations = 37;
  const std::string text = write_config_text(cfg);
  const ExperimentConfig back = parse_config_text(text);
  CHECK(write_config_text(back) == text);  // canonical round trip
  CHECK(back.master_seed == cfg.master_seed);
  CHECK(back.n_realizations == 37);

  CHECK_THROWS_AS(parse_config_text("k0 = 1\nbogus_key = 2\n"), UsageError);
  CHECK_THROWS_AS(parse_config_text(text + "k0 = 2\n"), UsageError);  // duplicate
  CHECK_THROWS_AS(parse_config_text("k0 = 1\n"), UsageError);         // missing keys
  CHECK_THROWS_AS(parse_config_text("k0 : 1\n"), UsageError);         // bad syntax
  // comments and blank lines are fine
  CHECK_NOTHROW(parse_config_text("# comment\n\n" + text));
  // values are validated downstream, not at parse time
  ExperimentConfig bad = parse_config_text(text);
  bad.k0 = -1;
  CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("k0"), ValidationError);
}

TEST_CASE("rng streams deterministic and distinct") {
  RngStream a = RngStream::derive(42, 3, 5);
  RngStream b = RngStream::derive(42, 3, 5);
  RngStream c = RngStream::derive(42, 3, 6);
  for (int i = 0; i < 16; ++i) CHECK(a.next_u64() == b.next_u64());
  bool any_diff = false;
  RngStream a2 = RngStream::derive(42, 3, 5);
  for (int i = 0; i < 16; ++i) any_diff |= (a2.next_u64() != c.next_u64());
  CHECK(any_diff);
}

TEST_CASE("rng gaussian moments") {
  RngStream rng(2024);
  const int n = 200000;
  double s1 = 0, s2 = 0, s4 = 0;
  for (int i = 0; i < n; ++i) {
    const double g = rng.gauss();
    s1 += g;
    s2 += g * g;
    s4 += g * g * g * g;
  }
  CHECK(std::abs(s1 / n) < 0.01);
  CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(s4 / n == doctest::Approx(3.0).epsilon(0.05));
}
