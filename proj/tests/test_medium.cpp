#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wavetr/medium.hpp"
#include "wavetr/quadrature.hpp"
#include "wavetr/screen.hpp"

using namespace wavetr;
using std::numbers::pi;

TEST_CASE("covariance values") {
  const MediumModel m = make_medium(2.0, 3.0);
  CHECK(covariance_at(m, {0, 0}) == doctest::Approx(12.0).epsilon(1e-15));
  CHECK(covariance_at(m, {3.0, 0}) == doctest::Approx(12.0 * std::exp(-0.5)).epsilon(1e-14));
  CHECK(covariance_at(m, {0, -3.0}) == doctest::Approx(12.0 * std::exp(-0.5)).epsilon(1e-14));
}

TEST_CASE("profile derivative constraints (finite differences)") {
  // Checked for every registered profile, as the registry contract requires.
  for (const char* name : {"gaussian"}) {
    const auto& prof = covariance_profile(name);
    const double h = 1e-3;
    CHECK(prof.value(0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(prof.value(h) - prof.value(0.0)) / h < 2 * h);  // Ctilde'(0) = 0
    const double second = (prof.value(h) - 2 * prof.value(0.0) + prof.value(h)) / (h * h);
    CHECK(second == doctest::Approx(-1.0).epsilon(1e-5));
  }
  // dimensionful check: d2C/dx^2 (0) = -sigma^2 / l_c along any axis
  const MediumModel m = make_medium(1.7, 2.2);
  const double h = 1e-3 * m.l_c;
  const double d2x =
      (covariance_at(m, {h, 0}) - 2 * covariance_at(m, {0, 0}) + covariance_at(m, {-h, 0})) /
      (h * h);
  const double d2y =
      (covariance_at(m, {0, h}) - 2 * covariance_at(m, {0, 0}) + covariance_at(m, {0, -h})) /
      (h * h);
  CHECK(d2x == doctest::Approx(-m.sigma * m.sigma / m.l_c).epsilon(1e-5));
  CHECK(d2y == doctest::Approx(-m.sigma * m.sigma / m.l_c).epsilon(1e-5));
}

TEST_CASE("unknown profile rejected") {
  CHECK_THROWS_AS(make_medium(1.0, 1.0, "vonkarman"), ValidationError);
}

TEST_CASE("spectral density") {
  const MediumModel m = make_medium(1.3, 0.8);
  const double expect0 = 2 * pi * m.sigma * m.sigma * std::pow(m.l_c, 3);
  CHECK(spectral_density(m, {0, 0}) == doctest::Approx(expect0).epsilon(1e-14));

  SUBCASE("Chat(0) equals the integral of C (quadrature oracle)") {
    auto r = quad::integrate_2d<double>(
        [&](double x, double y) { return covariance_at(m, {x, y}); }, -8 * m.l_c, 8 * m.l_c,
        -8 * m.l_c, 8 * m.l_c, 1e-9);
    CHECK(spectral_density(m, {0, 0}) == doctest::Approx(r.value).epsilon(1e-6));
  }
  SUBCASE("nonnegative over a k-grid") {
    for (double kx = -30; kx <= 30; kx += 3.7)
      for (double ky = -30; ky <= 30; ky += 4.1) CHECK(spectral_density(m, {kx, ky}) >= 0.0);
  }
  SUBCASE("Parseval: (2pi)^-2 int Chat = C(0)") {
    const double kcut = 12.0 / m.l_c;
    auto r = quad::integrate_2d<double>(
        [&](double kx, double ky) { return spectral_density(m, {kx, ky}); }, -kcut, kcut, -kcut,
        kcut, 1e-9);
    CHECK(r.value / (4 * pi * pi) == doctest::Approx(covariance_at(m, {0, 0})).epsilon(1e-6));
  }
}

TEST_CASE("screen synthesis basics") {
  const MediumModel m = make_medium(1.1, 1.0);
  const TransverseGrid g(32, 16.0);

  SUBCASE("delta_z = 0 gives the zero screen") {
    RngStream rng(5);
    const PhaseScreen s = synthesize_screen(m, g, 0.0, rng);
    for (std::size_t i = 0; i < s.values.size(); ++i) CHECK(s.values.data()[i] == 0.0);
  }
  SUBCASE("sqrt(delta_z) scaling with identical noise") {
    RngStream r1(9), r2(9);
    const PhaseScreen s1 = synthesize_screen(m, g, 0.25, r1);
    const PhaseScreen s4 = synthesize_screen(m, g, 1.00, r2);
    for (std::size_t i = 0; i < s1.values.size(); ++i)
      CHECK(s4.values.data()[i] == doctest::Approx(2.0 * s1.values.data()[i]).epsilon(1e-14));
  }
  SUBCASE("determinism: same stream state, bit-identical screen") {
    RngStream r1(123), r2(123);
    const PhaseScreen s1 = synthesize_screen(m, g, 0.5, r1);
    const PhaseScreen s2 = synthesize_screen(m, g, 0.5, r2);
    for (std::size_t i = 0; i < s1.values.size(); ++i)
      CHECK(s1.values.data()[i] == s2.values.data()[i]);
  }
  SUBCASE("undersampled grid rejected") {
    RngStream rng(5);
    const MediumModel fine = make_medium(1.0, 0.9);  // spacing 0.5 > l_c/2
    CHECK_THROWS_AS(synthesize_screen(fine, g, 0.5, rng), ValidationError);
  }
}

TEST_CASE("screen ensemble statistics") {
  // Monte Carlo moment oracle: variance ~ dz C(0), covariance at lag l_c,
  // stationarity, isotropy, and independence across steps.
  const MediumModel m = make_medium(1.3, 1.0);
  const TransverseGrid g(32, 16.0);
  const double dz = 0.7;
  const int n = 10000;

  const int lag = static_cast<int>(std::lround(m.l_c / g.spacing));  // 2 cells = l_c
  double var_a = 0, var_b = 0;
  double cov_x_a = 0, cov_x_b = 0, cov_y_a = 0, cross = 0;
  const int ax = 10, ay = 13, bx = 22, by = 5;
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::derive(77, static_cast<std::uint64_t>(i), 0);
    const PhaseScreen s = synthesize_screen(m, g, dz, rng);
    RngStream rng2 = RngStream::derive(77, static_cast<std::uint64_t>(i), 1);
    const PhaseScreen s2 = synthesize_screen(m, g, dz, rng2);
    var_a += s.values.at(ax, ay) * s.values.at(ax, ay);
    var_b += s.values.at(bx, by) * s.values.at(bx, by);
    cov_x_a += s.values.at(ax, ay) * s.values.at(ax + lag, ay);
    cov_x_b += s.values.at(bx, by) * s.values.at(bx + lag, by);
    cov_y_a += s.values.at(ax, ay) * s.values.at(ax, ay + lag);
    cross += s.values.at(ax, ay) * s2.values.at(ax, ay);
  }
  var_a /= n;
  var_b /= n;
  cov_x_a /= n;
  cov_x_b /= n;
  cov_y_a /= n;
  cross /= n;

  const double want_var = dz * covariance_at(m, {0, 0});
  const double want_cov = dz * covariance_at(m, {lag * g.spacing, 0});
  CHECK(var_a == doctest::Approx(want_var).epsilon(0.05));
  CHECK(var_b == doctest::Approx(want_var).epsilon(0.05));
  CHECK(cov_x_a == doctest::Approx(want_cov).epsilon(0.05));
  // stationarity: same lag at a different base point
  CHECK(cov_x_b == doctest::Approx(want_cov).epsilon(0.05));
  // isotropy: same lag along the other axis
  CHECK(cov_y_a == doctest::Approx(want_cov).epsilon(0.05));
  // independence across steps: |cross| under 4 standard errors
  CHECK(std::abs(cross) < 4.0 * want_var / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("zero mean") {
  const MediumModel m = make_medium(0.9, 1.0);
  const TransverseGrid g(32, 16.0);
  double mean = 0;
  const int n = 4000;
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::derive(31, static_cast<std::uint64_t>(i), 0);
    mean += synthesize_screen(m, g, 1.0, rng).values.at(7, 21);
  }
  mean /= n;
  const double se = std::sqrt(covariance_at(m, {0, 0}) / n);
  CHECK(std::abs(mean) < 4 * se);
}
