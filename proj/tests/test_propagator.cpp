#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wavetr/homogeneous.hpp"
#include "wavetr/propagator.hpp"
#include "wavetr/rng.hpp"

using namespace wavetr;

namespace {

ComplexField random_field(const TransverseGrid& g, std::uint64_t seed) {
  RngStream rng(seed);
  ComplexField f(g);
  for (std::size_t i = 0; i < f.size(); ++i) {
    double a, b;
    rng.gauss_pair(a, b);
    f.data()[i] = cplx(a, b);
  }
  return f;
}

MediumRealization zero_realization(const TransverseGrid& g, double L, int n_steps) {
  MediumRealization r;
  r.grid = g;
  r.delta_z = L / n_steps;
  for (int j = 0; j < n_steps; ++j)
    r.screens.push_back(PhaseScreen{RealField(g), r.delta_z});
  return r;
}

double max_rel_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0, scale = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    scale = std::max(scale, std::abs(b.data()[i]));
  }
  return m / scale;
}

}  // namespace

TEST_CASE("diffraction step identities") {
  const TransverseGrid g(64, 16.0);
  const ComplexField f = random_field(g, 3);
  SUBCASE("dz = 0 is the identity") {
    const ComplexField out = diffraction_step(f, 0.0, 10.0);
    CHECK(max_rel_diff(out, f) < 1e-14);
  }
  SUBCASE("uniform field is the k = 0 eigenmode") {
    ComplexField u(g, cplx(0.7, -0.2));
    const ComplexField out = diffraction_step(u, 3.0, 10.0);
    CHECK(max_rel_diff(out, u) < 1e-13);
  }
  SUBCASE("norm preserved") {
    const ComplexField out = diffraction_step(f, 5.0, 10.0);
    CHECK(std::abs(out.l2_norm() / f.l2_norm() - 1.0) < 1e-13);
  }
}

TEST_CASE("free-space gaussian beam matches the analytic Fresnel formula") {
  // Analytic oracle: width w beam spreads with w(z)^2 = w^2 (1 + (z/(k0 w^2))^2).
  const TransverseGrid g(256, 40.0);
  const double w = 1.2, k0 = 30.0, z = 15.0;
  const ComplexField beam = gaussian_beam(g, {0, 0}, w);
  const ComplexField out = diffraction_step(beam, z, k0);
  double max_err = 0, max_abs = 0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const cplx ana = homogeneous_beam_value(g.point(ix, iy), {0, 0}, w, z, k0);
      max_err = std::max(max_err, std::abs(out.at(ix, iy) - ana));
      max_abs = std::max(max_abs, std::abs(ana));
    }
  CHECK(max_err / max_abs < 1e-6);

  // intensity width against the spread formula via second moments
  double num = 0, den = 0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double i2 = std::norm(out.at(ix, iy));
      num += g.coord(ix) * g.coord(ix) * i2;
      den += i2;
    }
  // |u|^2 has Gaussian radius w(z)/sqrt(2) per axis in the second moment
  const double wz2 = w * w * (1.0 + std::pow(z / (k0 * w * w), 2));
  CHECK(num / den == doctest::Approx(wz2 / 2.0).epsilon(1e-6));
}

TEST_CASE("screen step") {
  const TransverseGrid g(32, 16.0);
  const MediumModel m = make_medium(1.0, 1.0);
  const ComplexField f = random_field(g, 5);
  SUBCASE("zero screen is the identity") {
    const PhaseScreen zero{RealField(g), 0.5};
    const ComplexField out = screen_step(f, zero, 12.0);
    CHECK(max_rel_diff(out, f) == 0.0);
  }
  SUBCASE("pointwise modulus preserved exactly") {
    RngStream rng(9);
    const PhaseScreen s = synthesize_screen(m, g, 0.5, rng);
    const ComplexField out = screen_step(f, s, 12.0);
    for (std::size_t i = 0; i < f.size(); ++i)
      CHECK(std::abs(out.data()[i]) ==
            doctest::Approx(std::abs(f.data()[i])).epsilon(1e-14));
  }
  SUBCASE("grid mismatch rejected") {
    const TransverseGrid g2(64, 16.0);
    const PhaseScreen s{RealField(g2), 0.5};
    CHECK_THROWS_AS(screen_step(f, s, 12.0), ValidationError);
  }
}

TEST_CASE("screen ensemble reproduces the Ito damping factor") {
  // E[exp(i k0 dB/2)] = exp(-k0^2 dz C(0) / 8), Monte Carlo oracle.
  const TransverseGrid g(32, 16.0);
  const MediumModel m = make_medium(0.25, 1.0);
  const double k0 = 12.0, dz = 0.25;
  const double want = std::exp(-k0 * k0 * dz * m.C0() / 8.0);  // ~ e^-0.28
  cplx acc = 0;
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    RngStream rng = RngStream::derive(404, static_cast<std::uint64_t>(i), 0);
    const PhaseScreen s = synthesize_screen(m, g, dz, rng);
    acc += std::polar(1.0, 0.5 * k0 * s.values.at(11, 23));
  }
  acc /= n;
  CHECK(std::abs(acc) == doctest::Approx(want).epsilon(0.02));
}

TEST_CASE("propagate through zero screens equals one Fresnel step") {
  const TransverseGrid g(64, 16.0);
  const double k0 = 14.0, L = 6.0;
  const ComplexField f = gaussian_beam(g, {0.5, -0.25}, 1.0);
  const ComplexField direct = diffraction_step(f, L, k0);
  const ComplexField split = propagate(f, zero_realization(g, L, 16), k0);
  CHECK(max_rel_diff(split, direct) < 1e-12);
}

TEST_CASE("propagate equals the composition of elementary steps") {
  const TransverseGrid g(64, 16.0);
  const MediumModel m = make_medium(0.05, 1.0);
  const double k0 = 14.0, L = 6.0;
  const int steps = 8;
  const MediumRealization real = make_realization(m, g, L, steps, 99, 0);
  const ComplexField f0 = gaussian_beam(g, {0, 0}, 1.5);

  const ComplexField fused = propagate(f0, real, k0);
  ComplexField manual = f0;
  for (int j = 0; j < steps; ++j) {
    manual = diffraction_step(manual, 0.5 * real.delta_z, k0);
    manual = screen_step(manual, real.screens[j], k0);
    manual = diffraction_step(manual, 0.5 * real.delta_z, k0);
  }
  CHECK(max_rel_diff(fused, manual) < 1e-12);

  // the callback path reports exactly the composition states
  int calls = 0;
  ComplexField last;
  propagate(f0, real, k0, {}, [&](int idx, const ComplexField& st) {
    ++calls;
    if (idx == steps - 1) last = st;
  });
  CHECK(calls == steps);
  CHECK(max_rel_diff(last, manual) == 0.0);  // same code path, bit-identical
}

TEST_CASE("unitarity over 64 scattering steps") {
  const TransverseGrid g(64, 16.0);
  const MediumModel m = make_medium(0.04, 1.0);
  const MediumRealization real = make_realization(m, g, 8.0, 64, 21, 0);
  const ComplexField f = random_field(g, 8);
  const ComplexField out = propagate(f, real, 20.0);
  CHECK(std::abs(out.l2_norm() / f.l2_norm() - 1.0) < 1e-12);
}

TEST_CASE("propagation through a stored realization is bit-identical") {
  const TransverseGrid g(64, 16.0);
  const MediumModel m = make_medium(0.05, 1.0);
  const MediumRealization real = make_realization(m, g, 6.0, 12, 7, 3);
  const ComplexField f = gaussian_beam(g, {0, 0}, 1.0);
  const ComplexField a = propagate(f, real, 14.0);
  const ComplexField b = propagate(f, real, 14.0);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.data()[i] == b.data()[i]);
}

TEST_CASE("green field homogeneous oracle and preconditions") {
  const TransverseGrid g(128, 24.0);
  const double k0 = 16.0, L = 10.0, w = 2.0 * g.spacing;
  const Vec2 y{0.6, -0.4};
  const MediumRealization real = zero_realization(g, L, 8);
  const ComplexField out = green_field(y, real, k0, w);
  double max_err = 0, max_abs = 0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const cplx ana = homogeneous_beam_value(g.point(ix, iy), y, w, L, k0) /
                       (2.0 * std::numbers::pi * w * w);
      max_err = std::max(max_err, std::abs(out.at(ix, iy) - ana));
      max_abs = std::max(max_abs, std::abs(ana));
    }
  CHECK(max_err / max_abs < 1e-6);

  CHECK_THROWS_AS(green_field({7.0, 0.0}, real, k0, w), ValidationError);
}

TEST_CASE("reciprocity: forward from a at b equals backward from b at a") {
  const TransverseGrid g(64, 16.0);
  const MediumModel m = make_medium(0.06, 1.0);
  const double k0 = 14.0, L = 6.0;
  RngStream pick(31337);
  for (int realization = 0; realization < 3; ++realization) {
    const MediumRealization real = make_realization(m, g, L, 12, 555, realization);
    for (int pair = 0; pair < 5; ++pair) {
      const int ax = 16 + static_cast<int>(pick.next_u64() % 32);
      const int ay = 16 + static_cast<int>(pick.next_u64() % 32);
      const int bx = 16 + static_cast<int>(pick.next_u64() % 32);
      const int by = 16 + static_cast<int>(pick.next_u64() % 32);
      ComplexField da(g), db(g);
      da.at(ax, ay) = 1.0;
      db.at(bx, by) = 1.0;
      PropagationOptions fwd, bwd;
      bwd.reverse = true;
      const cplx g_ab = propagate(da, real, k0, fwd).at(bx, by);
      const cplx g_ba = propagate(db, real, k0, bwd).at(ax, ay);
      CHECK(std::abs(g_ab - g_ba) / std::abs(g_ab) < 1e-10);
    }
  }
}

TEST_CASE("translation covariance in a homogeneous medium") {
  const TransverseGrid g(64, 16.0);
  const double k0 = 14.0, L = 5.0, w = 2.0 * g.spacing;
  const MediumRealization real = zero_realization(g, L, 4);
  const int shift = 6;
  const ComplexField base = green_field({0.1, -0.3}, real, k0, w);
  const ComplexField moved = green_field({0.1 + shift * g.spacing, -0.3}, real, k0, w);
  double max_err = 0;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const int jx = (ix + shift) % g.n;
      max_err = std::max(max_err, std::abs(moved.at(jx, iy) - base.at(ix, iy)));
    }
  CHECK(max_err / base.max_abs() < 1e-8);
}

TEST_CASE("mean green field decays at the Ito rate (reduced-size check)") {
  // Ensemble-mean field is the homogeneous beam times exp(-k0^2 C(0) z / 8).
  // Beam-matched projection over a disk estimates the on-axis coherent
  // amplitude; fit the log ratio across four distances.
  const TransverseGrid g(64, 16.0);
  const MediumModel m = make_medium(std::sqrt(0.012), 1.0);
  const double k0 = 8.0, L = 8.0, w = 1.0;
  const int n_steps = 16, n_real = 200;
  const int snap_every = 4;  // distances 2, 4, 6, 8

  std::vector<ComplexField> mean_at(4, ComplexField(g));
  for (int i = 0; i < n_real; ++i) {
    const MediumRealization real = make_realization(m, g, L, n_steps, 616, i);
    const ComplexField src = gaussian_source(g, {0, 0}, w);
    propagate(src, real, k0, {}, [&](int idx, const ComplexField& st) {
      if ((idx + 1) % snap_every == 0) {
        ComplexField& acc = mean_at[(idx + 1) / snap_every - 1];
        for (std::size_t j = 0; j < acc.size(); ++j) acc.data()[j] += st.data()[j];
      }
    });
  }

  std::vector<double> zs, logratio;
  for (int s = 0; s < 4; ++s) {
    const double z = (s + 1) * snap_every * (L / n_steps);
    cplx num = 0;
    double den = 0;
    for (int iy = 0; iy < g.n; ++iy)
      for (int ix = 0; ix < g.n; ++ix) {
        const Vec2 p = g.point(ix, iy);
        if (p.norm2() > 16.0) continue;
        const cplx hom = homogeneous_beam_value(p, {0, 0}, w, z, k0) /
                         (2.0 * std::numbers::pi * w * w);
        num += (mean_at[s].at(ix, iy) / static_cast<double>(n_real)) * std::conj(hom);
        den += std::norm(hom);
      }
    zs.push_back(z);
    logratio.push_back(std::log(std::abs(num / den)));
  }
  // least-squares slope
  double zm = 0, lm = 0;
  for (int s = 0; s < 4; ++s) {
    zm += zs[s];
    lm += logratio[s];
  }
  zm /= 4;
  lm /= 4;
  double sxx = 0, sxy = 0;
  for (int s = 0; s < 4; ++s) {
    sxx += (zs[s] - zm) * (zs[s] - zm);
    sxy += (zs[s] - zm) * (logratio[s] - lm);
  }
  const double slope = sxy / sxx;
  const double want = -k0 * k0 * m.C0() / 8.0;
  CHECK(slope == doctest::Approx(want).epsilon(0.25));
}
