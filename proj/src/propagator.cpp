#include "wavetr/propagator.hpp"

#include <cmath>

#include "wavetr/fft.hpp"

namespace wavetr {

namespace {

std::vector<cplx> chirp_factors(const TransverseGrid& g, double dz, double k0) {
  std::vector<cplx> c(g.size());
  for (int iy = 0; iy < g.n; ++iy) {
    const double ky = g.wavenumber(iy);
    for (int ix = 0; ix < g.n; ++ix) {
      const double kx = g.wavenumber(ix);
      c[static_cast<std::size_t>(iy) * g.n + ix] =
          std::polar(1.0, -(kx * kx + ky * ky) * dz / (2.0 * k0));
    }
  }
  return c;
}

std::vector<double> absorber_mask(const TransverseGrid& g) {
  std::vector<double> m(g.size());
  const double r0 = 0.45 * g.extent;
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double q = g.point(ix, iy).norm2() / (r0 * r0);  // (|x|/r0)^2
      const double q4 = q * q * q * q;
      m[static_cast<std::size_t>(iy) * g.n + ix] = std::exp(-(q4 * q4));  // (|x|/r0)^16
    }
  return m;
}

void apply_screen(cplx* a, const PhaseScreen& s, double k0) {
  const double* db = s.values.data();
  const std::size_t count = s.values.size();
  for (std::size_t i = 0; i < count; ++i) a[i] *= std::polar(1.0, 0.5 * k0 * db[i]);
}

}  // namespace

ComplexField diffraction_step(const ComplexField& f, double dz, double k0) {
  if (!(dz >= 0)) throw ValidationError("dz", "must be nonnegative");
  const TransverseGrid& g = f.grid();
  Fft2D& fft = Fft2D::thread_cached(g.n);
  std::vector<cplx> spec(g.size());
  fft.forward(f.data(), spec.data());
  const auto chirp = chirp_factors(g, dz, k0);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= chirp[i];
  ComplexField out(g);
  fft.backward(spec.data(), out.data());
  out *= 1.0 / static_cast<double>(g.size());
  return out;
}

ComplexField screen_step(const ComplexField& f, const PhaseScreen& s, double k0) {
  if (!(f.grid() == s.values.grid()))
    throw ValidationError("grid", "field and screen grids differ");
  ComplexField out = f;
  apply_screen(out.data(), s, k0);
  return out;
}

ComplexField propagate(const ComplexField& f0, const MediumRealization& real, double k0,
                       const PropagationOptions& opts, const StepCallback& after_step) {
  if (real.screens.empty()) return f0;
  if (!(f0.grid() == real.grid))
    throw ValidationError("grid", "field and realization grids differ");
  for (const auto& s : real.screens)
    if (!(s.values.grid() == real.grid))
      throw ValidationError("grid", "realization screens on mismatched grids");

  const TransverseGrid& g = f0.grid();
  const int m = static_cast<int>(real.screens.size());
  const double dz = real.delta_z;

  std::vector<double> mask;
  if (opts.absorbing_boundary) mask = absorber_mask(g);
  auto masked = [&](ComplexField& fld) {
    if (mask.empty()) return;
    cplx* a = fld.data();
    for (std::size_t i = 0; i < mask.size(); ++i) a[i] *= mask[i];
  };
  auto screen_at = [&](int idx) -> const PhaseScreen& {
    return real.screens[opts.reverse ? m - 1 - idx : idx];
  };

  if (after_step) {
    ComplexField f = f0;
    for (int idx = 0; idx < m; ++idx) {
      f = diffraction_step(f, 0.5 * dz, k0);
      apply_screen(f.data(), screen_at(idx), k0);
      masked(f);
      f = diffraction_step(f, 0.5 * dz, k0);
      after_step(idx, f);
    }
    return f;
  }

  // Fused path: merge adjacent half steps, two transforms per screen.
  Fft2D& fft = Fft2D::thread_cached(g.n);
  const auto half = chirp_factors(g, 0.5 * dz, k0);
  const auto full = chirp_factors(g, dz, k0);
  const double inv = 1.0 / static_cast<double>(g.size());

  std::vector<cplx> a(f0.data(), f0.data() + f0.size());
  std::vector<cplx> b(f0.size());
  fft.forward(a.data(), b.data());
  for (std::size_t i = 0; i < b.size(); ++i) b[i] *= half[i];
  for (int idx = 0; idx < m; ++idx) {
    fft.backward(b.data(), a.data());
    for (cplx& z : a) z *= inv;
    apply_screen(a.data(), screen_at(idx), k0);
    if (!mask.empty())
      for (std::size_t i = 0; i < mask.size(); ++i) a[i] *= mask[i];
    fft.forward(a.data(), b.data());
    const auto& c = (idx + 1 < m) ? full : half;
    for (std::size_t i = 0; i < b.size(); ++i) b[i] *= c[i];
  }
  ComplexField out(g);
  fft.backward(b.data(), out.data());
  out *= inv;
  return out;
}

ComplexField green_field(Vec2 y, const MediumRealization& real, double k0, double source_width,
                         const PropagationOptions& opts) {
  if (!real.grid.in_central_half(y))
    throw ValidationError("y_x",
                          "source outside the central half of the grid (wraparound contamination)");
  return propagate(gaussian_source(real.grid, y, source_width), real, k0, opts);
}

}  // namespace wavetr
