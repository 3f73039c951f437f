#include "wavetr/screen.hpp"

#include <cmath>

#include "wavetr/fft.hpp"

namespace wavetr {

PhaseScreen synthesize_screen(const MediumModel& m, const TransverseGrid& g,
                              double delta_z, RngStream& rng) {
  if (!(delta_z >= 0)) throw ValidationError("delta_z", "must be nonnegative");
  if (g.spacing > 0.5 * m.l_c)
    throw ValidationError("grid", "spacing must be <= l_c/2 to resolve the medium");

  PhaseScreen s;
  s.delta_z = delta_z;
  s.values = RealField(g);

  const int n = g.n;
  std::vector<cplx> spec(g.size());
  // Spectral amplitude sqrt(Chat(k)) / extent, unit complex white noise per bin.
  for (int iy = 0; iy < n; ++iy) {
    const double ky = g.wavenumber(iy);
    for (int ix = 0; ix < n; ++ix) {
      const double kx = g.wavenumber(ix);
      double g1, g2;
      rng.gauss_pair(g1, g2);
      const double amp = std::sqrt(spectral_density(m, {kx, ky})) / g.extent;
      spec[static_cast<std::size_t>(iy) * n + ix] = amp * cplx(g1, g2) / std::sqrt(2.0);
    }
  }

  std::vector<cplx> out(g.size());
  Fft2D::thread_cached(n).backward(spec.data(), out.data());

  const double scale = std::sqrt(2.0 * delta_z);
  for (std::size_t i = 0; i < out.size(); ++i) s.values.data()[i] = scale * out[i].real();
  return s;
}

MediumRealization make_realization(const MediumModel& m, const TransverseGrid& g, double L,
                                   int n_steps, std::uint64_t master_seed, std::uint64_t index) {
  MediumRealization real;
  real.grid = g;
  real.delta_z = L / n_steps;
  real.screens.reserve(static_cast<std::size_t>(n_steps));
  for (int j = 0; j < n_steps; ++j) {
    RngStream stream = RngStream::derive(master_seed, index, static_cast<std::uint64_t>(j));
    real.screens.push_back(synthesize_screen(m, g, real.delta_z, stream));
  }
  return real;
}

}  // namespace wavetr
