#include "wavetr/timereversal.hpp"

#include <cmath>

#include "wavetr/fft.hpp"

// Equivalent-source derivation (the docs version, kept with the code).
//
// The mirror records u_rec(x_m) = [phi_rho0 * G(L, ., y)](x_m) and re-emits
// from each element a rho0-wide Gaussian patch. Writing the target-plane
// field as the mirror integral
//   u_tr(x) = int u_em(x, x_m) M(x_m) conj(u_rec(x_m)) dx_m,
//   u_em(x, x_m) = [phi_rho0 * G(L, ., x)](x_m),
//   M(x_m) = exp(-|x_m|^2/R_m^2 + i b.x_m/R_m^2) conj(psi_hat(x_m/R_m^2)),
// substituting u_em and exchanging integrals gives
//   u_tr(x) = int G(L, xi, x) [phi_rho0 * (M conj(u_rec))](xi) dxi,
// i.e. a single forward propagation of s = phi_rho0 * (M conj(u_rec)).
// That replaces the O(N^4) element-by-element sum with one O(N log N) pass
// and is exact (linearity of the propagator plus evenness of phi_rho0).
//
// Normalization: expanding the Gaussian products in the mirror integral
// collapses them to exp(-|x'|^2/r0^2 - |y'|^2/(4 rho0^2)) with the constant
// R_m^2/(4 pi rho0^2 r0^2) in front. The moment formulas use the convention
// in which that constant is set to one, so run_experiment divides it out.

namespace wavetr {

ComplexField smooth_gaussian(const ComplexField& f, double rho) {
  const TransverseGrid& g = f.grid();
  Fft2D& fft = Fft2D::thread_cached(g.n);
  std::vector<cplx> spec(g.size());
  fft.forward(f.data(), spec.data());
  for (int iy = 0; iy < g.n; ++iy) {
    const double ky = g.wavenumber(iy);
    for (int ix = 0; ix < g.n; ++ix) {
      const double kx = g.wavenumber(ix);
      spec[static_cast<std::size_t>(iy) * g.n + ix] *=
          std::exp(-0.5 * rho * rho * (kx * kx + ky * ky));
    }
  }
  ComplexField out(g);
  fft.backward(spec.data(), out.data());
  out *= 1.0 / static_cast<double>(g.size());
  return out;
}

RecordedField record(const ComplexField& g_at_mirror, double rho0) {
  if (rho0 < 2.0 * g_at_mirror.grid().spacing)
    throw ValidationError("rho_0", "element kernel under-resolved (need rho_0 >= 2 spacings)");
  return RecordedField{smooth_gaussian(g_at_mirror, rho0), rho0};
}

ComplexField emission_source(const RecordedField& rec, const MirrorSpec& mirror, Vec2 b,
                             const ImageFunction* psi) {
  const TransverseGrid& g = rec.u_rec.grid();
  if (!std::isfinite(b.norm2())) throw ValidationError("b_x", "shift phase must be finite");
  const double inv_Rm2 = 1.0 / (mirror.R_m * mirror.R_m);
  ComplexField m(g);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const Vec2 x = g.point(ix, iy);
      cplx factor = std::exp(-x.norm2() * inv_Rm2) * std::polar(1.0, b.dot(x) * inv_Rm2);
      if (psi) factor *= std::conj(psi->fourier(x * inv_Rm2));
      m.at(ix, iy) = factor * std::conj(rec.u_rec.at(ix, iy));
    }
  return smooth_gaussian(m, rec.rho0);
}

RefocusedField run_experiment(const ExperimentConfig& cfg, const MediumRealization& real,
                              std::uint64_t realization_index) {
  if (!(real.grid == cfg.grid))
    throw ValidationError("grid", "realization generated on a different grid");

  PropagationOptions opts;
  opts.absorbing_boundary = cfg.medium.sigma > 0;

  opts.reverse = true;
  ComplexField at_mirror =
      green_field(cfg.source_offset, real, cfg.k0, cfg.source_width(), opts);
  RecordedField rec = record(at_mirror, cfg.mirror.rho0);
  ComplexField source =
      emission_source(rec, cfg.mirror, cfg.shift_phase, cfg.image ? &*cfg.image : nullptr);

  opts.reverse = false;
  ComplexField u = propagate(source, real, cfg.k0, opts);
  u *= 1.0 / cfg.mirror.tr_normalization();

  RefocusedField out;
  out.u_tr = std::move(u);
  out.realization_index = realization_index;
  out.shift_phase = cfg.shift_phase;
  out.has_image = cfg.image.has_value();
  return out;
}

}  // namespace wavetr
