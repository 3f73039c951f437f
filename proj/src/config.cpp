#include "wavetr/config.hpp"

#include <cmath>

namespace wavetr {

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> warnings;
  if (!(k0 > 0)) throw ValidationError("k0", "must be positive");
  if (!(L > 0)) throw ValidationError("L", "must be positive");
  if (n_steps < 1) throw ValidationError("n_steps", "must be >= 1");
  if (n_realizations < 1) throw ValidationError("n_realizations", "must be >= 1");
  if (!(epsilon > 0) || epsilon > 1.0)
    throw ValidationError("epsilon", "must lie in (0, 1]");
  if (!(mirror.R_m > 0)) throw ValidationError("R_m", "must be positive");
  if (!(mirror.rho0 > 0)) throw ValidationError("rho_0", "must be positive");
  if (!(mirror.r0 > mirror.rho0))
    throw ValidationError("R_m", "r_0 must exceed rho_0 (requires R_m > 0)");
  if (!(grid.spacing > 0)) throw ValidationError("grid_extent", "must be positive");

  // Medium resolved by the grid, in both space and spectrum.
  if (grid.spacing > 0.5 * medium.l_c)
    throw ValidationError("grid_n", "spacing exceeds l_c/2; medium unresolved");
  if (grid.dual_spacing() > 1.0 / medium.l_c)
    throw ValidationError("grid_extent", "dual spacing exceeds 1/l_c; medium undersampled");
  if (grid.extent < 8.0 * medium.l_c)
    warnings.push_back("grid_extent < 8 l_c: screen periodization error may be noticeable");

  // Mirror kernels resolved; element smoothing must dominate the source
  // regularization (w_src = 2 spacing <= rho_0/4).
  if (mirror.rho0 < 2.0 * grid.spacing)
    throw ValidationError("rho_0", "must be >= 2 grid spacings");
  if (source_width() > 0.25 * mirror.rho0)
    throw ValidationError("rho_0", "must be >= 8 grid spacings so w_src <= rho_0/4");

  // Weak per-screen scattering: k0^2 C(0) dz / 4 <= 0.1.
  if (medium.sigma > 0) {
    const double per_screen = k0 * k0 * medium.C0() * delta_z() / 4.0;
    if (per_screen > 0.1)
      throw ValidationError("n_steps",
                            "per-screen phase variance k0^2 C(0) dz/4 = " +
                                std::to_string(per_screen) + " exceeds 0.1; increase n_steps");
  }

  // Per-step discrete chirp Nyquist condition (Fresnel sanity):
  // L/(k0 spacing^2 n) <= n_steps / 2.
  const double fresnel = L / (k0 * grid.spacing * grid.spacing * grid.n);
  if (fresnel > 0.5 * n_steps)
    throw ValidationError("grid_n", "diffraction kernel aliased: L/(k0 h^2 n) = " +
                                        std::to_string(fresnel) + " > n_steps/2");

  if (!grid.in_central_half(source_offset))
    throw ValidationError("y_x", "source offset outside the central half of the grid");

  if (image && !std::isfinite(image->support_radius()))
    throw ValidationError("image", "support radius must be finite");
  return warnings;
}

ExperimentConfig apply_scintillation_scaling(const ExperimentConfig& cfg, const ScalingConfig& s) {
  if (!(s.epsilon > 0)) throw ValidationError("epsilon", "must be positive");
  const double eps = s.epsilon;
  ExperimentConfig out = cfg;
  out.medium.sigma = cfg.medium.sigma * std::sqrt(eps);
  out.mirror = derive_mirror(cfg.mirror.R_m / eps, cfg.mirror.rho0 / eps);
  out.L = cfg.L / eps;
  out.source_offset = cfg.source_offset / eps;
  out.shift_phase = cfg.shift_phase / eps;
  if (cfg.image) out.image = cfg.image->scaled(eps);
  return out;
}

}  // namespace wavetr
