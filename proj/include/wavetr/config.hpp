#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wavetr/grid.hpp"
#include "wavetr/image.hpp"
#include "wavetr/medium.hpp"
#include "wavetr/mirror.hpp"

namespace wavetr {

struct ScalingConfig {
  double epsilon = 1.0;
};

/// One experiment: geometry, medium, discretization, seeds. Immutable after
/// construction/validation; safe to share across threads. All quantities are
/// in one consistent user-chosen unit system.
struct ExperimentConfig {
  double k0 = 0;  ///< wavenumber
  double L = 0;   ///< propagation distance
  MirrorSpec mirror;
  Vec2 source_offset;  ///< y, source position in the target plane
  Vec2 shift_phase;    ///< b, linear-phase vector (0 = classical time reversal)
  std::optional<ImageFunction> image;
  MediumModel medium;
  TransverseGrid grid;
  int n_steps = 0;
  std::uint64_t master_seed = 0;
  int n_realizations = 100;
  double epsilon = 1.0;  ///< scaling knob consumed by apply_scintillation_scaling

  /// Source regularization width, 2 grid cells.
  double source_width() const { return 2.0 * grid.spacing; }
  double delta_z() const { return L / n_steps; }
  /// sigma^2 k0^2 l_c L; L / L_sca is this over 4.
  double scattering_strength() const {
    return medium.sigma * medium.sigma * k0 * k0 * medium.l_c * L;
  }
  /// sigma^2 L^3 / (6 l_c), the aperture-saturation scale of the strong-
  /// scattering formulas.
  double saturation_scale() const {
    return medium.sigma * medium.sigma * L * L * L / (6.0 * medium.l_c);
  }

  /// Throws ValidationError naming the offending field; returns non-fatal
  /// warnings (periodization margin and similar).
  std::vector<std::string> validate() const;
};

/// sca:sci map: sigma^2 -> eps sigma^2, R_m -> R_m/eps, rho_0 -> rho_0/eps,
/// L -> L/eps, y -> y/eps, b -> b/eps, psi -> eps^2 psi(eps .). The grid and
/// seeds are artifact parameters and stay fixed. The dimensionless product
/// sigma^2 L (hence L/L_sca) is invariant.
ExperimentConfig apply_scintillation_scaling(const ExperimentConfig& cfg, const ScalingConfig& s);

}  // namespace wavetr
