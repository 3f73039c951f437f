#pragma once
#include <cmath>
#include <numbers>

#include "wavetr/errors.hpp"

namespace wavetr {

/// Gaussian mirror geometry: aperture radius R_m, element radius rho_0, and
/// the derived scales r_0^2 = R_m^2 + rho_0^2 and
/// 1/R_0^2 = (1/r_0^2 + 1/rho_0^2)/2.
struct MirrorSpec {
  double R_m = 0;
  double rho0 = 0;
  double r0 = 0;
  double R0 = 0;
  /// Normalization constant of the two-leg field; fixed to 1 by convention.
  /// The computed value is kept read-only for documentation.
  double C0 = 1.0;

  /// The value the normalization constant would take for a wavenumber k0.
  double C0_formula(double k0) const {
    return (r0 * r0 - rho0 * rho0) /
           (16.0 * std::numbers::pi * k0 * k0 * rho0 * rho0 * r0 * r0);
  }

  /// Ratio between the simulated two-leg field (unit-integral element
  /// kernels, literal mirror integral) and the C0=1-normalized convention the
  /// moment formulas use: R_m^2 / (4 pi rho0^2 r0^2).
  double tr_normalization() const {
    return R_m * R_m / (4.0 * std::numbers::pi * rho0 * rho0 * r0 * r0);
  }
};

inline MirrorSpec derive_mirror(double R_m, double rho0) {
  if (!(R_m > 0)) throw ValidationError("R_m", "must be positive");
  if (!(rho0 > 0)) throw ValidationError("rho_0", "must be positive");
  MirrorSpec m;
  m.R_m = R_m;
  m.rho0 = rho0;
  m.r0 = std::sqrt(R_m * R_m + rho0 * rho0);
  m.R0 = std::sqrt(2.0 / (1.0 / (m.r0 * m.r0) + 1.0 / (rho0 * rho0)));
  m.C0 = 1.0;
  return m;
}

}  // namespace wavetr
