#pragma once
#include <functional>

#include "wavetr/field.hpp"
#include "wavetr/screen.hpp"

namespace wavetr {

struct PropagationOptions {
  /// Super-Gaussian amplitude mask exp(-(|x|/(0.45 extent))^16) after each
  /// step. Off by default (unitarity); on for long strong-scattering runs,
  /// where FFT periodicity would otherwise wrap diffuse energy.
  bool absorbing_boundary = false;
  /// Traverse screens in reverse order (physical propagation from z=L to
  /// z=0 through the same frozen medium).
  bool reverse = false;
};

/// Spectral multiply by exp(-i |k|^2 dz / (2 k0)); exact discrete unitary.
ComplexField diffraction_step(const ComplexField& f, double dz, double k0);

/// Pointwise multiply by exp(i k0 dB(x) / 2); unimodular, so the pointwise
/// modulus is preserved exactly.
ComplexField screen_step(const ComplexField& f, const PhaseScreen& s, double k0);

using StepCallback = std::function<void(int step_index, const ComplexField& state)>;

/// Strang splitting: half diffraction, screen, half diffraction per step.
/// With a callback, the state after each complete step is reported (used for
/// snapshots at intermediate distances).
ComplexField propagate(const ComplexField& f0, const MediumRealization& real, double k0,
                       const PropagationOptions& opts = {}, const StepCallback& after_step = {});

/// Regularized point source: normalized Gaussian of width source_width at y,
/// propagated through the realization. Approximates the Green's field from
/// (y, 0) to the plane z = L, smoothed at scale source_width.
ComplexField green_field(Vec2 y, const MediumRealization& real, double k0, double source_width,
                         const PropagationOptions& opts = {});

}  // namespace wavetr
