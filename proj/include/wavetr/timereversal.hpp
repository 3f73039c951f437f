#pragma once
#include <cstdint>

#include "wavetr/config.hpp"
#include "wavetr/propagator.hpp"

namespace wavetr {

/// Field captured by the mirror elements at z = 0: the incoming field
/// smoothed over the Gaussian element kernel of radius rho_0.
struct RecordedField {
  ComplexField u_rec;
  double rho0 = 0;
};

/// Target-plane (z = L) result of the two-leg experiment, stored in the
/// C0 = 1 normalization of the moment formulas (the raw propagated field is
/// divided by MirrorSpec::tr_normalization()).
struct RefocusedField {
  ComplexField u_tr;
  std::uint64_t realization_index = 0;
  Vec2 shift_phase;
  bool has_image = false;
};

/// Convolve with the normalized Gaussian kernel
/// (2 pi rho^2)^-1 exp(-|x|^2/(2 rho^2)) by spectral multiplication with
/// exp(-rho^2 |k|^2 / 2).
ComplexField smooth_gaussian(const ComplexField& f, double rho);

/// Element smoothing of the incoming field, pre: rho0 >= 2 grid spacings.
RecordedField record(const ComplexField& g_at_mirror, double rho0);

/// Equivalent emission source s = phi_rho0 * [mask . conj(psi_hat) . conj(u_rec)]
/// with mask(x) = exp(-|x|^2/R_m^2 + i b.x/R_m^2) and psi evaluated at x/R_m^2
/// (factor 1 when psi is absent). Propagating s forward reproduces the
/// element-by-element mirror emission exactly, by linearity and reciprocity.
ComplexField emission_source(const RecordedField& rec, const MirrorSpec& mirror, Vec2 b,
                             const ImageFunction* psi);

/// Full two-leg experiment through one frozen realization:
/// leg 1 records the source's field at the mirror (reverse traversal),
/// leg 2 re-emits the conjugated, masked, smoothed field (forward traversal).
RefocusedField run_experiment(const ExperimentConfig& cfg, const MediumRealization& real,
                              std::uint64_t realization_index = 0);

}  // namespace wavetr
