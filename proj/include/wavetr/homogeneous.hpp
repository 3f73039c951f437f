#pragma once
#include "wavetr/config.hpp"
#include "wavetr/field.hpp"

namespace wavetr {

/// Closed-form value of the two-leg experiment through a homogeneous medium
/// (sigma = 0) at target-plane point x, including the finite source
/// regularization width, the linear phase b, and (by linearity) a point-set
/// image. Complex-Gaussian algebra: every leg maps a Gaussian to a Gaussian.
/// Uses the same C0 = 1 normalization as RefocusedField. A positive
/// source_width override replaces cfg.source_width() (the w -> 0 limit is
/// the exact delta-source two-leg field of the moment formulas).
cplx homogeneous_refocused_value(const ExperimentConfig& cfg, Vec2 x,
                                 double source_width = 0.0);

/// Free-space paraxial Gaussian beam: exp(-|x-c|^2/(2 w^2)) propagated over
/// distance z for wavenumber k0, evaluated at x.
cplx homogeneous_beam_value(Vec2 x, Vec2 center, double width, double z, double k0);

}  // namespace wavetr
