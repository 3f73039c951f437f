#pragma once

namespace wavetr {

/// Modified Bessel function of the first kind, order zero. Power series for
/// |x| <= 18, asymptotic expansion beyond; relative error well under 1e-12.
double bessel_i0(double x);

/// exp(-|x|) I0(x); stable for arbitrarily large arguments.
double bessel_i0_scaled(double x);

/// log I0(x), overflow-free.
double log_bessel_i0(double x);

}  // namespace wavetr
