#include "wavetr/bessel.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace wavetr {

namespace {
constexpr double kSwitch = 18.0;

// Sum of the defining series, all terms positive (no cancellation).
double i0_series(double x) {
  const double t = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 80; ++k) {
    term *= t / (static_cast<double>(k) * k);
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

// Asymptotic series for exp(-x) I0(x), x >= kSwitch; terms decrease until
// k ~ 2x, far past the 1e-17 cutoff.
double i0e_asymptotic(double x) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 40; ++k) {
    const double next =
        term * (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * x * (k + 1.0));
    if (next >= term) break;  // series started diverging
    term = next;
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}
}  // namespace

double bessel_i0_scaled(double x) {
  x = std::abs(x);
  if (x <= kSwitch) return i0_series(x) * std::exp(-x);
  return i0e_asymptotic(x);
}

double bessel_i0(double x) {
  x = std::abs(x);
  if (x <= kSwitch) return i0_series(x);
  if (x > 709.0) return std::numeric_limits<double>::infinity();
  return i0e_asymptotic(x) * std::exp(x);
}

double log_bessel_i0(double x) {
  x = std::abs(x);
  if (x <= kSwitch) return std::log(i0_series(x));
  return x + std::log(i0e_asymptotic(x));
}

}  // namespace wavetr
