#pragma once
#include <functional>
#include <string>

#include "wavetr/errors.hpp"
#include "wavetr/vec.hpp"

namespace wavetr {

/// Normalized isotropic covariance profile Ctilde with Ctilde(0)=1,
/// Ctilde'(0)=0, Ctilde''(0)=-1, and a nonnegative 2D spectrum.
struct CovarianceProfile {
  std::string name;
  std::function<double(double)> value;        ///< Ctilde(r), r >= 0 dimensionless
  std::function<double(double)> spectrum_2d;  ///< dimensionless 2D transform of Ctilde at |kappa|
};

/// Registry lookup; "gaussian" is built in: Ctilde(r) = exp(-r^2/2),
/// spectrum 2*pi*exp(-kappa^2/2). Unknown name -> ValidationError.
const CovarianceProfile& covariance_profile(const std::string& name);
void register_covariance_profile(CovarianceProfile profile);

/// Random medium model: C(x) = sigma^2 l_c Ctilde(|x|/l_c).
struct MediumModel {
  double sigma = 0;  ///< fluctuation strength; sigma = 0 means homogeneous medium
  double l_c = 0;    ///< correlation radius
  std::string shape = "gaussian";

  const CovarianceProfile& profile() const { return covariance_profile(shape); }
  double C0() const { return sigma * sigma * l_c; }
};

MediumModel make_medium(double sigma, double l_c, const std::string& shape = "gaussian");

/// C(x) = sigma^2 l_c Ctilde(|x|/l_c).
double covariance_at(const MediumModel& m, Vec2 x);

/// 2D Fourier transform of C; gaussian profile:
/// Chat(k) = 2 pi sigma^2 l_c^3 exp(-l_c^2 |k|^2 / 2).
double spectral_density(const MediumModel& m, Vec2 k);

/// Scattering mean free path 4/(sigma^2 k0^2 l_c). Returns +infinity for a
/// homogeneous medium (sigma = 0); that is a distinguished value, not an error.
double scattering_mean_free_path(const MediumModel& m, double k0);

}  // namespace wavetr
