#include "wavetr/medium.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numbers>

namespace wavetr {

namespace {
std::map<std::string, CovarianceProfile>& registry() {
  static std::map<std::string, CovarianceProfile> r = [] {
    std::map<std::string, CovarianceProfile> m;
    CovarianceProfile gaussian;
    gaussian.name = "gaussian";
    gaussian.value = [](double r) { return std::exp(-0.5 * r * r); };
    gaussian.spectrum_2d = [](double kappa) {
      return 2.0 * std::numbers::pi * std::exp(-0.5 * kappa * kappa);
    };
    m.emplace("gaussian", std::move(gaussian));
    return m;
  }();
  return r;
}
}  // namespace

const CovarianceProfile& covariance_profile(const std::string& name) {
  auto it = registry().find(name);
  if (it == registry().end())
    throw ValidationError("shape", "unknown covariance profile '" + name + "'");
  return it->second;
}

void register_covariance_profile(CovarianceProfile profile) {
  registry()[profile.name] = std::move(profile);
}

MediumModel make_medium(double sigma, double l_c, const std::string& shape) {
  if (sigma < 0) throw ValidationError("sigma", "must be nonnegative");
  if (!(l_c > 0)) throw ValidationError("l_c", "must be positive");
  covariance_profile(shape);  // existence check
  return MediumModel{sigma, l_c, shape};
}

double covariance_at(const MediumModel& m, Vec2 x) {
  return m.sigma * m.sigma * m.l_c * m.profile().value(x.norm() / m.l_c);
}

double spectral_density(const MediumModel& m, Vec2 k) {
  // C(x) = sigma^2 l_c Ctilde(|x|/l_c)  =>  Chat(k) = sigma^2 l_c^3 S(|k| l_c)
  // with S the dimensionless 2D transform of Ctilde.
  return m.sigma * m.sigma * m.l_c * m.l_c * m.l_c * m.profile().spectrum_2d(k.norm() * m.l_c);
}

double scattering_mean_free_path(const MediumModel& m, double k0) {
  if (!(k0 > 0)) throw ValidationError("k0", "must be positive");
  if (m.sigma == 0.0) return std::numeric_limits<double>::infinity();
  return 4.0 / (m.sigma * m.sigma * k0 * k0 * m.l_c);
}

}  // namespace wavetr
