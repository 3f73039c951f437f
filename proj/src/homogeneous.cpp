#include "wavetr/homogeneous.hpp"

#include <cmath>
#include <numbers>

namespace wavetr {

namespace {

struct CVec2 {
  cplx x{}, y{};
};
cplx dot_sq(const CVec2& v) { return v.x * v.x + v.y * v.y; }  // non-conjugated square

// A exp(-gamma (x-c).(x-c)) with complex amplitude, rate, and center.
struct Gaussian {
  cplx A{1.0, 0.0};
  cplx gamma{};
  CVec2 c{};

  // Multiply the spectrum by exp(-d |k|^2): Fresnel for d = i dz/(2 k0),
  // Gaussian smoothing for d = rho^2/2.
  void spectral_quad(cplx d) {
    const cplx f = 1.0 + 4.0 * d * gamma;
    gamma /= f;
    A /= f;
  }

  void conjugate() {
    A = std::conj(A);
    gamma = std::conj(gamma);
    c.x = std::conj(c.x);
    c.y = std::conj(c.y);
  }

  // Multiply by B exp(-g (x-e).(x-e)).
  void multiply(cplx B, cplx g, const CVec2& e) {
    const cplx gs = gamma + g;
    const CVec2 diff{c.x - e.x, c.y - e.y};
    A *= B * std::exp(-gamma * g * dot_sq(diff) / gs);
    c.x = (gamma * c.x + g * e.x) / gs;
    c.y = (gamma * c.y + g * e.y) / gs;
    gamma = gs;
  }

  cplx value(Vec2 x) const {
    const CVec2 diff{x.x - c.x, x.y - c.y};
    return A * std::exp(-gamma * dot_sq(diff));
  }
};

cplx chain_value(const ExperimentConfig& cfg, Vec2 x, Vec2 b_eff, double w) {
  Gaussian u;
  u.A = 1.0 / (2.0 * std::numbers::pi * w * w);
  u.gamma = 1.0 / (2.0 * w * w);
  u.c = {cplx(cfg.source_offset.x, 0.0), cplx(cfg.source_offset.y, 0.0)};

  const cplx fresnel = cplx(0.0, cfg.L / (2.0 * cfg.k0));
  const double rho0 = cfg.mirror.rho0;
  u.spectral_quad(fresnel);                    // leg 1
  u.spectral_quad(0.5 * rho0 * rho0);          // element recording
  u.conjugate();                               // time reversal
  const double g = 1.0 / (cfg.mirror.R_m * cfg.mirror.R_m);
  const cplx B = std::exp(cplx(-0.25 * g * b_eff.norm2(), 0.0));
  const CVec2 e{cplx(0.0, 0.5 * b_eff.x), cplx(0.0, 0.5 * b_eff.y)};
  u.multiply(B, g, e);                         // aperture + linear phase
  u.spectral_quad(0.5 * rho0 * rho0);          // element emission patch
  u.spectral_quad(fresnel);                    // leg 2
  return u.value(x) / cfg.mirror.tr_normalization();
}

}  // namespace

cplx homogeneous_refocused_value(const ExperimentConfig& cfg, Vec2 x, double source_width) {
  const double w = source_width > 0 ? source_width : cfg.source_width();
  if (!cfg.image) return chain_value(cfg, x, cfg.shift_phase, w);
  if (!cfg.image->is_point_set())
    throw ValidationError("image", "homogeneous closed form supports point-set images only");
  cplx acc = 0;
  for (const auto& pt : cfg.image->points())
    acc += pt.weight * chain_value(cfg, x, cfg.shift_phase + pt.position, w);
  return acc;
}

cplx homogeneous_beam_value(Vec2 x, Vec2 center, double width, double z, double k0) {
  const cplx m = width * width + cplx(0.0, z / k0);
  return (width * width / m) * std::exp(-(x - center).norm2() / (2.0 * m));
}

}  // namespace wavetr
