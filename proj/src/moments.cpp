#include "wavetr/moments.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "wavetr/bessel.hpp"
#include "wavetr/quadrature.hpp"

namespace wavetr::moments {

namespace {

constexpr double kPi = std::numbers::pi;

// int_0^z_len C(base + slope z) dz by composite GK15 with the panel count
// tied to the argument sweep in l_c units. Machine-accurate for profiles
// smooth at the l_c scale, and smooth as a function of (base, slope) so the
// enclosing adaptive quadratures see clean error decay.
double line_integral(const MediumModel& m, Vec2 base, Vec2 slope, double z_len) {
  const double span = slope.norm() * z_len / m.l_c;
  const int n_seg = std::clamp(static_cast<int>(std::ceil(span / 1.5)), 4, 512);
  const double seg = z_len / n_seg;
  double total = 0, err = 0;
  long evals = 0;
  for (int i = 0; i < n_seg; ++i) {
    double val = 0;
    quad::gk15<double>([&](double z) { return covariance_at(m, base + z * slope); }, i * seg,
                       (i + 1) * seg, val, err, evals);
    total += val;
  }
  return total;
}

// Psi(u) = int_0^1 Ctilde(u s) ds, used by the radial intensity forms.
double mean_profile_psi(const CovarianceProfile& prof, double u) {
  const int n_seg = std::clamp(static_cast<int>(std::ceil(std::abs(u) / 1.5)), 2, 512);
  double total = 0, err = 0;
  long evals = 0;
  for (int i = 0; i < n_seg; ++i) {
    double val = 0;
    quad::gk15<double>([&](double s) { return prof.value(u * s); },
                       static_cast<double>(i) / n_seg, static_cast<double>(i + 1) / n_seg, val,
                       err, evals);
    total += val;
  }
  return total;
}

// F(rho) = int_0^L C(rho z / k0) dz for isotropic C, built once per operation
// from the cumulative primitive Phi(u) = int_0^u Ctilde (per-cell GK, cubic
// Hermite interpolation; Phi' = Ctilde is available exactly).
class RadialLineIntegral {
 public:
  RadialLineIntegral(const MediumModel& m, double k0, double L)
      : m_(m), k0_(k0), L_(L) {
    const auto& prof = m.profile();
    phi_.resize(kCells + 1);
    deriv_.resize(kCells + 1);
    phi_[0] = 0;
    deriv_[0] = prof.value(0.0);
    long evals = 0;
    double acc = 0;
    for (int i = 1; i <= kCells; ++i) {
      double val = 0, err = 0;
      quad::gk15<double>([&](double t) { return prof.value(t); }, (i - 1) * kH, i * kH, val, err,
                         evals);
      acc += val;
      phi_[i] = acc;
      deriv_[i] = prof.value(i * kH);
    }
  }

  double operator()(double rho) const {
    const double c0l = m_.C0() * L_;
    if (rho <= 0) return c0l;
    const double u = rho * L_ / (k0_ * m_.l_c);
    double phi;
    if (u >= kUMax) {
      phi = phi_.back();
    } else {
      const int i = static_cast<int>(u / kH);
      const double t = (u - i * kH) / kH;
      const double t2 = t * t, t3 = t2 * t;
      phi = (2 * t3 - 3 * t2 + 1) * phi_[i] + (t3 - 2 * t2 + t) * (deriv_[i] * kH) +
            (-2 * t3 + 3 * t2) * phi_[i + 1] + (t3 - t2) * (deriv_[i + 1] * kH);
    }
    return m_.sigma * m_.sigma * m_.l_c * (k0_ * m_.l_c / rho) * phi;
  }

 private:
  static constexpr int kCells = 4096;
  static constexpr double kUMax = 40.0;
  static constexpr double kH = kUMax / kCells;
  MediumModel m_;
  double k0_, L_;
  std::vector<double> phi_, deriv_;
};

cplx phase_factor(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

MomentParams make_params(const ExperimentConfig& cfg) {
  MomentParams p;
  p.k0 = cfg.k0;
  p.L = cfg.L;
  p.r0 = cfg.mirror.r0;
  p.rho0 = cfg.mirror.rho0;
  p.medium = cfg.medium;
  return p;
}

QuadValue<cplx> mean_field_m1(Vec2 r, Vec2 q, const MomentParams& p) {
  const double pref = p.r0 * p.r0 / (4.0 * kPi);
  const double c0l = p.C0() * p.L;
  const double quart_r02 = p.r0 * p.r0 / 4.0;
  const double inv4rho2 = 1.0 / (4.0 * p.rho0 * p.rho0);
  const double l_over_k0 = p.L / p.k0;

  // Combined Gaussian envelope: a |xi|^2 - 2 w . xi with
  // a = r0^2/4 + L^2/(4 k0^2 rho0^2); center = w / a.
  const double a_coef = quart_r02 + l_over_k0 * l_over_k0 * inv4rho2;
  const Vec2 center = q * (l_over_k0 * inv4rho2 / a_coef);
  const double sigma = 1.0 / std::sqrt(2.0 * a_coef);
  const double half = 8.0 * sigma;

  auto integrand = [&](double xi1, double xi2) -> cplx {
    const Vec2 xi{xi1, xi2};
    const double g =
        p.medium.sigma > 0 ? line_integral(p.medium, q, -1.0 / p.k0 * xi, p.L) : 0.0;
    const Vec2 d = q - l_over_k0 * xi;
    const double expo = -quart_r02 * xi.norm2() - d.norm2() * inv4rho2 +
                        0.25 * p.k0 * p.k0 * (g - c0l);
    return std::exp(expo) * phase_factor(xi.dot(r));
  };
  auto res = quad::integrate_2d<cplx>(integrand, center.x - half, center.x + half,
                                      center.y - half, center.y + half, p.abs_tol / pref);
  return {pref * res.value, pref * res.error};
}

QuadValue<cplx> mean_refocused_exact(Vec2 x, Vec2 y, const MomentParams& p) {
  return mean_field_m1(y + 0.5 * x, x, p);
}

QuadValue<cplx> limit_mean_refocused(Vec2 x, Vec2 y, const MomentParams& p) {
  const double pref = p.r0 * p.r0 / (4.0 * kPi);
  const double c0l = p.C0() * p.L;
  const double quart_r02 = p.r0 * p.r0 / 4.0;
  const double half = 8.0 * std::sqrt(2.0) / p.r0;

  auto integrand = [&](double xi1, double xi2) -> cplx {
    const Vec2 xi{xi1, xi2};
    const double g =
        p.medium.sigma > 0 ? line_integral(p.medium, x, -1.0 / p.k0 * xi, p.L) : 0.0;
    const double expo = -quart_r02 * xi.norm2() + 0.25 * p.k0 * p.k0 * (g - c0l);
    return std::exp(expo) * phase_factor(xi.dot(y));
  };
  auto res =
      quad::integrate_2d<cplx>(integrand, -half, half, -half, half, p.abs_tol / pref);
  return {pref * res.value, pref * res.error};
}

namespace {

// y = 0 reduction: the beta angular integral collapses to the I0 kernel,
// leaving a 2D alpha x 1D radial-beta quadrature. All exponents are folded
// together before exponentiation, so nothing overflows at any parameters.
QuadValue<cplx> covariance_y0(Vec2 h, const MomentParams& p) {
  const double r02 = p.r0 * p.r0, rho02 = p.rho0 * p.rho0;
  const double pref = r02 * rho02 / (16.0 * kPi * kPi) * 2.0 * kPi;
  const double a8 = (r02 + rho02) / 8.0;
  const double lambda = (r02 - rho02) / 4.0;
  const double k2q = 0.25 * p.k0 * p.k0;
  const double c0l2 = 0.5 * p.k0 * p.k0 * p.C0() * p.L;
  const RadialLineIntegral f_radial(p.medium, p.k0, p.L);

  const double sigma_beta = 2.0 / std::sqrt(r02 + rho02);
  const double r0_pair = std::sqrt(2.0 / (1.0 / r02 + 1.0 / rho02));  // R0
  const double half_alpha = 8.0 * std::sqrt(2.0) / r0_pair;

  const double box_area = (2 * half_alpha) * (2 * half_alpha);
  const double inner_tol = p.abs_tol / (4.0 * pref * box_area);

  auto res = quad::integrate_2d<cplx>(
      [&](double a1, double a2) -> cplx {
        const Vec2 alpha{a1, a2};
        const double a = alpha.norm();
        const double gh = p.medium.sigma > 0
                              ? line_integral(p.medium, h, -1.0 / p.k0 * alpha, p.L)
                              : 0.0;
        const double rho_center = lambda * a / (2.0 * a8);
        const double rho_max = rho_center + 8.0 * sigma_beta;
        auto inner = quad::integrate<double>(
            [&](double rho) {
              const double base = -a8 * (a * a + rho * rho) + lambda * a * rho;
              const double e1 = base + k2q * (gh + f_radial(rho)) - c0l2;
              const double e2 = base - c0l2;
              return rho * bessel_i0_scaled(lambda * a * rho) * (std::exp(e1) - std::exp(e2));
            },
            0.0, rho_max, inner_tol, 600);
        return cplx(inner.value, 0.0);
      },
      -half_alpha, half_alpha, -half_alpha, half_alpha, 0.75 * p.abs_tol / pref);
  return {pref * res.value, pref * res.error + 0.25 * p.abs_tol};
}

// General case: tensorized 4D in rotated coordinates u = (alpha+beta)/sqrt2,
// v = (alpha-beta)/sqrt2, where the Gaussian part separates into
// exp(-rho0^2|u|^2/4 - r0^2|v|^2/4) and the offset phase is exp(i sqrt2 v.y).
QuadValue<cplx> covariance_4d(Vec2 h, Vec2 y, const MomentParams& p) {
  const double r02 = p.r0 * p.r0, rho02 = p.rho0 * p.rho0;
  const double pref = r02 * rho02 / (16.0 * kPi * kPi);
  const double k2q = 0.25 * p.k0 * p.k0;
  const double c0l2 = 0.5 * p.k0 * p.k0 * p.C0() * p.L;
  const RadialLineIntegral f_radial(p.medium, p.k0, p.L);
  const bool h_zero = h.norm2() == 0.0;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  const double half_u = 8.0 * std::sqrt(2.0) / p.rho0;
  const double half_v = 8.0 * std::sqrt(2.0) / p.r0;

  auto integrand = [&](double u1, double u2, double v1, double v2) -> cplx {
    const Vec2 u{u1, u2}, v{v1, v2};
    const Vec2 alpha = inv_sqrt2 * (u + v);
    const Vec2 beta = inv_sqrt2 * (u - v);
    const double gh = p.medium.sigma > 0
                          ? (h_zero ? f_radial(alpha.norm())
                                    : line_integral(p.medium, h, -1.0 / p.k0 * alpha, p.L))
                          : 0.0;
    const double fb = p.medium.sigma > 0 ? f_radial(beta.norm()) : 0.0;
    const double base = -0.25 * rho02 * u.norm2() - 0.25 * r02 * v.norm2();
    const double bracket = std::exp(base + k2q * (gh + fb) - c0l2) - std::exp(base - c0l2);
    return bracket * phase_factor(std::sqrt(2.0) * v.dot(y));
  };
  auto res = quad::integrate_4d<cplx>(integrand, -half_u, half_u, -half_u, half_u, -half_v,
                                      half_v, -half_v, half_v, p.abs_tol / pref);
  return {pref * res.value, pref * res.error};
}

}  // namespace

QuadValue<cplx> covariance_refocused(Vec2 /*x*/, Vec2 h, Vec2 y, const MomentParams& p) {
  // The limit covariance does not depend on the central offset x; the
  // parameter exists for interface symmetry only.
  if (p.medium.sigma == 0.0) return {cplx(0.0, 0.0), 0.0};
  if (y.norm2() == 0.0) return covariance_y0(h, p);
  return covariance_4d(h, y, p);
}

QuadValue<double> peak_intensity(const MomentParams& p) {
  if (p.medium.sigma == 0.0) return {0.0, 0.0};
  const double s = p.scattering_strength();
  const double c = std::sqrt(2.0) * p.L / (p.k0 * p.medium.l_c * p.r0);
  const auto& prof = p.medium.profile();

  auto integrand = [&](double a) {
    const double psi = mean_profile_psi(prof, c * a);
    const double e1 = -0.5 * a * a + 0.25 * s * (psi - 1.0);
    const double e2 = -0.5 * a * a - 0.25 * s;
    return a * (std::exp(e1) - std::exp(e2));
  };
  auto j = quad::integrate<double>(integrand, 0.0, 12.0, 0.5 * p.abs_tol, 2000);
  return {j.value * j.value, 2.0 * std::abs(j.value) * j.error + j.error * j.error};
}

QuadValue<double> background_intensity(const MomentParams& p) {
  if (p.medium.sigma == 0.0) return {0.0, 0.0};
  const double s = p.scattering_strength();
  const double r02 = p.r0 * p.r0, rho02 = p.rho0 * p.rho0;
  const double pref = std::pow(2.0 * p.r0 * p.rho0 / (r02 + rho02), 2);
  const double lambda = (r02 - rho02) / (r02 + rho02);
  const double c = 2.0 * p.L / (p.k0 * p.medium.l_c * std::sqrt(r02 + rho02));
  const auto& prof = p.medium.profile();
  const double cut = 4.0 + 8.0 / std::sqrt(1.0 - lambda);

  auto integrand = [&](double a, double b) {
    const double psi_ab = mean_profile_psi(prof, c * a) +
                          mean_profile_psi(prof, c * b);
    const double base = -0.5 * (a * a + b * b) + lambda * a * b;
    const double e1 = base + 0.25 * s * psi_ab - 0.5 * s;
    const double e2 = base - 0.5 * s;
    return a * b * bessel_i0_scaled(lambda * a * b) * (std::exp(e1) - std::exp(e2));
  };
  auto res = quad::integrate_2d<double>(integrand, 0.0, cut, 0.0, cut, p.abs_tol / pref);
  return {pref * res.value, pref * res.error};
}

QuadValue<double> peak_intensity_general(Vec2 y, const MomentParams& p) {
  if (p.medium.sigma == 0.0) return {0.0, 0.0};
  const double pref = p.r0 * p.r0 / (4.0 * kPi);
  const double quart_r02 = p.r0 * p.r0 / 4.0;
  const double c0l4 = 0.25 * p.k0 * p.k0 * p.C0() * p.L;
  const double k2q = 0.25 * p.k0 * p.k0;
  const RadialLineIntegral f_radial(p.medium, p.k0, p.L);
  const double half = 8.0 * std::sqrt(2.0) / p.r0;

  auto integrand = [&](double xi1, double xi2) -> cplx {
    const Vec2 xi{xi1, xi2};
    const double base = -quart_r02 * xi.norm2();
    const double bracket =
        std::exp(base + k2q * f_radial(xi.norm()) - c0l4) - std::exp(base - c0l4);
    return bracket * phase_factor(xi.dot(y));
  };
  auto j = quad::integrate_2d<cplx>(integrand, -half, half, -half, half,
                                    0.5 * p.abs_tol / pref);
  const double jabs = std::abs(pref * j.value);
  const double jerr = pref * j.error;
  return {jabs * jabs, 2.0 * jabs * jerr + jerr * jerr};
}

QuadValue<double> background_intensity_general(Vec2 y, const MomentParams& p) {
  if (p.medium.sigma == 0.0) return {0.0, 0.0};
  auto c = covariance_4d({0.0, 0.0}, y, p);
  return {c.value.real(), c.est_error};
}

std::string to_string(SnrRegime r) {
  switch (r) {
    case SnrRegime::near_unit: return "near-unit (rho0^2 > sigma^2 L^3/(6 l_c))";
    case SnrRegime::element_limited: return "element-limited (rho0^2 < sigma^2 L^3/(6 l_c) < r0^2)";
    case SnrRegime::aperture_saturated: return "aperture-saturated (r0^2 < sigma^2 L^3/(6 l_c))";
    case SnrRegime::no_scattering: return "no scattering";
  }
  return "?";
}

SnrResult snr(const MomentParams& p) {
  SnrResult out;
  const double x = p.saturation_scale();
  if (p.medium.sigma == 0.0) {
    out.infinite = true;
    out.closed_form = 1.0;
    out.quadrature = std::numeric_limits<double>::infinity();
    out.regime = SnrRegime::no_scattering;
    return out;
  }
  out.closed_form = (1.0 + x / (p.rho0 * p.rho0)) / (1.0 + x / (p.r0 * p.r0));
  out.I_p = peak_intensity(p).value;
  out.I_b = background_intensity(p).value;
  if (out.I_b <= 0) {
    out.infinite = true;
    out.quadrature = std::numeric_limits<double>::infinity();
  } else {
    out.quadrature = out.I_p / out.I_b;
  }
  if (p.rho0 * p.rho0 > x)
    out.regime = SnrRegime::near_unit;
  else if (x < p.r0 * p.r0)
    out.regime = SnrRegime::element_limited;
  else
    out.regime = SnrRegime::aperture_saturated;
  return out;
}

double peak_amplitude(const MomentParams& p) {
  return 1.0 / (1.0 + p.saturation_scale() / (p.r0 * p.r0));
}

double peak_width_rtr(const MomentParams& p) {
  const double s = p.scattering_strength();
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  const double xr = p.saturation_scale() / (p.r0 * p.r0);
  const double lc2 = p.medium.l_c * p.medium.l_c;
  return std::sqrt(4.0 * lc2 / s * (1.0 + xr) / (1.0 + 0.25 * xr));
}

double strong_scattering_profile(Vec2 x, const MomentParams& p) {
  const double rtr = peak_width_rtr(p);
  if (!std::isfinite(rtr)) return peak_amplitude(p);
  return peak_amplitude(p) * std::exp(-x.norm2() / (2.0 * rtr * rtr));
}

ShiftParams shift_params(Vec2 b, const MomentParams& p) {
  const double r02 = p.r0 * p.r0, rho02 = p.rho0 * p.rho0;
  if (!(p.r0 > p.rho0))
    throw ValidationError("rho_0", "must be smaller than r_0 (shift damping singular)");
  const double x = p.saturation_scale();
  const double t = 0.25 * x;  // sigma^2 L^3 / (24 l_c)
  ShiftParams out;
  out.alpha_L = p.L / (2.0 * p.k0 * (r02 + t));
  out.x_b = out.alpha_L * b;
  const double geom = rho02 / (r02 - rho02);
  const double medium_term = (t > 0) ? t / (r02 + t) : 0.0;
  out.damping = std::exp(-(b.norm2() / (4.0 * r02)) * (medium_term + geom));
  const double snr_cf = (1.0 + x / rho02) / (1.0 + x / r02);
  out.snr_shifted = snr_cf * std::exp(-(b.norm2() / (2.0 * r02)) * medium_term);
  if (t > 0) {
    out.b_max = std::sqrt(2.0 * r02 * (1.0 + r02 / t) * std::log(snr_cf));
  } else {
    // sigma -> 0 limit of 2 r0^2 (1 + r0^2/t) log snr_cf.
    out.b_max = std::sqrt(8.0 * r02 * (r02 - rho02) / rho02);
  }
  out.R_max = out.alpha_L * out.b_max;
  return out;
}

Vec2 shift_for_target(Vec2 x_t, const MomentParams& p) {
  return x_t / shift_params({0, 0}, p).alpha_L;
}

KAResult k_and_a(double z, Vec2 xi, Vec2 zeta, const MomentParams& p) {
  if (z < 0) throw ValidationError("z", "must be nonnegative");
  KAResult out;
  const double two_pi_8 = std::pow(2.0 * kPi, 8);
  out.K = two_pi_8 * std::exp(-0.5 * p.k0 * p.k0 * p.C0() * z);
  if (z == 0.0 || p.medium.sigma == 0.0) {
    out.A = 0.0;
    return out;
  }
  const double k2q = 0.25 * p.k0 * p.k0;
  // The bracket lives in a tube of width ~ l_c around the segment
  // {-zeta z'/k0 : z' in [0, z]}.
  const Vec2 end = -(z / p.k0) * zeta;
  const double margin = 10.0 * p.medium.l_c;
  const double ax = std::min(0.0, end.x) - margin, bx = std::max(0.0, end.x) + margin;
  const double ay = std::min(0.0, end.y) - margin, by = std::max(0.0, end.y) + margin;
  auto integrand = [&](double x1, double x2) -> cplx {
    const Vec2 xv{x1, x2};
    const double g = line_integral(p.medium, xv, (1.0 / p.k0) * zeta, z);
    return (std::exp(k2q * g) - 1.0) * phase_factor(-xi.dot(xv));
  };
  const double pref = 1.0 / (2.0 * std::pow(2.0 * kPi, 2));
  auto res = quad::integrate_2d<cplx>(integrand, ax, bx, ay, by, p.abs_tol / pref);
  out.A = pref * res.value;
  out.est_error = pref * res.error;
  return out;
}

cplx predict_image(Vec2 x, const ImageFunction& psi, const MomentParams& p) {
  const double rtr = peak_width_rtr(p);
  const double amp = peak_amplitude(p);
  const double r02 = p.r0 * p.r0, rho02 = p.rho0 * p.rho0;
  if (!(p.r0 > p.rho0))
    throw ValidationError("rho_0", "must be smaller than r_0 (image damping singular)");
  const double t = 0.25 * p.saturation_scale();
  const double alpha_l = p.L / (2.0 * p.k0 * (r02 + t));
  const double atten = (t > 0 ? t / (r02 + t) : 0.0) + rho02 / (r02 - rho02);

  auto term = [&](Vec2 b, double weight) {
    const double damp = std::exp(-(b.norm2() / (4.0 * r02)) * atten);
    const double gauss = std::isfinite(rtr)
                             ? std::exp(-(x - alpha_l * b).norm2() / (2.0 * rtr * rtr))
                             : 1.0;  // sigma -> 0 limit of the kernel
    return weight * damp * gauss;
  };
  double acc = 0;
  if (psi.is_point_set()) {
    for (const auto& pt : psi.points()) acc += term(pt.position, pt.weight);
  } else {
    for (const auto& sm : psi.samples()) acc += term(sm.position, sm.value);
    acc *= psi.cell_area();
  }
  return cplx(amp * acc, 0.0);
}

}  // namespace wavetr::moments
