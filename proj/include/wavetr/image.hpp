#pragma once
#include <complex>
#include <vector>

#include "wavetr/errors.hpp"
#include "wavetr/vec.hpp"

namespace wavetr {

/// Real-valued image to transmit: either a weighted point set or a sampled
/// bounded function on a declared support disk. The Fourier transform uses
/// the convention psi_hat(xi) = integral psi(x) exp(-i x . xi) dx.
class ImageFunction {
 public:
  struct Point {
    Vec2 position;
    double weight;
  };
  struct Sample {
    Vec2 position;
    double value;
  };

  static ImageFunction from_points(std::vector<Point> points);
  /// Samples on a uniform lattice with cell area `cell_area` covering the
  /// support disk; the transform is the Riemann/DFT sum over the samples.
  static ImageFunction from_samples(std::vector<Sample> samples, double cell_area,
                                    double support_radius);

  bool is_point_set() const { return point_set_; }
  const std::vector<Point>& points() const { return points_; }
  const std::vector<Sample>& samples() const { return samples_; }
  double cell_area() const { return cell_area_; }
  double support_radius() const { return support_radius_; }

  /// psi_hat(xi); exact complex-exponential sum for point sets, discrete
  /// Fourier interpolation for sampled images.
  std::complex<double> fourier(Vec2 xi) const;

  /// The scintillation-regime rescaling psi(x) -> eps^2 psi(eps x): point
  /// masses move to b/eps with unchanged weights; samples dilate likewise
  /// with values scaled by eps^2.
  ImageFunction scaled(double epsilon) const;

 private:
  bool point_set_ = true;
  std::vector<Point> points_;
  std::vector<Sample> samples_;
  double cell_area_ = 0;
  double support_radius_ = 0;
};

}  // namespace wavetr
