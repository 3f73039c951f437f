#include "wavetr/image.hpp"

#include <algorithm>
#include <cmath>

namespace wavetr {

ImageFunction ImageFunction::from_points(std::vector<Point> points) {
  if (points.empty()) throw ValidationError("image", "point set must be nonempty");
  ImageFunction f;
  f.point_set_ = true;
  f.points_ = std::move(points);
  double r = 0;
  for (const auto& p : f.points_) r = std::max(r, p.position.norm());
  f.support_radius_ = r;
  return f;
}

ImageFunction ImageFunction::from_samples(std::vector<Sample> samples, double cell_area,
                                          double support_radius) {
  if (samples.empty()) throw ValidationError("image", "sample set must be nonempty");
  if (!(cell_area > 0)) throw ValidationError("image", "cell area must be positive");
  if (!std::isfinite(support_radius) || !(support_radius > 0))
    throw ValidationError("image", "support radius must be finite and positive");
  ImageFunction f;
  f.point_set_ = false;
  f.samples_ = std::move(samples);
  f.cell_area_ = cell_area;
  f.support_radius_ = support_radius;
  return f;
}

std::complex<double> ImageFunction::fourier(Vec2 xi) const {
  std::complex<double> acc = 0;
  if (point_set_) {
    for (const auto& p : points_) {
      const double phase = -p.position.dot(xi);
      acc += p.weight * std::complex<double>(std::cos(phase), std::sin(phase));
    }
  } else {
    for (const auto& s : samples_) {
      const double phase = -s.position.dot(xi);
      acc += s.value * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    acc *= cell_area_;
  }
  return acc;
}

ImageFunction ImageFunction::scaled(double epsilon) const {
  if (!(epsilon > 0)) throw ValidationError("epsilon", "must be positive");
  ImageFunction f = *this;
  if (point_set_) {
    for (auto& p : f.points_) p.position = p.position / epsilon;
  } else {
    for (auto& s : f.samples_) {
      s.position = s.position / epsilon;
      s.value *= epsilon * epsilon;
    }
    f.cell_area_ = cell_area_ / (epsilon * epsilon);
  }
  f.support_radius_ = support_radius_ / epsilon;
  return f;
}

}  // namespace wavetr
