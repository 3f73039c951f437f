#pragma once
#include <complex>
#include <vector>

#include "wavetr/grid.hpp"

namespace wavetr {

using cplx = std::complex<double>;

/// Sampled complex amplitude on a TransverseGrid. Storage row-major in iy.
class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(const TransverseGrid& g, cplx fill = {})
      : grid_(g), v_(g.size(), fill) {}

  const TransverseGrid& grid() const { return grid_; }
  cplx& at(int ix, int iy) { return v_[static_cast<std::size_t>(iy) * grid_.n + ix]; }
  cplx at(int ix, int iy) const { return v_[static_cast<std::size_t>(iy) * grid_.n + ix]; }
  cplx* data() { return v_.data(); }
  const cplx* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

  /// Discrete L2 norm, sqrt(sum |u|^2 h^2); long double accumulation.
  double l2_norm() const {
    long double acc = 0;
    for (const cplx& z : v_) acc += (long double)std::norm(z);
    return std::sqrt(static_cast<double>(acc)) * grid_.spacing;
  }

  double max_abs() const {
    double m = 0;
    for (const cplx& z : v_) m = std::max(m, std::abs(z));
    return m;
  }

  /// Value at the grid point nearest to p.
  cplx value_near(Vec2 p) const {
    return at(grid_.index_near(p.x), grid_.index_near(p.y));
  }

  ComplexField& operator*=(double s) {
    for (cplx& z : v_) z *= s;
    return *this;
  }
  ComplexField& operator*=(cplx s) {
    for (cplx& z : v_) z *= s;
    return *this;
  }

 private:
  TransverseGrid grid_;
  std::vector<cplx> v_;
};

/// Sampled real field on a TransverseGrid (screens, intensities).
class RealField {
 public:
  RealField() = default;
  explicit RealField(const TransverseGrid& g, double fill = 0.0)
      : grid_(g), v_(g.size(), fill) {}

  const TransverseGrid& grid() const { return grid_; }
  double& at(int ix, int iy) { return v_[static_cast<std::size_t>(iy) * grid_.n + ix]; }
  double at(int ix, int iy) const { return v_[static_cast<std::size_t>(iy) * grid_.n + ix]; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

  double value_near(Vec2 p) const {
    return at(grid_.index_near(p.x), grid_.index_near(p.y));
  }

 private:
  TransverseGrid grid_;
  std::vector<double> v_;
};

/// Normalized Gaussian bump (unit integral), delta-function regularization:
/// (2 pi w^2)^-1 exp(-|x-center|^2 / (2 w^2)).
ComplexField gaussian_source(const TransverseGrid& g, Vec2 center, double width);

/// Unit-amplitude Gaussian beam exp(-|x-center|^2 / (2 w^2)).
ComplexField gaussian_beam(const TransverseGrid& g, Vec2 center, double width);

}  // namespace wavetr
