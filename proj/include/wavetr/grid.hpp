#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "wavetr/errors.hpp"
#include "wavetr/vec.hpp"

namespace wavetr {

/// Square cell-centered grid for the transverse plane, symmetric about the
/// origin: x_i = (i - n/2 + 1/2) * spacing. There is no sample exactly at 0
/// and x -> -x maps index i -> n-1-i exactly.
struct TransverseGrid {
  int n = 0;          ///< points per axis, power of two
  double extent = 0;  ///< physical side length
  double spacing = 0;

  TransverseGrid() = default;
  TransverseGrid(int n_points, double physical_extent)
      : n(n_points), extent(physical_extent) {
    if (n_points <= 0 || (n_points & (n_points - 1)) != 0)
      throw ValidationError("grid_n", "must be a positive power of two");
    if (!(physical_extent > 0.0))
      throw ValidationError("grid_extent", "must be positive");
    spacing = extent / n;
  }

  double coord(int i) const { return (i - n / 2 + 0.5) * spacing; }
  Vec2 point(int ix, int iy) const { return {coord(ix), coord(iy)}; }

  /// Dual-grid wavenumber of FFT bin j (standard wrap-around ordering).
  double wavenumber(int j) const {
    const int f = (j < n / 2) ? j : j - n;
    return 2.0 * std::numbers::pi * f / extent;
  }
  double dual_spacing() const { return 2.0 * std::numbers::pi / extent; }
  double max_wavenumber() const { return std::numbers::pi / spacing; }

  int index_near(double x) const {
    const int i = static_cast<int>(std::lround(x / spacing - 0.5)) + n / 2;
    return std::clamp(i, 0, n - 1);
  }

  bool in_central_half(Vec2 p) const {
    return std::abs(p.x) <= 0.25 * extent && std::abs(p.y) <= 0.25 * extent;
  }

  std::size_t size() const { return static_cast<std::size_t>(n) * n; }

  friend bool operator==(const TransverseGrid& a, const TransverseGrid& b) {
    return a.n == b.n && a.extent == b.extent;
  }
};

}  // namespace wavetr
