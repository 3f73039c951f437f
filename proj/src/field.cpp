#include "wavetr/field.hpp"

namespace wavetr {

ComplexField gaussian_source(const TransverseGrid& g, Vec2 center, double width) {
  ComplexField f(g);
  const double a = 1.0 / (2.0 * std::numbers::pi * width * width);
  const double inv2w2 = 1.0 / (2.0 * width * width);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double r2 = (g.point(ix, iy) - center).norm2();
      f.at(ix, iy) = a * std::exp(-r2 * inv2w2);
    }
  return f;
}

ComplexField gaussian_beam(const TransverseGrid& g, Vec2 center, double width) {
  ComplexField f(g);
  const double inv2w2 = 1.0 / (2.0 * width * width);
  for (int iy = 0; iy < g.n; ++iy)
    for (int ix = 0; ix < g.n; ++ix) {
      const double r2 = (g.point(ix, iy) - center).norm2();
      f.at(ix, iy) = std::exp(-r2 * inv2w2);
    }
  return f;
}

}  // namespace wavetr
