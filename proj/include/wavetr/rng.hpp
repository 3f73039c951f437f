#pragma once
#include <cmath>
#include <cstdint>

namespace wavetr {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
inline std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }
}  // namespace detail

/// Deterministic random stream: xoshiro256++ seeded through splitmix64.
/// Streams are derived by hashing (master_seed, index pair), so parallel
/// callers with disjoint indices get independent, order-free streams.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : s_) w = detail::splitmix64(sm);
  }

  /// Stream id = hash(master_seed, a, b); e.g. (realization, step).
  static RngStream derive(std::uint64_t master_seed, std::uint64_t a, std::uint64_t b = 0) {
    std::uint64_t sm = master_seed ^ 0x6a09e667f3bcc909ULL;
    std::uint64_t h = detail::splitmix64(sm);
    sm = h ^ (a + 1) * 0x9e3779b97f4a7c15ULL;
    h = detail::splitmix64(sm);
    sm = h ^ (b + 1) * 0xc2b2ae3d27d4eb4fULL;
    return RngStream(detail::splitmix64(sm));
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = detail::rotl(s_[3], 45);
    return result;
  }

  /// Uniform in (0,1), 53-bit mantissa.
  double uniform01() { return ((next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Pair of independent standard normals (polar Box-Muller).
  void gauss_pair(double& g1, double& g2) {
    double u, v, r2;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      r2 = u * u + v * v;
    } while (r2 >= 1.0 || r2 == 0.0);
    const double f = std::sqrt(-2.0 * std::log(r2) / r2);
    g1 = u * f;
    g2 = v * f;
  }

  double gauss() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double a, b;
    gauss_pair(a, b);
    cached_ = b;
    have_cached_ = true;
    return a;
  }

 private:
  std::uint64_t s_[4] = {};
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace wavetr
