#pragma once
#include <vector>

#include "wavetr/field.hpp"
#include "wavetr/medium.hpp"
#include "wavetr/rng.hpp"

namespace wavetr {

/// One Brownian-field increment over a longitudinal step:
/// zero-mean stationary Gaussian field with covariance delta_z * C(x - x').
struct PhaseScreen {
  RealField values;
  double delta_z = 0;
};

/// Spectral synthesis: filter complex white noise with sqrt(Chat) on the dual
/// grid, Hermitian-symmetrize (sqrt(2) Re of the complex field), scale by
/// sqrt(delta_z). Exact stationary covariance up to periodization error,
/// negligible for extent >= 8 l_c.
PhaseScreen synthesize_screen(const MediumModel& m, const TransverseGrid& g,
                              double delta_z, RngStream& rng);

/// A stored realization of the medium: ordered screens, shared grid,
/// sum of delta_z = L. Frozen once generated; both legs of a time-reversal
/// experiment traverse the same screens.
struct MediumRealization {
  std::vector<PhaseScreen> screens;
  TransverseGrid grid;
  double delta_z = 0;
  double length() const { return delta_z * static_cast<double>(screens.size()); }
};

/// Screens for realization `index`: screen j uses the stream derived from
/// (master_seed, index, j), so realizations are order-independent.
MediumRealization make_realization(const MediumModel& m, const TransverseGrid& g, double L,
                                   int n_steps, std::uint64_t master_seed, std::uint64_t index);

}  // namespace wavetr
