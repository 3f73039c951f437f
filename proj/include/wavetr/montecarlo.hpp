#pragma once
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wavetr/moments.hpp"
#include "wavetr/timereversal.hpp"

namespace wavetr {

struct PeakFit {
  bool found = false;
  Vec2 center;
  double width = 0;
  double amplitude = 0;
};

/// Weighted least-squares Gaussian fit (log-quadratic model, weights v^2) in
/// a window of 6x the initial width estimate around the dominant maximum;
/// subpixel center. peak/median < 2 -> "no peak", not an exception.
PeakFit fit_peak(const RealField& field);

struct SecondMomentProbe {
  Vec2 x;  ///< actual (grid-snapped) center offset from the source position
  Vec2 h;  ///< actual (grid-snapped) separation
  cplx mean{};  ///< estimate of E[u(y+x+h/2) conj(u(y+x-h/2))]
  double se = 0;
};

struct ProbeSet {
  std::vector<Vec2> x_offsets;
  std::vector<Vec2> h_offsets;
};

/// Defaults: h at {0, Rtr/2, Rtr, 2Rtr, 4Rtr} along both axes,
/// x at {0, Rtr, 4Rtr} along the x axis; snapped to the grid.
ProbeSet default_probes(const ExperimentConfig& cfg);

using RealizationStat = std::function<double(const RefocusedField&)>;

struct EnsembleOptions {
  int threads = 0;  ///< 0: PARAXIAL_TR_THREADS env var, else hardware threads
  ProbeSet probes;  ///< empty -> default_probes(cfg)
  std::vector<std::pair<std::string, RealizationStat>> per_realization_stats;
};

struct EnsembleStats {
  int n = 0;
  ComplexField mean_field;
  RealField second_abs;      ///< E[|u|^2] per point
  RealField variance_field;  ///< E[|u|^2] - |E[u]|^2, clipped at 0
  bool variance_clipped = false;
  RealField se_mean_field;  ///< per-point standard error of |mean_field|
  std::vector<SecondMomentProbe> probes;
  PeakFit peak;  ///< Gaussian fit of |mean_field|
  std::vector<std::pair<std::string, std::vector<double>>> custom;
};

/// Runs n independent realizations (seeds derived from the master seed and
/// the realization index) and accumulates moments. Realizations are
/// processed by a thread pool but merged in fixed block order, so the result
/// is bit-identical for any thread count.
EnsembleStats run_ensemble(const ExperimentConfig& cfg, int n, const EnsembleOptions& opts = {});

int resolve_threads(int requested);

struct ComparisonRow {
  std::string quantity;
  double mc_value = 0;
  double prediction = 0;
  double rel_err = 0;
  double z_score = 0;
  bool pass = true;
};

struct ComparisonReport {
  std::vector<ComparisonRow> rows;
  bool all_pass = true;
};

struct CompareOptions {
  double mean_profile_tol = 0.15;    ///< rel L2 over the profile disk
  double covariance_rel_tol = 0.20;  ///< per probe, or 3 SE if larger
  double variance_cov_bound = 0.30;  ///< coefficient of variation over probe disk
  double profile_radius_rtr = 3.0;   ///< disk radius in units of R_tr
};

/// Per-quantity relative errors and z-scores of the ensemble against the
/// closed-form predictions evaluated for the same config.
ComparisonReport compare(const EnsembleStats& stats, const ExperimentConfig& cfg,
                         const CompareOptions& opts = {});

}  // namespace wavetr
