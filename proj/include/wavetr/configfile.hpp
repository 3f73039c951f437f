#pragma once
#include <string>

#include "wavetr/config.hpp"

namespace wavetr {

/// Malformed input at the usage level: unknown key, bad syntax, missing
/// required key, bad flag. CLI maps this to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat key=value config format, '#' comments, one key per line.
/// Documented keys (exactly these; unknown keys are a hard error):
///   k0, L, R_m, rho_0, sigma, l_c, grid_n, grid_extent, n_steps,
///   y_x, y_y, b_x, b_y, seed, n_realizations, epsilon
/// Optional keys default to: y=b=0, n_realizations=100, epsilon=1.
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Canonical serialization: fixed key order, shortest round-trip numerals.
std::string write_config_text(const ExperimentConfig& cfg);

}  // namespace wavetr
