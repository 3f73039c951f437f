#pragma once
#include <string>
#include <utility>
#include <vector>

#include "wavetr/config.hpp"
#include "wavetr/field.hpp"
#include "wavetr/montecarlo.hpp"
#include "wavetr/screen.hpp"

namespace wavetr::io {

/// Shortest round-trip decimal representation, locale-independent.
std::string format_num(double v);

// Binary dumps: 32-byte header (8-byte magic, u64 n, f64 extent, f64 aux),
// then row-major little-endian 64-bit floats (complex as re,im pairs).
// aux carries delta_z for screens and is free otherwise.
void write_screen_binary(const std::string& path, const PhaseScreen& s);
PhaseScreen read_screen_binary(const std::string& path);
void write_field_binary(const std::string& path, const ComplexField& f, double aux = 0.0);
ComplexField read_field_binary(const std::string& path);
void write_real_binary(const std::string& path, const RealField& f, double aux = 0.0);

/// Full-plane CSV with header x1,x2,re,im,abs2.
void write_field_csv(const std::string& path, const ComplexField& f);

/// report.csv: quantity,mc_value,prediction,rel_err,z_score,pass.
void write_report_csv(const std::string& path, const ComparisonReport& rep);

/// Run manifest: a loadable config plus '#' comment lines carrying tool
/// version, command, derived parameters, and the planned output list.
/// Written atomically (temp file + rename) before any output is produced.
void write_manifest_atomic(const std::string& path, const ExperimentConfig& cfg,
                           const std::string& command,
                           const std::vector<std::pair<std::string, std::string>>& derived,
                           const std::vector<std::string>& outputs);

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace wavetr::io
