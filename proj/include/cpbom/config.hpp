#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cpbom/circuit.hpp"
#include "cpbom/fock.hpp"
#include "cpbom/params.hpp"

namespace cpbom {

enum class OutputFormat { csv, json };

struct GridAxis {
  double lo = 0.0;
  double hi = 0.0;
  int count = 2;

  [[nodiscard]] std::vector<double> points() const;
  bool operator==(const GridAxis&) const = default;
};

struct SweepConfig {
  CircuitParams params;
  GridAxis n_g{0.0, 1.0, 101};
  GridAxis f{0.0, 0.5, 11};
  std::vector<Model> models{Model::circuit};
  // When non-empty, every model is evaluated once per E_J/E_C ratio at fixed
  // Josephson energy ratio_e_j (see params_at_ratio).
  std::vector<double> ej_ec_ratios;
  double ratio_e_j = 5e9 * kPhys.h_planck;
  FockConfig fock;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  double pure_ck_ratio = kDefaultPureCkRatio;
  double kappa_low_hz = 1e6;
  double kappa_high_hz = 1e7;
  double compare_tolerance = 0.2;
  double compare_exclusion = 0.02;  // half-width around n_g = 1/2
  // (numerator, denominator) model pairs; empty means derived defaults.
  std::vector<std::pair<Model, Model>> compare_pairs;

  bool operator==(const SweepConfig&) const = default;
};

inline constexpr int kMaxOracleGrid = 64;

// Throws ConfigInvalid on schema or range violations. Parameter-level errors
// from validate() propagate with their own codes.
SweepConfig parse_config(const std::string& json_text);
SweepConfig load_config(const std::filesystem::path& path);  // IoFailure if unreadable

// Canonical JSON (sorted keys, SI units, resolved defaults).
std::string config_to_json(const SweepConfig& config);
std::string config_fingerprint(const SweepConfig& config);

void check_config(const SweepConfig& config);

OutputFormat format_from_string(const std::string& name);

// The shipped default parameter set: E_C/h = 30 GHz, E_J/h = 7.5 GHz,
// Z0 = 100 Ohm, V_g = 10 V, |g_0| = 2 pi x 10 Hz.
CircuitParams default_params();

}  // namespace cpbom
