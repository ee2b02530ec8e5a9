#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "cpbom/circuit.hpp"
#include "cpbom/config.hpp"
#include "cpbom/errors.hpp"

namespace cpbom {

struct SweepRow {
  double n_g;
  double f;
  std::string model;  // model name, suffixed with "@ej_ec=<ratio>" in ratio mode
  CouplingResult result;
  std::vector<ErrorCode> flags;

  [[nodiscard]] std::string flag_string() const;  // ';'-separated, empty if none
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::string config_fingerprint;
  std::string config_json;
};

// One parameter set on the model axis of a sweep (a single entry unless the
// config requests an E_J/E_C ladder).
struct ModelVariant {
  ValidatedParams params;
  std::string suffix;
};

std::vector<ModelVariant> model_variants(const SweepConfig& config);

// Evaluates every requested model at one bias. Numerical trouble becomes a row
// flag with NaN values; configuration trouble throws.
std::vector<SweepRow> eval_point(const SweepConfig& config, BiasPoint bias);

// Rows in f-major, then n_g, then model order. jobs <= 0 picks the hardware
// concurrency. Throws OracleBudgetExceeded for Fock sweeps above 64 x 64.
SweepTable run_sweep(const SweepConfig& config, int jobs = 1);

std::string format_double(double value);
std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);
void emit(const SweepTable& table, OutputFormat format, const std::filesystem::path& path);
void write_text(const std::string& text, const std::filesystem::path& path);

struct RatioSample {
  double n_g;
  double f;
  std::string numerator;
  std::string denominator;
  double ratio_g_rp;
  double ratio_g_ck;
  bool excluded;
};

struct RatioSummary {
  std::string numerator;
  std::string denominator;
  std::string quantity;  // "g_rp" or "g_ck"
  int count;
  double min;
  double q25;
  double median;
  double q75;
  double max;
  double worst_deviation;  // max |ratio - 1|
  bool pass;
};

struct ComparisonReport {
  std::vector<RatioSample> samples;
  std::vector<RatioSummary> summary;
  double tolerance;
  bool pass;
};

ComparisonReport compare_models(const SweepConfig& config, int jobs = 1);
std::string comparison_csv(const ComparisonReport& report);
std::string comparison_summary_text(const ComparisonReport& report);

}  // namespace cpbom
