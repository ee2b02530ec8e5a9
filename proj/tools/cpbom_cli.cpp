#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>

#include "cpbom/circuit.hpp"
#include "cpbom/config.hpp"
#include "cpbom/errors.hpp"
#include "cpbom/fock.hpp"
#include "cpbom/perturbative.hpp"
#include "cpbom/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumerical = 2;
constexpr int kExitIo = 3;

struct CommonOptions {
  std::filesystem::path config_path;
  std::string out;
  std::string format;
  int jobs = 1;
};

int jobs_from_environment(int requested) {
  if (const char* env = std::getenv("CPB_OPTOMECH_JOBS"); env != nullptr && *env != '\0') {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw cpbom::Error(cpbom::ErrorCode::ConfigInvalid,
                         std::string("CPB_OPTOMECH_JOBS is not an integer: ") + env);
    }
  }
  return requested;
}

cpbom::SweepConfig load(const CommonOptions& opts) {
  cpbom::SweepConfig config = cpbom::load_config(opts.config_path);
  if (!opts.format.empty()) config.format = cpbom::format_from_string(opts.format);
  return config;
}

// Command-line destination first, then the config's own output path.
std::string destination(const CommonOptions& opts, const cpbom::SweepConfig& config) {
  return opts.out.empty() ? config.output_path : opts.out;
}

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw cpbom::Error(cpbom::ErrorCode::IoFailure, "failed writing to stdout");
  } else {
    cpbom::write_text(text, path);
  }
}

std::string render(const cpbom::SweepTable& table, cpbom::OutputFormat format) {
  return format == cpbom::OutputFormat::csv ? cpbom::to_csv(table) : cpbom::to_json(table);
}

double hz(double omega) { return omega / (2.0 * std::numbers::pi); }

int run_validate(const CommonOptions& opts) {
  const cpbom::SweepConfig config = load(opts);
  std::cout << "config ok\nfingerprint " << cpbom::config_fingerprint(config) << '\n';
  std::cout << cpbom::config_to_json(config) << '\n';
  return kExitOk;
}

int run_point(const CommonOptions& opts, double n_g, double f) {
  const cpbom::SweepConfig config = load(opts);
  const cpbom::BiasPoint bias{n_g, f};
  cpbom::SweepTable table;
  table.rows = cpbom::eval_point(config, bias);
  table.config_fingerprint = cpbom::config_fingerprint(config);
  table.config_json = cpbom::config_to_json(config);
  const std::string out = destination(opts, config);
  write_or_print(render(table, config.format), out);

  // Pure cross-Kerr report for the circuit model on the base parameters.
  const cpbom::ValidatedParams params = cpbom::validate(config.params);
  std::FILE* report = out.empty() || out == "-" ? stderr : stdout;
  try {
    const cpbom::CkHamiltonian ck = cpbom::effective_ck_hamiltonian(
        params, bias, config.pure_ck_ratio, config.kappa_low_hz, config.kappa_high_hz);
    std::fprintf(report,
                 "pure cross-Kerr regime: |g_rp| < %g |g_ck|\n"
                 "  omega_c/2pi = %.9g Hz, omega_m/2pi = %.9g Hz\n"
                 "  g_ck/2pi = %.6g Hz, g_rp/2pi = %.6g Hz\n"
                 "  g_ck/kappa = %.6g (kappa/2pi = %g Hz) .. %.6g (kappa/2pi = %g Hz)\n",
                 config.pure_ck_ratio, hz(ck.omega_c), hz(ck.omega_m), hz(ck.g_ck), hz(ck.g_rp),
                 ck.g_ck_over_kappa_low, config.kappa_low_hz, ck.g_ck_over_kappa_high,
                 config.kappa_high_hz);
  } catch (const cpbom::Error& e) {
    std::fprintf(report, "pure cross-Kerr regime not reached: %s\n", e.what());
  }
  return kExitOk;
}

int run_sweep(const CommonOptions& opts, double max_flagged_fraction) {
  const cpbom::SweepConfig config = load(opts);
  const cpbom::SweepTable table = cpbom::run_sweep(config, jobs_from_environment(opts.jobs));
  write_or_print(render(table, config.format), destination(opts, config));

  std::size_t flagged = 0;
  for (const auto& row : table.rows) flagged += row.flags.empty() ? 0 : 1;
  const double fraction =
      table.rows.empty() ? 0.0 : static_cast<double>(flagged) / static_cast<double>(table.rows.size());
  std::fprintf(stderr, "%zu rows, %zu flagged (%.4g)\n", table.rows.size(), flagged, fraction);
  if (fraction > max_flagged_fraction) {
    std::fprintf(stderr, "flagged fraction exceeds %g\n", max_flagged_fraction);
    return kExitNumerical;
  }
  return kExitOk;
}

int run_compare(const CommonOptions& opts) {
  const cpbom::SweepConfig config = load(opts);
  const cpbom::ComparisonReport report =
      cpbom::compare_models(config, jobs_from_environment(opts.jobs));
  if (const std::string out = destination(opts, config); !out.empty()) {
    write_or_print(cpbom::comparison_csv(report), out);
  }
  std::cout << cpbom::comparison_summary_text(report);
  return report.pass ? kExitOk : kExitNumerical;
}

int run_oracle(const CommonOptions& opts, double n_g, double f) {
  const cpbom::SweepConfig config = load(opts);
  const cpbom::BiasPoint bias{n_g, f};
  for (const cpbom::ModelVariant& variant : cpbom::model_variants(config)) {
    const cpbom::FockReport r = cpbom::fock_oracle(variant.params, bias, config.fock);
    const cpbom::CouplingResult p3 = cpbom::perturbative_couplings(variant.params, bias, 3);
    std::printf("fock_oracle%s at n_g=%.6g f=%.6g, cutoffs %dx%d\n", variant.suffix.c_str(), n_g, f,
                config.fock.n_cavity, config.fock.n_mech);
    std::printf("  g_ck/2pi = %.9g Hz (perturbative3 %.9g Hz, ratio %.6g)\n", hz(r.base.g_ck),
                hz(p3.g_ck), r.base.g_ck / p3.g_ck);
    std::printf("  g_rp/2pi = %.9g Hz (perturbative3 %.9g Hz, ratio %.6g)\n", hz(r.base.g_rp),
                hz(p3.g_rp), r.base.g_rp / p3.g_rp);
    std::printf("  min label overlap %.6f, cutoff drift g_ck %.3g g_rp %.3g\n", r.base.min_overlap,
                r.drift_ck, r.drift_rp);
    if (std::max(r.drift_ck, r.drift_rp) >= cpbom::kMaxCutoffDrift) {
      std::fprintf(stderr, "cutoff drift exceeds %g\n", cpbom::kMaxCutoffDrift);
      return kExitNumerical;
    }
  }
  return kExitOk;
}

int exit_code_for(cpbom::ErrorCode code) {
  switch (code) {
    case cpbom::ErrorCode::IoFailure: return kExitIo;
    case cpbom::ErrorCode::NonAnalyticPoint:
    case cpbom::ErrorCode::SeriesDivergence:
    case cpbom::ErrorCode::LabelingAmbiguous:
    case cpbom::ErrorCode::DegeneratePoint:
    case cpbom::ErrorCode::DerivativeUnresolved:
    case cpbom::ErrorCode::DegenerateBand:
    case cpbom::ErrorCode::ConvergenceFailure:
    case cpbom::ErrorCode::NotInPureCkRegime:
      return kExitNumerical;
    default: return kExitConfig;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cooper-pair-box optomechanics coupling calculator"};
  app.require_subcommand(1);

  CommonOptions opts;
  double n_g = 0.0;
  double f = 0.0;
  double max_flagged = 1.0;

  auto add_common = [&](CLI::App* sub, bool with_output) {
    sub->add_option("--config", opts.config_path, "JSON configuration file")->required();
    if (with_output) {
      sub->add_option("--out", opts.out, "output path (default: stdout or the config's output)");
      sub->add_option("--format", opts.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    }
    sub->add_option("--jobs", opts.jobs, "worker threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  };

  CLI::App* validate_cmd = app.add_subcommand("validate-config", "check a configuration file");
  add_common(validate_cmd, false);

  CLI::App* point_cmd = app.add_subcommand("point", "evaluate every model at one bias point");
  add_common(point_cmd, true);
  point_cmd->add_option("--n-g", n_g, "gate charge offset")->required();
  point_cmd->add_option("--f", f, "flux bias in flux quanta")->required();

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "evaluate the configured (n_g, f) grid");
  add_common(sweep_cmd, true);
  sweep_cmd->add_option("--max-flagged-fraction", max_flagged,
                        "exit with status 2 when more rows than this are flagged")
      ->check(CLI::Range(0.0, 1.0));

  CLI::App* compare_cmd = app.add_subcommand("compare", "ratio report between model pairs");
  add_common(compare_cmd, true);

  CLI::App* oracle_cmd = app.add_subcommand("oracle", "Fock-space cross-check at one bias point");
  add_common(oracle_cmd, false);
  oracle_cmd->add_option("--n-g", n_g, "gate charge offset")->required();
  oracle_cmd->add_option("--f", f, "flux bias in flux quanta")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int status = app.exit(e);
    return status == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*validate_cmd) return run_validate(opts);
    if (*point_cmd) return run_point(opts, n_g, f);
    if (*sweep_cmd) return run_sweep(opts, max_flagged);
    if (*compare_cmd) return run_compare(opts);
    if (*oracle_cmd) return run_oracle(opts, n_g, f);
  } catch (const cpbom::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
