#include "cpbom/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <json.hpp>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <numbers>
#include <thread>
#include <tuple>

#include "cpbom/fock.hpp"
#include "cpbom/perturbative.hpp"

namespace cpbom {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_flaggable(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonAnalyticPoint:
    case ErrorCode::SeriesDivergence:
    case ErrorCode::LabelingAmbiguous:
    case ErrorCode::DegeneratePoint:
    case ErrorCode::DerivativeUnresolved:
    case ErrorCode::DegenerateBand:
    case ErrorCode::ConvergenceFailure:
      return true;
    default:
      return false;
  }
}

CouplingResult undefined_result(Model model, const ValidatedParams& params) {
  const double g0 = direct_coupling(params);
  return {kNaN, kNaN, g0, kNaN, kNaN, model};
}

CouplingResult evaluate_model(Model model, const SweepConfig& config,
                              const ValidatedParams& params, BiasPoint bias,
                              std::vector<ErrorCode>& flags) {
  switch (model) {
    case Model::circuit:
      return cross_kerr_coupling(params, bias);
    case Model::perturbative2:
      return perturbative_couplings(params, bias, 2);
    case Model::perturbative3:
      return perturbative_couplings(params, bias, 3);
    case Model::fock_oracle: {
      const FockReport report = fock_oracle(params, bias, config.fock);
      if (std::max(report.drift_ck, report.drift_rp) >= kMaxCutoffDrift) {
        flags.push_back(ErrorCode::ConvergenceFailure);
      }
      CouplingResult r{};
      r.model_tag = Model::fock_oracle;
      r.omega_c = quantized_cavity_frequency(params);
      r.g_rp = report.base.g_rp;
      r.g_ck = report.base.g_ck;
      r.g_0 = direct_coupling(params);
      r.enhancement = r.g_0 != 0.0 ? r.g_rp / r.g_0 : kNaN;
      return r;
    }
  }
  throw Error(ErrorCode::ConfigInvalid, "unhandled model");
}

std::vector<SweepRow> eval_point_variants(const SweepConfig& config,
                                          const std::vector<ModelVariant>& variants,
                                          BiasPoint bias) {
  std::vector<SweepRow> rows;
  rows.reserve(variants.size() * config.models.size());
  for (const ModelVariant& variant : variants) {
    for (Model model : config.models) {
      SweepRow row{bias.n_g0, bias.f, std::string(to_string(model)) + variant.suffix, {}, {}};
      try {
        row.result = evaluate_model(model, config, variant.params, bias, row.flags);
      } catch (const Error& e) {
        if (!is_flaggable(e.code())) throw;
        row.flags.push_back(e.code());
        row.result = undefined_result(model, variant.params);
        if (model == Model::circuit) {
          // g_rp only needs third-order band derivatives and may survive.
          try {
            row.result = radiation_pressure_coupling(variant.params, bias);
          } catch (const Error& inner) {
            if (!is_flaggable(inner.code())) throw;
          }
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

int resolve_jobs(int jobs) {
  if (jobs > 0) return jobs;
  return std::max(1U, std::thread::hardware_concurrency());
}

// Runs task(i) for i in [0, count) on a fixed pool; rethrows the first failure.
template <typename Task>
void parallel_for(std::size_t count, int jobs, Task&& task) {
  const int workers = std::min<int>(resolve_jobs(jobs), static_cast<int>(std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count);
        return;
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
}

double quantile(std::vector<double> sorted_values, double q) {
  if (sorted_values.empty()) return kNaN;
  const double pos = q * static_cast<double>(sorted_values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, sorted_values.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return sorted_values[lo] * (1.0 - t) + sorted_values[hi] * t;
}

std::vector<std::pair<Model, Model>> default_pairs(const std::vector<Model>& models) {
  const auto has = [&](Model m) { return std::find(models.begin(), models.end(), m) != models.end(); };
  std::vector<std::pair<Model, Model>> pairs;
  for (Model m : {Model::perturbative2, Model::perturbative3}) {
    if (has(m) && has(Model::circuit)) pairs.emplace_back(m, Model::circuit);
  }
  if (has(Model::fock_oracle)) {
    if (has(Model::perturbative3)) {
      pairs.emplace_back(Model::fock_oracle, Model::perturbative3);
    } else if (has(Model::perturbative2)) {
      pairs.emplace_back(Model::fock_oracle, Model::perturbative2);
    }
  }
  return pairs;
}

std::string ratio_suffix(double ratio) { return "@ej_ec=" + format_double(ratio); }

}  // namespace

std::string SweepRow::flag_string() const {
  std::string out;
  for (ErrorCode code : flags) {
    if (!out.empty()) out += ';';
    out += to_string(code);
  }
  return out;
}

std::vector<ModelVariant> model_variants(const SweepConfig& config) {
  const ValidatedParams base = validate(config.params);
  std::vector<ModelVariant> out;
  if (config.ej_ec_ratios.empty()) {
    out.push_back({base, ""});
    return out;
  }
  for (double ratio : config.ej_ec_ratios) {
    out.push_back({validate(params_at_ratio(base, ratio, config.ratio_e_j)), ratio_suffix(ratio)});
  }
  return out;
}

std::vector<SweepRow> eval_point(const SweepConfig& config, BiasPoint bias) {
  check_config(config);
  return eval_point_variants(config, model_variants(config), bias);
}

SweepTable run_sweep(const SweepConfig& config, int jobs) {
  check_config(config);
  const auto uses_oracle =
      std::find(config.models.begin(), config.models.end(), Model::fock_oracle) != config.models.end();
  if (uses_oracle && (config.n_g.count > kMaxOracleGrid || config.f.count > kMaxOracleGrid)) {
    throw Error(ErrorCode::OracleBudgetExceeded, "Fock-oracle sweeps are limited to 64 x 64 grids");
  }
  const std::vector<ModelVariant> variants = model_variants(config);
  const std::vector<double> ng_points = config.n_g.points();
  const std::vector<double> f_points = config.f.points();
  const std::size_t per_point = variants.size() * config.models.size();
  const std::size_t point_count = ng_points.size() * f_points.size();

  std::vector<std::vector<SweepRow>> buffer(point_count);
  parallel_for(point_count, jobs, [&](std::size_t i) {
    const BiasPoint bias{ng_points[i % ng_points.size()], f_points[i / ng_points.size()]};
    buffer[i] = eval_point_variants(config, variants, bias);
  });

  SweepTable table;
  table.rows.reserve(point_count * per_point);
  for (auto& rows : buffer) {
    for (auto& row : rows) table.rows.push_back(std::move(row));
  }
  table.config_json = config_to_json(config);
  table.config_fingerprint = config_fingerprint(config);
  return table;
}

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, end);
}

std::string to_csv(const SweepTable& table) {
  const double two_pi = 2.0 * std::numbers::pi;
  std::string out = "n_g,f,model,omega_c_hz,g_rp_hz,g_0_hz,g_ck_hz,enhancement,flags\n";
  for (const SweepRow& row : table.rows) {
    const CouplingResult& r = row.result;
    out += format_double(row.n_g) + ',' + format_double(row.f) + ',' + row.model + ',' +
           format_double(r.omega_c / two_pi) + ',' + format_double(r.g_rp / two_pi) + ',' +
           format_double(r.g_0 / two_pi) + ',' + format_double(r.g_ck / two_pi) + ',' +
           format_double(r.enhancement) + ',' + row.flag_string() + '\n';
  }
  return out;
}

std::string to_json(const SweepTable& table) {
  using nlohmann::json;
  const double two_pi = 2.0 * std::numbers::pi;
  json rows = json::array();
  for (const SweepRow& row : table.rows) {
    const CouplingResult& r = row.result;
    rows.push_back({{"n_g", row.n_g},
                    {"f", row.f},
                    {"model", row.model},
                    {"omega_c_hz", r.omega_c / two_pi},
                    {"g_rp_hz", r.g_rp / two_pi},
                    {"g_0_hz", r.g_0 / two_pi},
                    {"g_ck_hz", r.g_ck / two_pi},
                    {"enhancement", r.enhancement},
                    {"flags", row.flag_string()}});
  }
  json root{{"config_fingerprint", table.config_fingerprint},
            {"config", json::parse(table.config_json)},
            {"rows", rows}};
  return root.dump(1) + '\n';
}

void write_text(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing " + path.string());
}

void emit(const SweepTable& table, OutputFormat format, const std::filesystem::path& path) {
  write_text(format == OutputFormat::csv ? to_csv(table) : to_json(table), path);
}

ComparisonReport compare_models(const SweepConfig& config, int jobs) {
  const auto pairs = config.compare_pairs.empty() ? default_pairs(config.models) : config.compare_pairs;
  if (pairs.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "comparison needs at least two compatible models");
  }
  SweepConfig needed = config;
  needed.models.clear();
  for (const auto& [num, den] : pairs) {
    for (Model m : {num, den}) {
      if (std::find(needed.models.begin(), needed.models.end(), m) == needed.models.end()) {
        needed.models.push_back(m);
      }
    }
  }
  const SweepTable table = run_sweep(needed, jobs);

  std::map<std::tuple<double, double, std::string>, const SweepRow*> index;
  for (const SweepRow& row : table.rows) index[{row.f, row.n_g, row.model}] = &row;

  const std::vector<std::string> suffixes = [&] {
    std::vector<std::string> s;
    if (config.ej_ec_ratios.empty()) s.emplace_back();
    for (double r : config.ej_ec_ratios) s.push_back(ratio_suffix(r));
    return s;
  }();

  ComparisonReport report{};
  report.tolerance = config.compare_tolerance;
  report.pass = true;
  for (const std::string& suffix : suffixes) {
    for (const auto& [num_model, den_model] : pairs) {
      const std::string num = std::string(to_string(num_model)) + suffix;
      const std::string den = std::string(to_string(den_model)) + suffix;
      std::vector<double> rp_values, ck_values;
      for (double f : config.f.points()) {
        for (double n_g : config.n_g.points()) {
          const SweepRow& a = *index.at({f, n_g, num});
          const SweepRow& b = *index.at({f, n_g, den});
          RatioSample s{n_g, f, num, den, a.result.g_rp / b.result.g_rp,
                        a.result.g_ck / b.result.g_ck, false};
          s.excluded = std::abs(n_g - 0.5) < config.compare_exclusion ||
                       !std::isfinite(s.ratio_g_rp) || !std::isfinite(s.ratio_g_ck);
          if (!s.excluded) {
            rp_values.push_back(s.ratio_g_rp);
            ck_values.push_back(s.ratio_g_ck);
          }
          report.samples.push_back(s);
        }
      }
      for (auto [quantity, values] : {std::pair{"g_rp", rp_values}, std::pair{"g_ck", ck_values}}) {
        std::sort(values.begin(), values.end());
        RatioSummary sum{num, den, quantity, static_cast<int>(values.size()),
                         values.empty() ? kNaN : values.front(), quantile(values, 0.25),
                         quantile(values, 0.5), quantile(values, 0.75),
                         values.empty() ? kNaN : values.back(), 0.0, !values.empty()};
        for (double v : values) sum.worst_deviation = std::max(sum.worst_deviation, std::abs(v - 1.0));
        sum.pass = sum.pass && sum.worst_deviation <= config.compare_tolerance;
        report.pass = report.pass && sum.pass;
        report.summary.push_back(sum);
      }
    }
  }
  return report;
}

std::string comparison_csv(const ComparisonReport& report) {
  std::string out = "n_g,f,numerator,denominator,ratio_g_rp,ratio_g_ck,excluded\n";
  for (const RatioSample& s : report.samples) {
    out += format_double(s.n_g) + ',' + format_double(s.f) + ',' + s.numerator + ',' +
           s.denominator + ',' + format_double(s.ratio_g_rp) + ',' + format_double(s.ratio_g_ck) +
           ',' + (s.excluded ? "1" : "0") + '\n';
  }
  return out;
}

std::string comparison_summary_text(const ComparisonReport& report) {
  std::ostringstream out;
  out << "tolerance |ratio - 1| <= " << report.tolerance << '\n';
  for (const RatioSummary& s : report.summary) {
    out << s.numerator << " / " << s.denominator << " [" << s.quantity << "] n=" << s.count
        << " min=" << format_double(s.min) << " q25=" << format_double(s.q25)
        << " median=" << format_double(s.median) << " q75=" << format_double(s.q75)
        << " max=" << format_double(s.max) << " worst=" << format_double(s.worst_deviation)
        << (s.pass ? " PASS" : " FAIL") << '\n';
  }
  out << (report.pass ? "overall PASS" : "overall FAIL") << '\n';
  return out.str();
}

}  // namespace cpbom
