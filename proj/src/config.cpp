#include "cpbom/config.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <set>
#include <sstream>

#include "cpbom/errors.hpp"

namespace cpbom {

namespace {

using nlohmann::json;

constexpr double kGhz = 1e9 * kPhys.h_planck;

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& where) {
  if (!object.is_object()) invalid(where + " must be a JSON object");
  for (const auto& [key, value] : object.items()) {
    if (!allowed.contains(key)) invalid("unknown key '" + key + "' in " + where);
  }
}

double number(const json& object, const std::string& key) {
  const json& v = object.at(key);
  if (!v.is_number()) invalid("'" + key + "' must be a number");
  return v.get<double>();
}

// Reads `key` in SI or `key_ghz` in GHz; empty when neither is present.
std::optional<double> energy(const json& object, const std::string& key) {
  const bool si = object.contains(key);
  const bool ghz = object.contains(key + "_ghz");
  if (si && ghz) invalid("give either '" + key + "' or '" + key + "_ghz', not both");
  if (si) return number(object, key);
  if (ghz) return number(object, key + "_ghz") * kGhz;
  return std::nullopt;
}

CircuitParams parse_params(const json& p) {
  reject_unknown_keys(p,
                      {"c_cavity", "l_cavity", "c_g10", "c_g2", "c_j1", "c_j2", "e_j1", "e_j1_ghz",
                       "e_j2", "e_j2_ghz", "e_c", "e_c_ghz", "e_j", "e_j_ghz", "asymmetry",
                       "v_gate", "gap_d0", "x_zp", "omega_m", "band_index"},
                      "params");
  CircuitParams out;
  try {
    out.c_cavity = number(p, "c_cavity");
    out.l_cavity = number(p, "l_cavity");
    out.c_g10 = number(p, "c_g10");
    out.c_g2 = number(p, "c_g2");
    out.v_gate = number(p, "v_gate");
    out.gap_d0 = number(p, "gap_d0");
    out.x_zp = number(p, "x_zp");
  } catch (const json::out_of_range& e) {
    invalid(std::string("missing parameter: ") + e.what());
  }
  out.omega_m = p.contains("omega_m") ? number(p, "omega_m") : 2.0 * std::numbers::pi * 1e7;
  if (p.contains("band_index")) {
    if (!p.at("band_index").is_number_integer()) invalid("'band_index' must be an integer");
    out.band_index = p.at("band_index").get<int>();
  }

  const auto e_c = energy(p, "e_c");
  const auto e_j = energy(p, "e_j");
  const bool energy_form = e_c.has_value() || e_j.has_value() || p.contains("asymmetry");
  const bool raw_form = p.contains("c_j1") || p.contains("c_j2") || energy(p, "e_j1") ||
                        energy(p, "e_j2");
  if (energy_form == raw_form) {
    invalid("params need either (e_c, e_j[, asymmetry]) or (c_j1, c_j2, e_j1, e_j2)");
  }
  if (energy_form) {
    if (!e_c || !e_j) invalid("energy-form params need both e_c and e_j");
    const double d = p.contains("asymmetry") ? number(p, "asymmetry") : 0.0;
    return params_from_energies(*e_c, *e_j, d, out.c_g10, out);
  }
  try {
    out.c_j1 = number(p, "c_j1");
    out.c_j2 = number(p, "c_j2");
  } catch (const json::out_of_range& e) {
    invalid(std::string("missing parameter: ") + e.what());
  }
  const auto e_j1 = energy(p, "e_j1");
  const auto e_j2 = energy(p, "e_j2");
  if (!e_j1 || !e_j2) invalid("raw-form params need e_j1 and e_j2");
  out.e_j1 = *e_j1;
  out.e_j2 = *e_j2;
  return out;
}

GridAxis parse_axis(const json& v, const std::string& name) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() ||
      !v[2].is_number_integer()) {
    invalid("'" + name + "' must be [lo, hi, count]");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<int>()};
}

FockConfig parse_fock(const json& v) {
  reject_unknown_keys(v, {"n_cavity", "n_mech", "include_direct_cm", "include_h1_h2", "pin_mechanics"},
                      "fock");
  FockConfig cfg;
  if (v.contains("n_cavity")) cfg.n_cavity = v.at("n_cavity").get<int>();
  if (v.contains("n_mech")) cfg.n_mech = v.at("n_mech").get<int>();
  if (v.contains("include_direct_cm")) cfg.include_direct_cm = v.at("include_direct_cm").get<bool>();
  if (v.contains("include_h1_h2")) cfg.include_h1_h2 = v.at("include_h1_h2").get<bool>();
  if (v.contains("pin_mechanics")) cfg.pin_mechanics = v.at("pin_mechanics").get<bool>();
  return cfg;
}

json params_to_json(const CircuitParams& p) {
  return json{{"c_cavity", p.c_cavity}, {"l_cavity", p.l_cavity}, {"c_g10", p.c_g10},
              {"c_g2", p.c_g2},         {"c_j1", p.c_j1},         {"c_j2", p.c_j2},
              {"e_j1", p.e_j1},         {"e_j2", p.e_j2},         {"v_gate", p.v_gate},
              {"gap_d0", p.gap_d0},     {"x_zp", p.x_zp},         {"omega_m", p.omega_m},
              {"band_index", p.band_index}};
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

std::vector<double> GridAxis::points() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1));
  }
  return out;
}

OutputFormat format_from_string(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  invalid("unknown output format '" + name + "'");
}

CircuitParams default_params() {
  CircuitParams rest;
  rest.c_cavity = 0.318e-12;
  rest.l_cavity = 3.18e-9;
  rest.c_g2 = 100e-15;
  rest.v_gate = 10.0;
  rest.gap_d0 = 100e-9;
  rest.x_zp = 3.2084e-13;
  rest.omega_m = 2.0 * std::numbers::pi * 1e7;
  return params_from_energies(30.0 * kGhz, 7.5 * kGhz, 0.0, 0.4e-15, rest);
}

void check_config(const SweepConfig& c) {
  for (const GridAxis* axis : {&c.n_g, &c.f}) {
    if (axis->count < 2) invalid("grid axes need at least 2 points");
    if (!std::isfinite(axis->lo) || !std::isfinite(axis->hi)) invalid("grid ranges must be finite");
  }
  if (c.models.empty()) invalid("model set is empty");
  std::set<Model> seen(c.models.begin(), c.models.end());
  if (seen.size() != c.models.size()) invalid("duplicate model in model set");
  for (double r : c.ej_ec_ratios) {
    if (!(r > 0.0) || !std::isfinite(r)) invalid("E_J/E_C ratios must be positive");
  }
  if (!(c.ratio_e_j > 0.0)) invalid("ratio_e_j must be positive");
  if (!(c.pure_ck_ratio > 0.0)) invalid("pure_ck_ratio must be positive");
  if (!(c.kappa_low_hz > 0.0) || !(c.kappa_high_hz >= c.kappa_low_hz)) {
    invalid("kappa band must satisfy 0 < low <= high");
  }
  if (!(c.compare_tolerance > 0.0) || !(c.compare_exclusion >= 0.0)) {
    invalid("comparison tolerance must be positive and exclusion non-negative");
  }
  if (seen.contains(Model::fock_oracle)) check_fock_config(c.fock);
  (void)validate(c.params);
}

SweepConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
  reject_unknown_keys(root,
                      {"params", "n_g_range", "f_range", "models", "ej_ec_ratios", "ratio_e_j",
                       "ratio_e_j_ghz", "fock", "output", "report"},
                      "config");
  SweepConfig c;
  try {
    if (!root.contains("params")) invalid("config needs a 'params' object");
    c.params = parse_params(root.at("params"));
    if (root.contains("n_g_range")) c.n_g = parse_axis(root.at("n_g_range"), "n_g_range");
    if (root.contains("f_range")) c.f = parse_axis(root.at("f_range"), "f_range");
    if (root.contains("models")) {
      c.models.clear();
      for (const auto& m : root.at("models")) c.models.push_back(model_from_string(m.get<std::string>()));
    }
    if (root.contains("ej_ec_ratios")) c.ej_ec_ratios = root.at("ej_ec_ratios").get<std::vector<double>>();
    if (const auto e = energy(root, "ratio_e_j")) c.ratio_e_j = *e;
    if (root.contains("fock")) c.fock = parse_fock(root.at("fock"));
    if (root.contains("output")) {
      const json& out = root.at("output");
      reject_unknown_keys(out, {"path", "format"}, "output");
      if (out.contains("path")) c.output_path = out.at("path").get<std::string>();
      if (out.contains("format")) c.format = format_from_string(out.at("format").get<std::string>());
    }
    if (root.contains("report")) {
      const json& r = root.at("report");
      reject_unknown_keys(r,
                          {"pure_ck_ratio", "kappa_hz", "compare_tolerance", "compare_exclusion",
                           "compare_pairs"},
                          "report");
      if (r.contains("pure_ck_ratio")) c.pure_ck_ratio = number(r, "pure_ck_ratio");
      if (r.contains("kappa_hz")) {
        const auto band = r.at("kappa_hz").get<std::vector<double>>();
        if (band.size() != 2) invalid("'kappa_hz' must be [low, high]");
        c.kappa_low_hz = band[0];
        c.kappa_high_hz = band[1];
      }
      if (r.contains("compare_tolerance")) c.compare_tolerance = number(r, "compare_tolerance");
      if (r.contains("compare_exclusion")) c.compare_exclusion = number(r, "compare_exclusion");
      if (r.contains("compare_pairs")) {
        for (const auto& pair : r.at("compare_pairs")) {
          if (!pair.is_array() || pair.size() != 2) invalid("compare pairs must be [numerator, denominator]");
          c.compare_pairs.emplace_back(model_from_string(pair[0].get<std::string>()),
                                       model_from_string(pair[1].get<std::string>()));
        }
      }
    }
  } catch (const json::exception& e) {
    invalid(std::string("bad config value: ") + e.what());
  }
  check_config(c);
  return c;
}

SweepConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read config " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string config_to_json(const SweepConfig& c) {
  json models = json::array();
  for (Model m : c.models) models.push_back(std::string(to_string(m)));
  json pairs = json::array();
  for (const auto& [num, den] : c.compare_pairs) {
    pairs.push_back({std::string(to_string(num)), std::string(to_string(den))});
  }
  json root{
      {"params", params_to_json(c.params)},
      {"n_g_range", {c.n_g.lo, c.n_g.hi, c.n_g.count}},
      {"f_range", {c.f.lo, c.f.hi, c.f.count}},
      {"models", models},
      {"ej_ec_ratios", c.ej_ec_ratios},
      {"ratio_e_j", c.ratio_e_j},
      {"fock",
       {{"n_cavity", c.fock.n_cavity},
        {"n_mech", c.fock.n_mech},
        {"include_direct_cm", c.fock.include_direct_cm},
        {"include_h1_h2", c.fock.include_h1_h2},
        {"pin_mechanics", c.fock.pin_mechanics}}},
      {"output", {{"path", c.output_path}, {"format", c.format == OutputFormat::csv ? "csv" : "json"}}},
      {"report",
       {{"pure_ck_ratio", c.pure_ck_ratio},
        {"kappa_hz", {c.kappa_low_hz, c.kappa_high_hz}},
        {"compare_tolerance", c.compare_tolerance},
        {"compare_exclusion", c.compare_exclusion},
        {"compare_pairs", pairs}}},
  };
  return root.dump();
}

std::string config_fingerprint(const SweepConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a(config_to_json(config))));
  return buf;
}

}  // namespace cpbom
