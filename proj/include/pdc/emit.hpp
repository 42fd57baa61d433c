#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include <json.hpp>

#include "pdc/errors.hpp"
#include "pdc/sweep.hpp"

namespace pdc {

enum class OutputFormat { csv, json, plotdata };

inline OutputFormat format_from_string(std::string_view s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  if (s == "plotdata") return OutputFormat::plotdata;
  throw parse_error("unknown output format '" + std::string(s) +
                    "' (expected csv|json|plotdata)");
}

namespace detail {

// Shortest decimal that round-trips; locale-independent output.
inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string series_label(const SweepSeries& s) {
  return "alpha_" + to_string(s.component);
}

inline std::string joined_flags(const SweepResult& r, std::size_t i) {
  std::string out;
  for (const auto& s : r.series) {
    for (const auto& tok : flag_tokens(s.flags[i])) {
      if (!out.empty()) out += ';';
      if (r.series.size() > 1) out += to_string(s.component) + ":";
      out += tok;
    }
  }
  return out;
}

}  // namespace detail

inline nlohmann::ordered_json sweep_to_json(const SweepResult& r) {
  nlohmann::ordered_json j;
  j["schema"] = "pdc-sweep/1";
  j["axis"] = {{"name", r.axis_name}, {"unit", r.axis_unit}, {"values", r.axis}};
  auto series = nlohmann::ordered_json::array();
  for (const auto& s : r.series) {
    nlohmann::ordered_json js;
    js["component"] = to_string(s.component);
    js["quantity"] = "amplification_coefficient";
    js["unit"] = "cm^-1";
    auto values = nlohmann::ordered_json::array();
    for (double v : s.coefficients) {
      if (std::isnan(v)) values.push_back(nullptr);
      else values.push_back(v);
    }
    js["values"] = std::move(values);
    auto flags = nlohmann::ordered_json::array();
    for (unsigned f : s.flags) flags.push_back(flag_tokens(f));
    js["flags"] = std::move(flags);
    series.push_back(std::move(js));
  }
  j["series"] = std::move(series);
  if (r.diagnostics) {
    j["diagnostics"] = {
        {"alpha0_saturation_ratio", r.diagnostics->alpha0_saturation_ratio},
        {"blue_doubling_ratio", r.diagnostics->blue_doubling_ratio},
        {"red_doubling_ratio", r.diagnostics->red_doubling_ratio},
    };
  }
  return j;
}

inline SweepResult sweep_from_json(const nlohmann::json& j) {
  if (!j.contains("schema") || j.at("schema") != "pdc-sweep/1")
    throw parse_error("not a pdc-sweep/1 document");
  SweepResult r;
  r.axis_name = j.at("axis").at("name").get<std::string>();
  r.axis_unit = j.at("axis").at("unit").get<std::string>();
  r.axis = j.at("axis").at("values").get<std::vector<double>>();
  for (const auto& js : j.at("series")) {
    SweepSeries s;
    s.component = component_from_string(js.at("component").get<std::string>());
    for (const auto& v : js.at("values"))
      s.coefficients.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                           : v.get<double>());
    for (const auto& tokens : js.at("flags")) {
      unsigned f = kFlagNone;
      for (const auto& tok : tokens) f |= flag_from_token(tok.get<std::string>());
      s.flags.push_back(f);
    }
    if (s.coefficients.size() != r.axis.size() || s.flags.size() != r.axis.size())
      throw parse_error("series length does not match axis length");
    r.series.push_back(std::move(s));
  }
  if (j.contains("diagnostics")) {
    const auto& d = j.at("diagnostics");
    SweepDiagnostics diag;
    diag.alpha0_saturation_ratio = d.at("alpha0_saturation_ratio").get<double>();
    diag.blue_doubling_ratio = d.at("blue_doubling_ratio").get<double>();
    diag.red_doubling_ratio = d.at("red_doubling_ratio").get<double>();
    r.diagnostics = diag;
  }
  return r;
}

inline std::string sweep_to_csv(const SweepResult& r) {
  std::string out = r.axis_name + " [" + r.axis_unit + "]";
  for (const auto& s : r.series) out += "," + detail::series_label(s) + " [cm^-1]";
  out += ",flags\n";
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    out += detail::fmt_double(r.axis[i]);
    for (const auto& s : r.series) out += "," + detail::fmt_double(s.coefficients[i]);
    out += "," + detail::joined_flags(r, i) + "\n";
  }
  return out;
}

inline std::string sweep_to_plotdata(const SweepResult& r) {
  std::string out = "# " + r.axis_name + " sweep\n";
  out += "# column 1: " + r.axis_name + " [" + r.axis_unit + "]\n";
  for (std::size_t c = 0; c < r.series.size(); ++c)
    out += "# column " + std::to_string(c + 2) + ": " + detail::series_label(r.series[c]) +
           " [cm^-1]\n";
  if (r.diagnostics) {
    out += "# alpha0_saturation_ratio = " +
           detail::fmt_double(r.diagnostics->alpha0_saturation_ratio) + "\n";
    out += "# blue_doubling_ratio = " +
           detail::fmt_double(r.diagnostics->blue_doubling_ratio) + "\n";
    out += "# red_doubling_ratio = " + detail::fmt_double(r.diagnostics->red_doubling_ratio) +
           "\n";
  }
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    const auto flags = detail::joined_flags(r, i);
    if (!flags.empty()) out += "# flags[" + std::to_string(i) + "]: " + flags + "\n";
  }
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    out += detail::fmt_double(r.axis[i]);
    for (const auto& s : r.series) out += " " + detail::fmt_double(s.coefficients[i]);
    out += "\n";
  }
  return out;
}

inline std::string render(const SweepResult& r, OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return sweep_to_csv(r);
    case OutputFormat::json: return sweep_to_json(r).dump(2) + "\n";
    case OutputFormat::plotdata: return sweep_to_plotdata(r);
  }
  return {};
}

inline void write_file(const std::filesystem::path& path, std::string_view payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open for writing: " + path.string());
  out << payload;
  if (!out) throw io_error("write failed: " + path.string());
}

inline void emit(const SweepResult& r, OutputFormat f, const std::filesystem::path& path) {
  write_file(path, render(r, f));
}

// --- propagation runs ---

inline nlohmann::ordered_json propagation_to_json(const PropagationRun& run) {
  nlohmann::ordered_json j;
  j["schema"] = "pdc-propagation/1";
  j["component"] = to_string(run.component);
  j["summary"] = {
      {"coefficient [cm^-1]", run.gain_point.coefficient},
      {"kappa_abs [cm^-1]", std::abs(run.system.kappa)},
      {"mismatch [cm^-1]", run.system.delta},
      {"coupled_rate [cm^-1]", run.coupled_rate},
      {"analytic_rate [cm^-1]", run.analytic_rate},
      {"rate_discrepancy", run.rate_discrepancy},
      {"total_gain [dB]", run.total_gain_db},
      {"rk4_step [cm]", run.coupled.meta.step},
  };
  j["z [cm]"] = run.coupled.z;
  const auto pack = [](const std::vector<std::complex<double>>& v) {
    auto a = nlohmann::ordered_json::array();
    for (const auto& c : v) a.push_back({c.real(), c.imag()});
    return a;
  };
  j["coupled"] = {{"signal [arb]", pack(run.coupled.signal)},
                  {"idler [arb]", pack(run.coupled.idler)}};
  j["analytic"] = {{"signal [arb]", pack(run.analytic.signal)},
                   {"idler [arb]", pack(run.analytic.idler)}};
  return j;
}

inline std::string propagation_table(const PropagationRun& run, bool plotdata_style) {
  static constexpr const char* kColumns[] = {
      "z [cm]",
      "coupled_signal_abs [arb]",  "coupled_signal_phase [rad]",
      "coupled_idler_abs [arb]",   "coupled_idler_phase [rad]",
      "analytic_signal_abs [arb]", "analytic_idler_abs [arb]",
  };
  std::string out;
  const char sep = plotdata_style ? ' ' : ',';
  if (plotdata_style) {
    out += "# propagation trace, component " + to_string(run.component) + "\n";
    for (std::size_t i = 0; i < std::size(kColumns); ++i)
      out += "# column " + std::to_string(i + 1) + ": " + kColumns[i] + "\n";
    out += "# total gain = " + detail::fmt_double(run.total_gain_db) + " dB (20 log10 of the "
           "seeded amplitude ratio)\n";
  } else {
    for (std::size_t i = 0; i < std::size(kColumns); ++i)
      out += std::string(i ? "," : "") + kColumns[i];
    out += "\n";
  }
  for (std::size_t i = 0; i < run.coupled.z.size(); ++i) {
    out += detail::fmt_double(run.coupled.z[i]);
    const auto add = [&](double v) { out += sep + detail::fmt_double(v); };
    add(std::abs(run.coupled.signal[i]));
    add(std::arg(run.coupled.signal[i]));
    add(std::abs(run.coupled.idler[i]));
    add(std::arg(run.coupled.idler[i]));
    add(std::abs(run.analytic.signal[i]));
    add(std::abs(run.analytic.idler[i]));
    out += "\n";
  }
  return out;
}

inline std::string render(const PropagationRun& run, OutputFormat f) {
  switch (f) {
    case OutputFormat::csv: return propagation_table(run, false);
    case OutputFormat::json: return propagation_to_json(run).dump(2) + "\n";
    case OutputFormat::plotdata: return propagation_table(run, true);
  }
  return {};
}

inline std::string propagation_summary(const PropagationRun& run) {
  std::string out;
  out += "component            " + to_string(run.component) + "\n";
  out += "coefficient          " + detail::fmt_double(run.gain_point.coefficient) + " cm^-1\n";
  out += "mismatch delta       " + detail::fmt_double(run.system.delta) + " cm^-1\n";
  out += "coupled rate         " + detail::fmt_double(run.coupled_rate) + " cm^-1\n";
  out += "analytic rate        " + detail::fmt_double(run.analytic_rate) + " cm^-1\n";
  out += "rate discrepancy     " + detail::fmt_double(run.rate_discrepancy) + "\n";
  out += "total gain           " + detail::fmt_double(run.total_gain_db) +
         " dB (20 log10 amplitude ratio)\n";
  return out;
}

// --- reference-target check ---

inline nlohmann::ordered_json paper_check_to_json(const PaperCheckReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = "pdc-paper-check/1";
  j["target [cm^-1]"] = rep.target;
  j["inputs"] = {
      {"intensity [W/cm^2]", rep.intensity},
      {"field_amplitude [statvolt/cm]", rep.e_p},
      {"rabi_frequency [rad/s]", rep.rabi},
      {"theta [rad]", rep.theta},
      {"phi [rad]", rep.phi},
      {"density [cm^-3]", rep.density},
      {"wavelength [cm]", rep.wavelength_cm},
      {"pair_split", rep.pair_split},
      {"red_alt_form", rep.red_alt_form},
  };
  auto entries = nlohmann::ordered_json::array();
  for (const auto& e : rep.entries) {
    entries.push_back({
        {"detuning_unit", to_string(e.detuning_unit)},
        {"matrix_wavenumber", e.pump_wavenumber_matrix ? "pump" : "down-converted"},
        {"delta [rad/s]", e.delta},
        {"generalized_rabi [rad/s]", e.generalized_rabi},
        {"matrix_factor", e.matrix_factor},
        {"alpha_ordinary [cm^-1]", e.alpha_ordinary},
        {"alpha_ordinary_full_population_difference [cm^-1]", e.alpha_ordinary_full},
        {"alpha_blue [cm^-1]", e.alpha_blue},
        {"alpha_red [cm^-1]", e.alpha_red},
        {"blue_to_target", e.blue_to_target},
        {"red_to_target", e.red_to_target},
    });
  }
  j["interpretations"] = std::move(entries);
  j["best_entry"] = rep.best_entry;
  return j;
}

inline std::string render_paper_check(const PaperCheckReport& rep) {
  using detail::fmt_double;
  std::string out;
  out += "reference check: sideband amplification target " + fmt_double(rep.target) +
         " cm^-1 at " + fmt_double(rep.intensity) + " W/cm^2\n\n";
  out += "conventions in force\n";
  out += "  field amplitude   E_p = " + fmt_double(rep.e_p) +
         " statvolt/cm  [flux = c E_p^2 / 8 pi, E(t) = E_p cos(wt)]\n";
  out += "  Rabi frequency    " + fmt_double(rep.rabi) + " rad/s  [2 d E_p / hbar]\n";
  out += "  superposition     theta = " + fmt_double(rep.theta) + " rad, phi = " +
         fmt_double(rep.phi) + " rad\n";
  out += "  density           " + fmt_double(rep.density) +
         " cm^-3  [stands in for atmospheric]\n";
  out += "  central pair      omega_{s,i} = target/2 * (1 -+ " + fmt_double(rep.pair_split) +
         ")\n";
  out += "  red-channel form  |delta + " +
         std::string(rep.red_alt_form ? "Omega'/2|" : "Rabi/2|") + "\n\n";

  out += "interpretation grid (detuning reading x matrix-element wavenumber)\n";
  for (std::size_t i = 0; i < rep.entries.size(); ++i) {
    const auto& e = rep.entries[i];
    out += "  [" + std::to_string(i + 1) + "] detuning " + to_string(e.detuning_unit) +
           " (delta = " + fmt_double(e.delta) + " rad/s), matrix element at " +
           (e.pump_wavenumber_matrix ? "the pump wavenumber" : "the down-converted wavenumbers") +
           " (M = " + fmt_double(e.matrix_factor) + ")\n";
    out += "      alpha_ordinary = " + fmt_double(e.alpha_ordinary) +
           " cm^-1 (scenario state); " + fmt_double(e.alpha_ordinary_full) +
           " cm^-1 at full population difference\n";
    out += "      alpha_blue     = " + fmt_double(e.alpha_blue) +
           " cm^-1, computed/target = " + fmt_double(e.blue_to_target) + "\n";
    out += "      alpha_red      = " + fmt_double(e.alpha_red) +
           " cm^-1, computed/target = " + fmt_double(e.red_to_target) + "\n";
  }
  out += "\n";
  if (rep.best_entry >= 0) {
    const auto& e = rep.entries[static_cast<std::size_t>(rep.best_entry)];
    const double off = e.blue_to_target >= 1.0 ? e.blue_to_target : 1.0 / e.blue_to_target;
    out += "verdict: interpretation [" + std::to_string(rep.best_entry + 1) + "] (detuning " +
           to_string(e.detuning_unit) + ", matrix element at " +
           (e.pump_wavenumber_matrix ? "the pump wavenumber" : "the down-converted wavenumbers") +
           ") brings alpha_blue within a factor 100 of the target (off by x" +
           fmt_double(off) + ");\n";
    const double pair_ratio =
        e.alpha_red > 0.0 ? e.alpha_blue / e.alpha_red
                          : std::numeric_limits<double>::quiet_NaN();
    out += "         the two sideband coefficients agree with each other within a factor " +
           fmt_double(pair_ratio) + " there.\n";
  } else {
    out += "verdict: no evaluated interpretation brings the sideband coefficients within a "
           "factor 100 of the target.\n";
  }
  return out;
}

}  // namespace pdc
