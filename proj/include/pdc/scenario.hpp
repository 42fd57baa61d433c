#pragma once

#include <algorithm>
#include <cctype>
#include <climits>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pdc/constants.hpp"
#include "pdc/dressed.hpp"
#include "pdc/errors.hpp"
#include "pdc/gain.hpp"

namespace pdc {

enum class GridUnit { rad_per_s, pump_fraction };

struct SignalGrid {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  GridUnit unit = GridUnit::pump_fraction;
};

// A fully validated run configuration. The detuning keeps its unit tag so a
// caller can still flip the interpretation; everything else is resolved.
struct Scenario {
  double wavelength_cm = 0.0;
  TransitionSpec transition;
  LabInputs lab;
  double theta = 0.0;  // rad
  double phi = 0.0;    // rad
  MatrixElementModel matrix_model = MatrixElementModel::user_supplied(1.0);
  SignalGrid signal_grid;
  std::vector<Component> components;
  double cell_length = 0.0;  // cm
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(trim(s.substr(pos)));
      break;
    }
    out.push_back(trim(s.substr(pos, next - pos)));
    pos = next + 1;
  }
  return out;
}

// Line-oriented "key = value" document with '#' comments. Strict: malformed
// lines and duplicate keys are rejected immediately, unknown/missing keys by
// the reader below.
class ScenarioReader {
public:
  explicit ScenarioReader(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
      ++line_no;
      if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
      const std::string line = trim(raw);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw parse_error("expected 'key = value'", {}, line_no);
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) throw parse_error("missing key before '='", {}, line_no);
      if (value.empty())
        throw parse_error("missing value for key '" + key + "'", key, line_no);
      if (!entries_.emplace(key, Entry{value, line_no, false}).second)
        throw parse_error("duplicate key '" + key + "'", key, line_no);
    }
  }

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  std::optional<std::string> take(const std::string& key) {
    const auto it = entries_.find(key);
    if (it == entries_.end()) {
      missing_.push_back(key);
      return std::nullopt;
    }
    it->second.used = true;
    return it->second.value;
  }

  double take_double(const std::string& key) {
    const auto v = take(key);
    if (!v) return 0.0;
    return parse_double(key, *v);
  }

  double take_positive(const std::string& key) {
    const auto v = take(key);
    if (!v) return 0.0;
    const double d = parse_double(key, *v);
    if (!(d > 0.0))
      throw parse_error("key '" + key + "' must be > 0, got " + *v, key, line_of(key));
    return d;
  }

  double take_non_negative(const std::string& key) {
    const auto v = take(key);
    if (!v) return 0.0;
    const double d = parse_double(key, *v);
    if (!(d >= 0.0))
      throw parse_error("key '" + key + "' must be >= 0, got " + *v, key, line_of(key));
    return d;
  }

  int take_int(const std::string& key) {
    const auto v = take(key);
    if (!v) return 0;
    char* end = nullptr;
    const long n = std::strtol(v->c_str(), &end, 10);
    if (end == v->c_str() || *end != '\0' || n < INT_MIN || n > INT_MAX)
      throw parse_error("key '" + key + "' is not a representable integer: " + *v, key,
                        line_of(key));
    return static_cast<int>(n);
  }

  int line_of(const std::string& key) const {
    const auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.line;
  }

  // Reject silently-ignored configuration and report every missing key at once.
  void finish() const {
    if (!missing_.empty()) {
      std::string msg = "missing required key";
      if (missing_.size() > 1) msg += "s";
      msg += ": ";
      for (std::size_t i = 0; i < missing_.size(); ++i)
        msg += (i ? ", " : "") + missing_[i];
      throw parse_error(msg);
    }
    for (const auto& [key, entry] : entries_) {
      if (!entry.used)
        throw parse_error("unknown key '" + key + "'", key, entry.line);
    }
  }

  [[noreturn]] void fail(const std::string& key, const std::string& message) const {
    throw parse_error("key '" + key + "': " + message, key, line_of(key));
  }

private:
  struct Entry {
    std::string value;
    int line;
    bool used;
  };

  double parse_double(const std::string& key, const std::string& v) const {
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
      throw parse_error("key '" + key + "' is not a number: " + v, key, line_of(key));
    return d;
  }

  std::map<std::string, Entry> entries_;
  mutable std::vector<std::string> missing_;
};

}  // namespace detail

inline Scenario parse_scenario(std::string_view text, const PhysicalConstants& k = kCgs) {
  detail::ScenarioReader r(text);

  Scenario sc;
  sc.wavelength_cm = r.take_positive("transition.wavelength_cm");
  const double d12 = r.take_positive("transition.dipole_statc_cm");
  const double rho_bar = r.take_positive("transition.orbit_radius_cm");
  const double density = r.take_positive("transition.density_per_cm3");

  sc.lab.intensity = r.take_non_negative("pump.intensity_w_per_cm2");
  sc.lab.detuning.value = r.take_double("pump.detuning_value");
  if (const auto unit = r.take("pump.detuning_unit")) {
    if (*unit == "hz") sc.lab.detuning.unit = DetuningUnit::hz;
    else if (*unit == "rads") sc.lab.detuning.unit = DetuningUnit::rad_per_s;
    else r.fail("pump.detuning_unit", "expected hz or rads, got " + *unit);
  }

  sc.theta = r.take_double("state.theta_rad");
  sc.phi = r.take_double("state.phi_rad");

  if (const auto mode = r.take("matrix.mode")) {
    if (*mode == "small_argument") {
      if (r.has("matrix.value"))
        r.fail("matrix.value", "only allowed with matrix.mode = user_supplied");
      if (rho_bar > 0.0) sc.matrix_model = MatrixElementModel::small_argument(rho_bar);
    } else if (*mode == "user_supplied") {
      const double value = r.take_positive("matrix.value");
      if (value > 0.0) {
        if (value > 1.0) r.fail("matrix.value", "must lie in (0, 1]");
        sc.matrix_model = MatrixElementModel::user_supplied(value);
      }
    } else {
      r.fail("matrix.mode", "expected small_argument or user_supplied, got " + *mode);
    }
  }

  sc.signal_grid.start = r.take_positive("grid.start");
  sc.signal_grid.stop = r.take_positive("grid.stop");
  sc.signal_grid.count = r.take_int("grid.count");
  if (const auto unit = r.take("grid.unit")) {
    if (*unit == "rads") sc.signal_grid.unit = GridUnit::rad_per_s;
    else if (*unit == "pump_fraction") sc.signal_grid.unit = GridUnit::pump_fraction;
    else r.fail("grid.unit", "expected rads or pump_fraction, got " + *unit);
  }

  if (const auto list = r.take("components")) {
    for (const auto& token : detail::split(*list, ',')) {
      if (token.empty()) r.fail("components", "empty entry in list");
      const Component c = [&] {
        try {
          return component_from_string(token);
        } catch (const parse_error&) {
          r.fail("components", "expected ordinary|blue|red, got " + token);
        }
      }();
      if (std::find(sc.components.begin(), sc.components.end(), c) != sc.components.end())
        r.fail("components", "duplicate entry " + token);
      sc.components.push_back(c);
    }
  }

  sc.cell_length = r.take_positive("cell.length_cm");

  r.finish();

  // cross-field invariants
  sc.transition = make_transition(wavelength_to_angular_frequency(sc.wavelength_cm, k), d12,
                                  rho_bar, density);
  sc.lab.vacuum_wavelength = sc.wavelength_cm;
  if (sc.signal_grid.count < 2) r.fail("grid.count", "need at least 2 grid points");
  if (!(sc.signal_grid.start < sc.signal_grid.stop))
    r.fail("grid.stop", "grid.start must be < grid.stop");
  if (sc.signal_grid.unit == GridUnit::pump_fraction && sc.signal_grid.stop >= 1.0)
    r.fail("grid.stop", "pump-fraction grids must stay below 1.0");
  if (sc.components.empty()) r.fail("components", "list must not be empty");
  return sc;
}

inline Scenario load_scenario(const std::filesystem::path& path,
                              const PhysicalConstants& k = kCgs) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open scenario file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str(), k);
  } catch (parse_error& e) {
    throw parse_error(path.string() + ": " + e.what(), e.key(), 0);
  }
}

}  // namespace pdc
