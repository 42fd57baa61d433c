// pdcscan: spectra, intensity sweeps, propagation runs and the bundled
// reference check for parametric down-conversion gain in a pump-dressed
// two-level gas.

#include <complex>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdc/pdc.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitDomain = 3;
constexpr int kExitIo = 4;

struct CommonArgs {
  std::string scenario_path;
  std::string component = "all";
  std::string out_path;
  std::string format = "csv";
  bool allow_degenerate = false;
  std::string detuning_unit;  // empty = use the scenario's tag
  bool red_alt_form = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scenario", args.scenario_path, "scenario file path")->required();
  cmd->add_option("--component", args.component,
                  "component selection: ordinary|blue|red|all")
      ->check(CLI::IsMember({"ordinary", "blue", "red", "all"}));
  cmd->add_option("--out", args.out_path, "output file (stdout when omitted)");
  cmd->add_option("--format", args.format, "output format")
      ->check(CLI::IsMember({"csv", "json", "plotdata"}));
  cmd->add_flag("--allow-degenerate", args.allow_degenerate,
                "keep grid points at omega_s = omega_i instead of nudging them");
  cmd->add_option("--detuning-unit", args.detuning_unit,
                  "override the scenario's detuning unit tag")
      ->check(CLI::IsMember({"hz", "rads"}));
  cmd->add_flag("--red-alt-form", args.red_alt_form,
                "red channel: use |delta + Omega'/2| instead of |delta + Rabi/2|");
}

pdc::RunOptions run_options(const CommonArgs& args) {
  pdc::RunOptions opt;
  if (args.detuning_unit == "hz") opt.detuning_unit = pdc::DetuningUnit::hz;
  else if (args.detuning_unit == "rads") opt.detuning_unit = pdc::DetuningUnit::rad_per_s;
  opt.allow_degenerate = args.allow_degenerate;
  opt.gain.red_alt_form = args.red_alt_form;
  return opt;
}

pdc::Scenario load_with_selection(const CommonArgs& args) {
  auto sc = pdc::load_scenario(args.scenario_path);
  if (args.component != "all")
    sc.components = {pdc::component_from_string(args.component)};
  return sc;
}

void deliver(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    pdc::write_file(out_path, payload);
  }
}

int run_spectrum_cmd(const CommonArgs& args) {
  const auto sc = load_with_selection(args);
  const auto result = pdc::run_spectrum(sc, run_options(args));
  deliver(pdc::render(result, pdc::format_from_string(args.format)), args.out_path);
  return kExitOk;
}

int run_sweep_cmd(const CommonArgs& args, double imin, double imax, int points, bool log_grid,
                  std::optional<double> signal_frac) {
  const auto sc = load_with_selection(args);
  if (points < 2) throw pdc::parse_error("--points must be >= 2");
  if (!(imin >= 0.0) || !(imax > imin))
    throw pdc::parse_error("need 0 <= --imin < --imax");
  if (log_grid && !(imin > 0.0))
    throw pdc::parse_error("logarithmic grids need --imin > 0");

  std::vector<double> intensities(points);
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    intensities[i] = log_grid ? imin * std::pow(imax / imin, t) : imin + (imax - imin) * t;
  }

  const auto opt = run_options(args);
  std::optional<double> fixed_omega_s;
  if (signal_frac) {
    const auto in = pdc::build_inputs(sc, opt);
    fixed_omega_s = *signal_frac * in.pump.omega_p;
  }
  const auto result = pdc::run_intensity_sweep(sc, intensities, fixed_omega_s, opt);
  deliver(pdc::render(result, pdc::format_from_string(args.format)), args.out_path);
  return kExitOk;
}

int run_propagate_cmd(const CommonArgs& args, double seed_s, double seed_i,
                      std::size_t steps) {
  if (args.component == "all")
    throw pdc::parse_error("propagate needs a single --component (ordinary|blue|red)");
  const auto sc = pdc::load_scenario(args.scenario_path);
  const auto run = pdc::run_propagation(sc, pdc::component_from_string(args.component),
                                        {seed_s, 0.0}, {seed_i, 0.0}, steps,
                                        run_options(args));
  deliver(pdc::render(run, pdc::format_from_string(args.format)), args.out_path);
  // keep the human-readable summary off the data stream
  (args.out_path.empty() ? std::cerr : std::cout) << pdc::propagation_summary(run);
  return kExitOk;
}

int run_paper_check_cmd(const CommonArgs& args, std::optional<double> theta, bool as_json) {
  pdc::GainOptions gopt;
  gopt.red_alt_form = args.red_alt_form;
  const auto report = pdc::paper_check(theta, gopt);
  const std::string payload = as_json ? pdc::paper_check_to_json(report).dump(2) + "\n"
                                      : pdc::render_paper_check(report);
  deliver(payload, args.out_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parametric down-conversion gain in a pump-dressed two-level gas"};
  app.require_subcommand(1);

  CommonArgs spectrum_args;
  auto* spectrum =
      app.add_subcommand("spectrum", "gain spectrum over the signal-frequency grid");
  add_common(spectrum, spectrum_args);

  CommonArgs sweep_args;
  double imin = 0.0, imax = 1000.0;
  int points = 41;
  bool log_grid = false;
  std::optional<double> signal_frac;
  auto* sweep = app.add_subcommand("sweep-intensity",
                                   "gain vs pump intensity at a fixed signal frequency");
  add_common(sweep, sweep_args);
  sweep->add_option("--imin", imin, "lowest intensity, W/cm^2")->required();
  sweep->add_option("--imax", imax, "highest intensity, W/cm^2")->required();
  sweep->add_option("--points", points, "number of grid points (default 41)");
  sweep->add_flag("--log", log_grid, "use a logarithmic intensity grid");
  sweep->add_option("--signal-frac", signal_frac,
                    "fixed signal frequency as a fraction of omega_p "
                    "(default: center of the scenario grid)");

  CommonArgs prop_args;
  double seed_s = 1.0, seed_i = 0.0;
  std::size_t steps = 0;
  auto* prop = app.add_subcommand("propagate", "integrate the coupled pair through the cell");
  add_common(prop, prop_args);
  prop->add_option("--seed-s", seed_s, "signal seed amplitude (default 1)");
  prop->add_option("--seed-i", seed_i, "idler seed amplitude (default 0)");
  prop->add_option("--steps", steps, "RK4 step count (default: auto)");

  CommonArgs check_args;
  check_args.format = "text";
  std::optional<double> theta;
  auto* check = app.add_subcommand(
      "paper-check", "evaluate the bundled paper_s3 preset against its reference target;"
                     " both detuning readings are reported side by side");
  check->add_option("--theta", theta, "override the prepared superposition angle, rad");
  check->add_option("--out", check_args.out_path, "output file (stdout when omitted)");
  check->add_option("--format", check_args.format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));
  check->add_flag("--red-alt-form", check_args.red_alt_form,
                  "red channel: use |delta + Omega'/2| instead of |delta + Rabi/2|");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (spectrum->parsed()) return run_spectrum_cmd(spectrum_args);
    if (sweep->parsed())
      return run_sweep_cmd(sweep_args, imin, imax, points, log_grid, signal_frac);
    if (prop->parsed()) return run_propagate_cmd(prop_args, seed_s, seed_i, steps);
    if (check->parsed())
      return run_paper_check_cmd(check_args, theta, check_args.format == "json");
  } catch (const pdc::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const pdc::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const pdc::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  } catch (const pdc::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}
