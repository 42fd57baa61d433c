#include "pdc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "pdc/emit.hpp"
#include "pdc/presets.hpp"
#include "test_util.hpp"

namespace {

using namespace pdc;

Scenario paper_s3() { return parse_scenario(presets::kPaperS3); }

void expect_sweep_eq(const SweepResult& a, const SweepResult& b) {
  EXPECT_EQ(a.axis_name, b.axis_name);
  EXPECT_EQ(a.axis_unit, b.axis_unit);
  ASSERT_EQ(a.axis.size(), b.axis.size());
  for (std::size_t i = 0; i < a.axis.size(); ++i) EXPECT_EQ(a.axis[i], b.axis[i]);
  ASSERT_EQ(a.series.size(), b.series.size());
  for (std::size_t s = 0; s < a.series.size(); ++s) {
    EXPECT_EQ(a.series[s].component, b.series[s].component);
    ASSERT_EQ(a.series[s].coefficients.size(), b.series[s].coefficients.size());
    for (std::size_t i = 0; i < a.series[s].coefficients.size(); ++i) {
      const double x = a.series[s].coefficients[i];
      const double y = b.series[s].coefficients[i];
      if (std::isnan(x) || std::isnan(y)) {
        EXPECT_TRUE(std::isnan(x) && std::isnan(y));
      } else {
        EXPECT_EQ(x, y);  // bit-exact round trip
      }
      EXPECT_EQ(a.series[s].flags[i], b.series[s].flags[i]);
    }
  }
  EXPECT_EQ(a.diagnostics.has_value(), b.diagnostics.has_value());
  if (a.diagnostics && b.diagnostics) {
    EXPECT_EQ(a.diagnostics->alpha0_saturation_ratio, b.diagnostics->alpha0_saturation_ratio);
    EXPECT_EQ(a.diagnostics->blue_doubling_ratio, b.diagnostics->blue_doubling_ratio);
    EXPECT_EQ(a.diagnostics->red_doubling_ratio, b.diagnostics->red_doubling_ratio);
  }
}

TEST(BuildInputs, ResolvesDetuningAndPump) {
  const auto sc = paper_s3();
  const auto in = build_inputs(sc);
  EXPECT_EQ(in.detuning_unit, DetuningUnit::hz);
  EXPECT_REL_NEAR(in.pump.delta, 2.0 * std::numbers::pi * 1e10, 1e-15);
  EXPECT_REL_NEAR(in.pump.rabi, 54911513387.163756, 1e-13);

  RunOptions opt;
  opt.detuning_unit = DetuningUnit::rad_per_s;
  const auto in2 = build_inputs(sc, opt);
  EXPECT_DOUBLE_EQ(in2.pump.delta, 1e10);
}

TEST(SignalGrid, DegeneracyNudgedUnlessAllowed) {
  const auto sc = paper_s3();
  const auto in = build_inputs(sc);
  const auto grid = make_signal_grid(sc, in);
  ASSERT_EQ(grid.size(), 201u);
  for (Component c : sc.components) {
    const double half = 0.5 * sum_rule_target(c, in.pump.omega_p, in.pump.rabi);
    for (double w : grid) EXPECT_GE(std::abs(w - half), 1e-10 * half);
  }
  const auto exact = make_signal_grid(sc, in, /*allow_degenerate=*/true);
  EXPECT_EQ(exact[100], 0.5 * in.pump.omega_p);  // ordinary degeneracy kept
}

TEST(RunSpectrum, ShapesAndZeroCoherenceSidebands) {
  auto sc = paper_s3();
  sc.theta = 0.0;  // single dressed state: no coherence, no sidebands
  const auto r = run_spectrum(sc);
  ASSERT_EQ(r.series.size(), 3u);
  EXPECT_EQ(r.axis_name, "omega_s");
  EXPECT_EQ(r.axis_unit, "rad/s");
  for (const auto& s : r.series) {
    ASSERT_EQ(s.coefficients.size(), r.axis.size());
    ASSERT_EQ(s.flags.size(), r.axis.size());
  }
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    EXPECT_EQ(r.series[1].coefficients[i], 0.0);  // blue
    EXPECT_EQ(r.series[2].coefficients[i], 0.0);  // red
    EXPECT_GT(r.series[0].coefficients[i], 0.0);  // ordinary carries the gain
  }
}

TEST(RunSpectrum, OrdinarySymmetricUnderGridReversal) {
  auto sc = paper_s3();
  RunOptions opt;
  opt.allow_degenerate = true;  // keep the symmetric grid exactly symmetric
  const auto r = run_spectrum(sc, opt);
  const auto& ord = r.series[0].coefficients;
  const std::size_t n = ord.size();
  for (std::size_t i = 0; i < n; ++i)
    EXPECT_REL_NEAR(ord[i], ord[n - 1 - i], 1e-10);
}

TEST(RunSpectrum, SidebandsWithinFactorTenInCentralRegion) {
  const auto r = run_spectrum(paper_s3());
  const std::size_t mid = r.axis.size() / 2;
  for (std::size_t i = mid - 5; i <= mid + 5; ++i) {
    const double ratio = r.series[1].coefficients[i] / r.series[2].coefficients[i];
    EXPECT_GE(ratio, 0.1);
    EXPECT_LE(ratio, 10.0);
  }
}

TEST(RunSpectrum, FailedPointsStayWithFlags) {
  auto sc = paper_s3();
  const auto in = build_inputs(sc);
  // rad/s grid straddling the red-channel sum target: points above it have no
  // positive idler frequency
  const double target = sum_rule_target(Component::red, in.pump.omega_p, in.pump.rabi);
  sc.signal_grid = {0.9 * target, 1.1 * target, 5, GridUnit::rad_per_s};
  sc.components = {Component::red};
  const auto r = run_spectrum(sc);
  const auto& s = r.series[0];
  int failed = 0;
  for (std::size_t i = 0; i < r.axis.size(); ++i) {
    if (r.axis[i] < target) {
      EXPECT_FALSE(std::isnan(s.coefficients[i]));
    } else {
      EXPECT_TRUE(std::isnan(s.coefficients[i]));
      EXPECT_TRUE(s.flags[i] & kFlagEvaluationError);
      ++failed;
    }
  }
  EXPECT_GT(failed, 0);
}

TEST(RunIntensitySweep, ZeroIntensityGivesZeroEverything) {
  const std::vector<double> intensities{0.0, 250.0, 1000.0};
  const auto r = run_intensity_sweep(paper_s3(), intensities);
  EXPECT_EQ(r.axis_name, "rabi_frequency");
  EXPECT_EQ(r.axis[0], 0.0);
  EXPECT_GT(r.axis[2], r.axis[1]);
  for (const auto& s : r.series) EXPECT_EQ(s.coefficients[0], 0.0);
}

TEST(RunIntensitySweep, DiagnosticRatiosInBand) {
  const std::vector<double> intensities{1.0, 10.0, 100.0};
  const auto r = run_intensity_sweep(paper_s3(), intensities);
  ASSERT_TRUE(r.diagnostics.has_value());
  EXPECT_GE(r.diagnostics->alpha0_saturation_ratio, 1.0);
  EXPECT_LE(r.diagnostics->alpha0_saturation_ratio, 1.01);
  EXPECT_GE(r.diagnostics->blue_doubling_ratio, 1.9);
  EXPECT_LE(r.diagnostics->blue_doubling_ratio, 2.1);
  EXPECT_GE(r.diagnostics->red_doubling_ratio, 1.9);
  EXPECT_LE(r.diagnostics->red_doubling_ratio, 2.1);
}

TEST(RunPropagation, SymmetricSeedMatchesExponential) {
  auto sc = paper_s3();
  sc.theta = 0.0;  // full population difference: the ordinary channel carries gain
  const auto run = run_propagation(sc, Component::ordinary, {1.0, 0.0}, {1.0, 0.0});
  // seeds (1, 1) put the pair on the pure exponential mode of the matched system
  EXPECT_REL_NEAR(run.analytic_rate, run.gain_point.coefficient, 1e-6);
  EXPECT_LE(run.rate_discrepancy, 1e-3);
  EXPECT_REL_NEAR(run.total_gain_db,
                  20.0 * std::log10(std::exp(run.gain_point.coefficient * sc.cell_length)),
                  1e-6);
}

TEST(RunPropagation, MismatchSuppressesSidebandGrowth) {
  const auto sc = paper_s3();
  const auto run = run_propagation(sc, Component::blue);
  EXPECT_GT(std::abs(run.system.delta), 1.0);  // Rabi/c is of order cm^-1 here
  EXPECT_GT(run.gain_point.coefficient, 0.0);
  // the exponential reference grows by exp(alpha L) over the cell ...
  EXPECT_REL_NEAR(std::abs(run.analytic.signal.back()),
                  std::exp(run.gain_point.coefficient * sc.cell_length), 1e-12);
  // ... while the mismatched coupled pair stays bounded
  double max_abs = 0.0;
  for (const auto& a : run.coupled.signal) max_abs = std::max(max_abs, std::abs(a));
  EXPECT_LE(max_abs, 1.0 + 1e-4);
  EXPECT_LT(run.coupled_rate, run.gain_point.coefficient);
}

TEST(RunPropagation, ZeroGainConfigurationIsFlat) {
  auto sc = paper_s3();
  sc.lab.intensity = 0.0;
  const auto run = run_propagation(sc, Component::blue);
  EXPECT_EQ(run.gain_point.coefficient, 0.0);
  EXPECT_EQ(run.total_gain_db, 0.0);
  for (const auto& a : run.coupled.signal) EXPECT_EQ(a, std::complex<double>(1.0, 0.0));
}

TEST(Emit, CsvColumnCountAndFlagTokens) {
  auto sc = paper_s3();
  RunOptions opt;
  opt.allow_degenerate = true;
  const auto r = run_spectrum(sc, opt);
  const auto csv = sweep_to_csv(r);

  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "omega_s [rad/s],alpha_ordinary [cm^-1],alpha_blue [cm^-1],"
                  "alpha_red [cm^-1],flags");
  std::size_t rows = 0;
  bool saw_degenerate = false;
  while (std::getline(in, line)) {
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 4);  // 1 + 3 + 1 columns
    if (line.find("ordinary:degenerate") != std::string::npos) saw_degenerate = true;
    ++rows;
  }
  EXPECT_EQ(rows, r.axis.size());
  EXPECT_TRUE(saw_degenerate);
}

TEST(Emit, JsonRoundTripLossless) {
  auto sc = paper_s3();
  const auto in = build_inputs(sc);
  const double target = sum_rule_target(Component::red, in.pump.omega_p, in.pump.rabi);
  sc.signal_grid = {0.9 * target, 1.1 * target, 7, GridUnit::rad_per_s};  // includes failures
  const auto r = run_spectrum(sc);
  const auto r2 = sweep_from_json(nlohmann::json::parse(sweep_to_json(r).dump()));
  expect_sweep_eq(r, r2);

  const std::vector<double> intensities{0.0, 10.0, 1000.0};
  const auto sweep = run_intensity_sweep(paper_s3(), intensities);
  const auto sweep2 = sweep_from_json(nlohmann::json::parse(sweep_to_json(sweep).dump(2)));
  expect_sweep_eq(sweep, sweep2);

  EXPECT_THROW(sweep_from_json(nlohmann::json::parse(R"({"schema":"other/1"})")),
               parse_error);
}

TEST(Emit, PlotdataHeaderAndFlagComments) {
  auto sc = paper_s3();
  RunOptions opt;
  opt.allow_degenerate = true;
  const auto text = sweep_to_plotdata(run_spectrum(sc, opt));
  EXPECT_EQ(text.rfind("# omega_s sweep", 0), 0u);
  EXPECT_NE(text.find("# column 1: omega_s [rad/s]"), std::string::npos);
  EXPECT_NE(text.find("# column 2: alpha_ordinary [cm^-1]"), std::string::npos);
  EXPECT_NE(text.find("ordinary:degenerate"), std::string::npos);
  // data lines are purely numeric columns
  std::istringstream in(text);
  std::string line;
  std::size_t data_rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    double v;
    int cols = 0;
    while (row >> v) ++cols;
    EXPECT_EQ(cols, 4);
    ++data_rows;
  }
  EXPECT_EQ(data_rows, 201u);
}

TEST(Emit, RenderIsDeterministic) {
  const auto r = run_spectrum(paper_s3());
  for (OutputFormat f : {OutputFormat::csv, OutputFormat::json, OutputFormat::plotdata}) {
    EXPECT_EQ(render(r, f), render(r, f));
  }
}

TEST(PaperCheck, EntriesAndVerdict) {
  const auto rep = paper_check();
  ASSERT_EQ(rep.entries.size(), 4u);
  EXPECT_REL_NEAR(rep.e_p, 2.8954067223460553, 1e-14);
  EXPECT_REL_NEAR(rep.rabi, 54911513387.163756, 1e-13);

  // hz reading, matrix element at the down-converted wavenumbers
  EXPECT_REL_NEAR(rep.entries[0].alpha_blue, 6.9179825278359328e-6, 1e-12);
  EXPECT_REL_NEAR(rep.entries[0].alpha_red, 2.2967350335326052e-6, 1e-12);
  // hz reading, matrix element at the pump wavenumber: the combination that
  // reaches the target's factor-100 band
  EXPECT_EQ(rep.best_entry, 1);
  const auto& best = rep.entries[1];
  EXPECT_GE(best.blue_to_target, 1e-2);
  EXPECT_LE(best.blue_to_target, 1e2);
  const double pair_ratio = best.alpha_blue / best.alpha_red;
  EXPECT_GE(pair_ratio, 0.1);
  EXPECT_LE(pair_ratio, 10.0);

  const auto text = render_paper_check(rep);
  EXPECT_NE(text.find("interpretation [2]"), std::string::npos);
  EXPECT_NE(text.find("within a factor 100"), std::string::npos);
}

TEST(PaperCheck, ThetaZeroKillsSidebandsOnly) {
  const auto rep = paper_check(0.0);
  for (const auto& e : rep.entries) {
    EXPECT_EQ(e.alpha_blue, 0.0);
    EXPECT_EQ(e.alpha_red, 0.0);
    EXPECT_GT(e.alpha_ordinary, 0.0);
  }
  EXPECT_EQ(rep.best_entry, -1);
}

TEST(PaperCheck, RedAltFormSwitch) {
  GainOptions alt;
  alt.red_alt_form = true;
  const auto rep = paper_check({}, alt);
  EXPECT_REL_NEAR(rep.entries[0].alpha_red, 2.6596559237735369e-6, 1e-12);
  EXPECT_TRUE(rep.red_alt_form);
}

}  // namespace
