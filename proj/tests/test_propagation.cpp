#include "pdc/propagation.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace {

using namespace pdc;
using cplx = std::complex<double>;

constexpr double kCosh1 = 1.5430806348152438;
constexpr double kSinh1 = 1.1752011936438015;

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * i / (n - 1);
  return v;
}

TEST(PropagateAnalytic, ZeroCoefficientIsFlat) {
  const auto grid = linspace(0.0, 10.0, 11);
  const auto t = propagate_analytic(0.0, {1.0, 0.5}, {0.2, 0.0}, grid);
  for (const auto& a : t.signal) EXPECT_EQ(a, cplx(1.0, 0.5));
  for (const auto& a : t.idler) EXPECT_EQ(a, cplx(0.2, 0.0));
}

TEST(PropagateAnalytic, ExponentialComposition) {
  const auto grid = linspace(0.0, 2.0, 5);
  const double g = 0.37;
  const auto t = propagate_analytic(g, {1.0, 0.0}, {1.0, 0.0}, grid);
  EXPECT_EQ(t.signal.front(), cplx(1.0, 0.0));  // first sample exact
  EXPECT_REL_NEAR(std::abs(t.signal[4]) / std::abs(t.signal[2]), std::exp(g * 1.0), 1e-13);
}

TEST(PropagateAnalytic, UnitExponent) {
  const auto grid = linspace(0.0, 1e3, 3);
  const auto t = propagate_analytic(1e-3, {1.0, 0.0}, {1.0, 0.0}, grid);
  EXPECT_REL_NEAR(std::abs(t.signal.back()), std::exp(1.0), 1e-13);
}

TEST(PropagateAnalytic, InputValidation) {
  const auto grid = linspace(0.0, 1.0, 4);
  EXPECT_THROW(propagate_analytic(-0.1, {1, 0}, {0, 0}, grid), domain_error);
  const std::vector<double> bad{0.0, 1.0, 0.5};
  EXPECT_THROW(propagate_analytic(0.1, {1, 0}, {0, 0}, bad), domain_error);
}

TEST(PropagateCoupled, ZeroCouplingIsFlat) {
  const auto t = propagate_coupled({{0.0, 0.0}, 0.0}, {0.3, -0.1}, {0.0, 0.2}, 5.0,
                                   {0.05, 1e-9});
  for (const auto& a : t.signal) EXPECT_EQ(a, cplx(0.3, -0.1));
  for (const auto& a : t.idler) EXPECT_EQ(a, cplx(0.0, 0.2));
}

TEST(PropagateCoupled, MatchesCoshSinhClosedForm) {
  // real kappa, delta = 0, seed (1, 0): A_s = cosh(kz), A_i = sinh(kz).
  const double kappa = 2.0;
  const auto t = propagate_coupled({{kappa, 0.0}, 0.0}, {1.0, 0.0}, {0.0, 0.0},
                                   1.0 / kappa, {0.01 / kappa, 1e-9});
  EXPECT_REL_NEAR(t.signal.back().real(), kCosh1, 1e-9);
  EXPECT_REL_NEAR(t.idler.back().real(), kSinh1, 1e-9);
  double max_err = 0.0;
  for (std::size_t i = 0; i < t.z.size(); ++i) {
    max_err = std::max(max_err,
                       pdc::testutil::rel_diff(t.signal[i].real(), std::cosh(kappa * t.z[i])));
  }
  EXPECT_LE(max_err, 1e-9);
}

TEST(PropagateCoupled, FourthOrderConvergence) {
  const double kappa = 1.0, span = 2.0;
  auto max_err = [&](double h) {
    const auto t = propagate_coupled({{kappa, 0.0}, 0.0}, {1.0, 0.0}, {0.0, 0.0}, span,
                                     {h, 1e-12});
    double e = 0.0;
    for (std::size_t i = 0; i < t.z.size(); ++i)
      e = std::max(e, std::abs(t.signal[i].real() - std::cosh(kappa * t.z[i])));
    return e;
  };
  const double e1 = max_err(0.05), e2 = max_err(0.025), e3 = max_err(0.0125);
  const double order12 = std::log2(e1 / e2);
  const double order23 = std::log2(e2 / e3);
  EXPECT_GE(order12, 3.8);
  EXPECT_LE(order12, 4.2);
  EXPECT_GE(order23, 3.8);
  EXPECT_LE(order23, 4.2);
}

TEST(PropagateCoupled, ManleyRoweDifferenceConserved) {
  // |A_s|^2 - |A_i|^2 is an exact invariant of the pair for any kappa, delta.
  const StepControl ctrl{0.01, 1e-9};
  for (double delta : {0.0, 3.7}) {
    const auto t = propagate_coupled({{1.0, 0.4}, delta}, {1.0, 0.2}, {0.1, -0.3}, 6.0, ctrl);
    const double q0 = std::norm(t.signal.front()) - std::norm(t.idler.front());
    double worst = 0.0;
    double scale = 1.0;
    for (std::size_t i = 0; i < t.z.size(); ++i) {
      const double q = std::norm(t.signal[i]) - std::norm(t.idler[i]);
      scale = std::max(scale, std::norm(t.signal[i]));
      worst = std::max(worst, std::abs(q - q0));
    }
    EXPECT_LE(worst / scale, 10.0 * ctrl.tolerance);
  }
}

TEST(PropagateCoupled, RejectsOversizedStep) {
  EXPECT_THROW(propagate_coupled({{1.0, 0.0}, 0.0}, {1, 0}, {0, 0}, 10.0, {0.2, 1e-9}),
               domain_error);
  EXPECT_THROW(propagate_coupled({{1.0, 0.0}, 0.0}, {1, 0}, {0, 0}, 10.0, {0.0, 1e-9}),
               domain_error);
  EXPECT_THROW(propagate_coupled({{1.0, 0.0}, 0.0}, {1, 0}, {0, 0}, -1.0, {0.01, 1e-9}),
               domain_error);
}

TEST(PropagateCoupled, OverflowReportsLastValidZ) {
  // e^{kz} overflows past kz ~ 710; the integrator must say where it died.
  try {
    propagate_coupled({{1.0, 0.0}, 0.0}, {1.0, 0.0}, {0.0, 0.0}, 800.0, {0.1, 1e-9});
    FAIL() << "expected integration_error";
  } catch (const integration_error& e) {
    EXPECT_GT(e.last_valid_z(), 600.0);
    EXPECT_LT(e.last_valid_z(), 800.0);
  }
}

TEST(GrowthRate, ReadsAnalyticCoefficient) {
  const auto grid = linspace(0.0, 20.0, 201);
  const double g = 0.42;
  const auto t = propagate_analytic(g, {1.0, 0.0}, {1.0, 0.0}, grid);
  EXPECT_REL_NEAR(asymptotic_growth_rate(t), g, 1e-9);
}

TEST(GrowthRate, CoupledTraceApproachesKappa) {
  const double kappa = 0.5;
  const auto t = propagate_coupled({{kappa, 0.0}, 0.0}, {1.0, 0.0}, {0.0, 0.0},
                                   6.0 / kappa, {0.01 / kappa, 1e-9});
  EXPECT_REL_NEAR(asymptotic_growth_rate(t), kappa, 0.01);
}

TEST(GrowthRate, InsufficientGrowthDiagnosed) {
  const auto grid = linspace(0.0, 1.0, 50);
  const auto t = propagate_analytic(0.1, {1.0, 0.0}, {1.0, 0.0}, grid);  // grows by e^0.1
  EXPECT_THROW(asymptotic_growth_rate(t), domain_error);
}

TEST(GrowthRate, MismatchSuppressesGain) {
  // |delta| = 4|kappa| is beyond the oscillation threshold: bounded trace,
  // rate far below kappa. Cross-checked at two step sizes.
  const double kappa = 1.0, delta = 4.0;
  double rates[2];
  int idx = 0;
  for (double h : {0.01, 0.005}) {
    const auto t = propagate_coupled({{kappa, 0.0}, delta}, {1.0, 0.0}, {0.0, 0.0}, 40.0,
                                     {h, 1e-9});
    rates[idx++] = asymptotic_growth_rate(t, /*require_growth=*/false);
  }
  EXPECT_LT(std::abs(rates[0]), kappa);
  EXPECT_LT(std::abs(rates[1]), kappa);
  EXPECT_LE(std::abs(rates[0] - rates[1]), 0.05 * kappa);
}

TEST(GrowthRate, NonincreasingInMismatch) {
  const double kappa = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (double delta : {0.0, 2.5, 5.0, 7.5, 10.0}) {
    const auto t = propagate_coupled({{kappa, 0.0}, delta}, {1.0, 0.0}, {0.0, 0.0}, 30.0,
                                     {0.005, 1e-9});
    const double rate = asymptotic_growth_rate(t, /*require_growth=*/false);
    EXPECT_LE(rate, prev + 0.02 * kappa);
    prev = rate;
  }
}

}  // namespace
