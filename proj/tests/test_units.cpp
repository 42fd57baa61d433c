#include "pdc/constants.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pdc/dressed.hpp"
#include "pdc/gain.hpp"
#include "test_util.hpp"

namespace {

using namespace pdc;

// Frozen from an independent high-precision evaluation (mpmath, 30 digits).
constexpr double kFieldAmplitude1kW = 2.8954067223460553;  // statvolt/cm
constexpr double kE2OverMc = 8.4479725643037374e-3;        // cm^2/s
constexpr double kAuditGain = 3.4749132774773077e-3;       // cm^-1

TEST(Constants, CodataValuesFixedAndPositive) {
  EXPECT_GT(kCgs.electron_charge, 0.0);
  EXPECT_GT(kCgs.electron_mass, 0.0);
  EXPECT_GT(kCgs.speed_of_light, 0.0);
  EXPECT_GT(kCgs.hbar, 0.0);
  EXPECT_DOUBLE_EQ(kCgs.speed_of_light, 2.99792458e10);
  EXPECT_DOUBLE_EQ(kCgs.electron_charge, 4.803204712570263e-10);
}

TEST(IntensityToField, ZeroIntensityGivesZeroField) {
  EXPECT_EQ(intensity_to_field_amplitude(0.0), 0.0);
}

TEST(IntensityToField, SquareRootScaling) {
  const double e1 = intensity_to_field_amplitude(7.5);
  const double e2 = intensity_to_field_amplitude(15.0);
  EXPECT_REL_NEAR(e2 / e1, std::numbers::sqrt2, 1e-14);
}

TEST(IntensityToField, OneKilowattReferenceValue) {
  EXPECT_REL_NEAR(intensity_to_field_amplitude(1e3), kFieldAmplitude1kW, 1e-14);
}

TEST(IntensityToField, ExactlyInvertible) {
  for (double i : {1e-6, 1.0, 42.0, 1e3, 1e9}) {
    EXPECT_REL_NEAR(field_amplitude_to_intensity(intensity_to_field_amplitude(i)), i, 1e-12);
  }
}

TEST(IntensityToField, NegativeIntensityRejected) {
  EXPECT_THROW(intensity_to_field_amplitude(-1.0), domain_error);
}

TEST(WavelengthConversion, DefinitionalCases) {
  EXPECT_REL_NEAR(wavelength_to_angular_frequency(2.0 * std::numbers::pi * kCgs.speed_of_light),
                  1.0, 1e-14);
  EXPECT_REL_NEAR(wavelength_to_angular_frequency(1e-4),
                  2.0 * std::numbers::pi * kCgs.speed_of_light * 1e4, 1e-14);
}

TEST(WavelengthConversion, RoundTrip) {
  for (double lambda : {1e-5, 1e-4, 0.1, 5.0}) {
    EXPECT_REL_NEAR(angular_frequency_to_wavelength(wavelength_to_angular_frequency(lambda)),
                    lambda, 1e-12);
  }
  EXPECT_THROW(wavelength_to_angular_frequency(0.0), domain_error);
  EXPECT_THROW(wavelength_to_angular_frequency(-1e-4), domain_error);
}

TEST(DetuningConversion, UnitTagHandling) {
  EXPECT_REL_NEAR(detuning_to_angular(1e10, DetuningUnit::hz), 2.0 * std::numbers::pi * 1e10,
                  1e-15);
  EXPECT_EQ(detuning_to_angular(123.5, DetuningUnit::rad_per_s), 123.5);
  EXPECT_REL_NEAR(detuning_to_angular(-5e9, DetuningUnit::hz), -std::numbers::pi * 1e10, 1e-15);
  for (DetuningUnit u : {DetuningUnit::hz, DetuningUnit::rad_per_s}) {
    EXPECT_REL_NEAR(detuning_from_angular(detuning_to_angular(7.7e9, u), u), 7.7e9, 1e-12);
  }
}

// Dimensional audit of the ordinary-channel structure, encoded with fixed
// numbers. Chain: e^2 [statC^2] = g cm^3/s^2, so e^2/(m c) = cm^2/s; times
// n [cm^-3] gives 1/(cm s); times |delta| Rabi / Omega' [1/s] gives
// 1/(cm s^2); the sqrt over M / prod((2w_p - w_mu) w_mu) contributes s^2,
// leaving cm^-1. With n = 1, delta = 3, Rabi = 4 (Omega' = 5), w_p = 10,
// w_s = 4, w_i = 6, M = 1:
//   gain = (4 pi e^2 / m c) * (3*4/5) / sqrt(16*4*14*6) = 3.4749132774773077e-3.
TEST(UnitAudit, OrdinaryChannelDimensionChain) {
  EXPECT_REL_NEAR(kCgs.electron_charge * kCgs.electron_charge /
                      (kCgs.electron_mass * kCgs.speed_of_light),
                  kE2OverMc, 1e-14);

  const TransitionSpec atom{7.0, 1.0, 1e-12, 1.0};  // omega0 chosen so delta = 3
  const PumpConfig pump{10.0, 0.0, 3.0, 4.0, 5.0, 10.0 / kCgs.speed_of_light};
  const SuperpositionState state(1.0, 0.0);
  const auto model = MatrixElementModel::user_supplied(1.0);
  const auto g = gain_ordinary(atom, pump, state, {4.0, 6.0}, model);
  EXPECT_REL_NEAR(g.coefficient, kAuditGain, 1e-13);
}

}  // namespace
