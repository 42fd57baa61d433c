#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <string>

#include "pdc/errors.hpp"

namespace pdc {

// CODATA-2018 values expressed in CGS-Gaussian units. Every formula in this
// library is written in that system; lab-side quantities (W/cm^2, Hz) are
// converted at the boundary by the helpers below.
struct PhysicalConstants {
  double electron_charge;  // statC
  double electron_mass;    // g
  double speed_of_light;   // cm/s
  double hbar;             // erg s
};

inline constexpr PhysicalConstants kCgs{
    4.803204712570263e-10,  // e  (1.602176634e-19 C)
    9.1093837015e-28,       // m_e
    2.99792458e10,          // c
    1.054571817e-27,        // hbar
};

inline constexpr double kErgPerSecondPerWatt = 1.0e7;

enum class DetuningUnit { hz, rad_per_s };

inline std::string to_string(DetuningUnit u) {
  return u == DetuningUnit::hz ? "hz" : "rads";
}

// A detuning always travels with its unit tag; nothing in the library guesses
// Hz vs rad/s from magnitude.
struct Detuning {
  double value = 0.0;
  DetuningUnit unit = DetuningUnit::rad_per_s;
};

struct LabInputs {
  std::optional<double> vacuum_wavelength;  // cm
  double intensity = 0.0;                   // W/cm^2
  Detuning detuning;
};

// Field-amplitude convention used throughout: E(t) = E_p cos(wt) with E_p the
// real amplitude, so the time-averaged flux is c E_p^2 / (8 pi). The Rabi
// frequency 2 d E_p / hbar scales directly with this choice.
inline double intensity_to_field_amplitude(double intensity_w_cm2,
                                           const PhysicalConstants& k = kCgs) {
  if (!(intensity_w_cm2 >= 0.0))
    throw domain_error("intensity must be >= 0 W/cm^2, got " + std::to_string(intensity_w_cm2));
  const double flux_cgs = intensity_w_cm2 * kErgPerSecondPerWatt;  // erg/(s cm^2)
  return std::sqrt(8.0 * std::numbers::pi * flux_cgs / k.speed_of_light);
}

inline double field_amplitude_to_intensity(double e_p, const PhysicalConstants& k = kCgs) {
  if (!(e_p >= 0.0))
    throw domain_error("field amplitude must be >= 0 statvolt/cm, got " + std::to_string(e_p));
  return k.speed_of_light * e_p * e_p / (8.0 * std::numbers::pi) / kErgPerSecondPerWatt;
}

inline double wavelength_to_angular_frequency(double lambda_cm,
                                              const PhysicalConstants& k = kCgs) {
  if (!(lambda_cm > 0.0))
    throw domain_error("wavelength must be > 0 cm, got " + std::to_string(lambda_cm));
  return 2.0 * std::numbers::pi * k.speed_of_light / lambda_cm;
}

inline double angular_frequency_to_wavelength(double omega_rad_s,
                                              const PhysicalConstants& k = kCgs) {
  if (!(omega_rad_s > 0.0))
    throw domain_error("angular frequency must be > 0 rad/s, got " + std::to_string(omega_rad_s));
  return 2.0 * std::numbers::pi * k.speed_of_light / omega_rad_s;
}

inline double detuning_to_angular(double value, DetuningUnit unit) {
  return unit == DetuningUnit::hz ? 2.0 * std::numbers::pi * value : value;
}

inline double detuning_to_angular(const Detuning& d) {
  return detuning_to_angular(d.value, d.unit);
}

inline double detuning_from_angular(double rad_per_s, DetuningUnit unit) {
  return unit == DetuningUnit::hz ? rad_per_s / (2.0 * std::numbers::pi) : rad_per_s;
}

}  // namespace pdc
