#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "pdc/constants.hpp"
#include "pdc/errors.hpp"

namespace pdc {

// Bare two-level transition plus the gas it lives in.
struct TransitionSpec {
  double omega0 = 0.0;   // transition angular frequency, rad/s
  double d12 = 0.0;      // |<1|d|2>|, statC cm
  double rho_bar = 0.0;  // effective electron orbit radius, cm
  double density = 0.0;  // atoms per cm^3
};

inline TransitionSpec make_transition(double omega0, double d12, double rho_bar,
                                      double density) {
  if (!(omega0 > 0.0)) throw domain_error("transition frequency must be > 0 rad/s");
  if (!(d12 > 0.0)) throw domain_error("dipole matrix element must be > 0 statC cm");
  if (!(rho_bar > 0.0)) throw domain_error("orbit radius must be > 0 cm");
  if (!(density > 0.0)) throw domain_error("number density must be > 0 cm^-3");
  return {omega0, d12, rho_bar, density};
}

// k0 * rho_bar, the argument that must stay small for the dipole treatment.
inline double dipole_argument(const TransitionSpec& t, const PhysicalConstants& k = kCgs) {
  return t.rho_bar * t.omega0 / k.speed_of_light;
}

inline double rabi_frequency(double d12, double e_p, const PhysicalConstants& k = kCgs) {
  if (!(d12 >= 0.0)) throw domain_error("dipole matrix element must be >= 0");
  if (!(e_p >= 0.0)) throw domain_error("field amplitude must be >= 0");
  return 2.0 * d12 * e_p / k.hbar;
}

// sqrt(delta^2 + omega^2) without intermediate overflow.
inline double generalized_rabi(double delta, double omega) {
  return std::hypot(delta, omega);
}

// Pump wave plus the quantities derived from it. delta = omega_p - omega0.
struct PumpConfig {
  double omega_p = 0.0;          // rad/s
  double e_p = 0.0;              // statvolt/cm
  double delta = 0.0;            // rad/s
  double rabi = 0.0;             // rad/s
  double generalized_rabi = 0.0; // rad/s
  double k_p = 0.0;              // cm^-1
};

inline PumpConfig make_pump(const TransitionSpec& t, double delta, double e_p,
                            const PhysicalConstants& k = kCgs) {
  PumpConfig p;
  p.omega_p = t.omega0 + delta;
  if (!(p.omega_p > 0.0))
    throw domain_error("pump frequency omega0 + delta must be > 0 rad/s");
  p.e_p = e_p;
  p.delta = delta;
  p.rabi = rabi_frequency(t.d12, e_p, k);
  p.generalized_rabi = generalized_rabi(delta, p.rabi);
  p.k_p = p.omega_p / k.speed_of_light;
  return p;
}

// Quasi-energy shifts lambda_pm = -delta/2 +- Omega'/2 and the dressed-state
// normalization factors N_pm = Omega / sqrt(2 Omega' (Omega' -+ delta)).
// bare_atom_limit marks the Omega = 0 branch, where one dressed state
// coincides with a bare state and N_pm take their analytic limits.
struct DressedPair {
  double lambda_plus = 0.0;
  double lambda_minus = 0.0;
  double n_plus = 0.0;
  double n_minus = 0.0;
  bool bare_atom_limit = false;
};

// The small shift is computed through lambda_+ lambda_- = -Omega^2/4 instead
// of the subtractive form; otherwise the identities degrade to ~1e-4 relative
// at Omega/|delta| = 1e-6.
inline DressedPair dressed_pair(double delta, double omega) {
  if (!(omega >= 0.0)) throw domain_error("Rabi frequency must be >= 0 rad/s");
  if (omega == 0.0) {
    if (delta == 0.0) {
      const double r = 1.0 / std::numbers::sqrt2;
      return {0.0, 0.0, r, r, true};
    }
    if (delta > 0.0) return {0.0, -delta, 1.0, 0.0, true};
    return {-delta, 0.0, 0.0, 1.0, true};
  }
  const double gen = generalized_rabi(delta, omega);
  DressedPair d;
  d.bare_atom_limit = false;
  if (delta >= 0.0) {
    const double s = delta + gen;                    // no cancellation
    d.lambda_minus = -0.5 * s;
    d.lambda_plus = 0.5 * omega * omega / s;         // = omega^2 / (2(delta + Omega'))
    d.n_plus = std::sqrt(0.5 * s / gen);             // = sqrt((Omega' + delta) / (2 Omega'))
    d.n_minus = omega / std::sqrt(2.0 * gen * s);
  } else {
    const double s = gen - delta;                    // = Omega' + |delta|
    d.lambda_plus = 0.5 * s;
    d.lambda_minus = -0.5 * omega * omega / s;
    d.n_minus = std::sqrt(0.5 * s / gen);
    d.n_plus = omega / std::sqrt(2.0 * gen * s);
  }
  return d;
}

// Prepared superposition of the two dressed states; normalized on
// construction. Gain magnitudes depend only on the moduli, the relative
// phase matters once the complex coupling enters the propagation equations.
class SuperpositionState {
public:
  SuperpositionState(std::complex<double> alpha_raw, std::complex<double> beta_raw) {
    const double norm2 = std::norm(alpha_raw) + std::norm(beta_raw);
    if (!(norm2 > 0.0))
      throw domain_error("superposition amplitudes must not both vanish");
    const double inv = 1.0 / std::sqrt(norm2);
    alpha_ = alpha_raw * inv;
    beta_ = beta_raw * inv;
  }

  // alpha = cos(theta), beta = e^{i phi} sin(theta).
  static SuperpositionState from_angles(double theta, double phi) {
    return SuperpositionState(std::cos(theta),
                              std::complex<double>(std::cos(phi), std::sin(phi)) * std::sin(theta));
  }

  std::complex<double> alpha() const noexcept { return alpha_; }
  std::complex<double> beta() const noexcept { return beta_; }

  // | |alpha|^2 - |beta|^2 |, in [0, 1].
  double population_difference() const noexcept {
    return std::abs(std::norm(alpha_) - std::norm(beta_));
  }

  // |alpha* beta|, in [0, 1/2].
  double coherence() const noexcept { return std::abs(alpha_) * std::abs(beta_); }

  // alpha* beta with its phase, as it enters the coupled wave equations.
  std::complex<double> coherence_amplitude() const noexcept {
    return std::conj(alpha_) * beta_;
  }

private:
  std::complex<double> alpha_;
  std::complex<double> beta_;
};

}  // namespace pdc
