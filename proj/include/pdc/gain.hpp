#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "pdc/dressed.hpp"
#include "pdc/errors.hpp"

namespace pdc {

// The three down-conversion channels. Each selects a sum rule for the
// signal/idler pair and a propagation phase mismatch:
//   ordinary: w_s + w_i = w_p        mismatch 0
//   blue:     w_s + w_i = w_p + Rabi mismatch +Rabi/c
//   red:      w_s + w_i = w_p - Rabi mismatch -Rabi/c
enum class Component { ordinary, blue, red };

inline std::string to_string(Component c) {
  switch (c) {
    case Component::ordinary: return "ordinary";
    case Component::blue: return "blue";
    case Component::red: return "red";
  }
  return "?";
}

inline Component component_from_string(std::string_view s) {
  if (s == "ordinary") return Component::ordinary;
  if (s == "blue") return Component::blue;
  if (s == "red") return Component::red;
  throw parse_error("unknown component '" + std::string(s) + "' (expected ordinary|blue|red)");
}

inline double sum_rule_target(Component c, double omega_p, double rabi) {
  switch (c) {
    case Component::ordinary: return omega_p;
    case Component::blue: return omega_p + rabi;
    case Component::red: return omega_p - rabi;
  }
  return omega_p;
}

inline double mismatch_wavenumber(Component c, double rabi,
                                  const PhysicalConstants& k = kCgs) {
  switch (c) {
    case Component::ordinary: return 0.0;
    case Component::blue: return rabi / k.speed_of_light;
    case Component::red: return -rabi / k.speed_of_light;
  }
  return 0.0;
}

struct FrequencyPair {
  double omega_s = 0.0;  // rad/s
  double omega_i = 0.0;  // rad/s
};

// Complement of omega_s under the component's sum rule.
inline double idler_for_signal(Component c, double omega_p, double rabi, double omega_s) {
  const double omega_i = sum_rule_target(c, omega_p, rabi) - omega_s;
  if (!(omega_i > 0.0))
    throw domain_error("sum rule for " + to_string(c) +
                       " component leaves no positive idler frequency (omega_s = " +
                       std::to_string(omega_s) + " rad/s)");
  return omega_i;
}

// Model for the bound-electron factor <1| sin(k_s rho_z) sin(k_i rho_z) |1>.
// small_argument expands the sines, giving k_s k_i rho_bar^2; user_supplied
// passes a caller-evaluated value through unchanged.
class MatrixElementModel {
public:
  enum class Mode { small_argument, user_supplied };

  static MatrixElementModel small_argument(double rho_bar) {
    if (!(rho_bar > 0.0)) throw domain_error("orbit radius must be > 0 cm");
    MatrixElementModel m;
    m.mode_ = Mode::small_argument;
    m.rho_bar_ = rho_bar;
    return m;
  }

  static MatrixElementModel user_supplied(double value) {
    if (!(value > 0.0 && value <= 1.0))
      throw domain_error("user-supplied matrix element must lie in (0, 1], got " +
                         std::to_string(value));
    MatrixElementModel m;
    m.mode_ = Mode::user_supplied;
    m.value_ = value;
    return m;
  }

  double evaluate(double k_s, double k_i) const {
    if (!(k_s > 0.0) || !(k_i > 0.0))
      throw domain_error("wavenumbers must be > 0 cm^-1");
    if (mode_ == Mode::user_supplied) return value_;
    return (k_s * rho_bar_) * (k_i * rho_bar_);
  }

  Mode mode() const noexcept { return mode_; }
  double rho_bar() const noexcept { return rho_bar_; }
  double value() const noexcept { return value_; }

private:
  MatrixElementModel() = default;
  Mode mode_ = Mode::small_argument;
  double rho_bar_ = 0.0;
  double value_ = 0.0;
};

inline double matrix_element(const MatrixElementModel& model, double k_s, double k_i) {
  return model.evaluate(k_s, k_i);
}

// Per-point warning flags. Values are still computed when a flag is set;
// the flag travels with the point through every output format.
enum GainFlag : unsigned {
  kFlagNone = 0u,
  kFlagDegeneratePair = 1u << 0,   // omega_s == omega_i (nondegenerate theory)
  kFlagNegativeRadicand = 1u << 1, // blue-channel product under sqrt was < 0
  kFlagTwoLevelGuard = 1u << 2,    // Omega' no longer small against omega0
  kFlagOmegaRatio = 1u << 3,       // omega_{s,i} >> Rabi assumption strained
  kFlagDipoleRegime = 1u << 4,     // k rho_bar beyond the small-argument range
  kFlagEvaluationError = 1u << 5,  // per-point evaluation failed in a sweep
};

inline std::vector<std::string> flag_tokens(unsigned flags) {
  std::vector<std::string> t;
  if (flags & kFlagDegeneratePair) t.push_back("degenerate");
  if (flags & kFlagNegativeRadicand) t.push_back("negative-radicand");
  if (flags & kFlagTwoLevelGuard) t.push_back("two-level-guard");
  if (flags & kFlagOmegaRatio) t.push_back("omega-ratio");
  if (flags & kFlagDipoleRegime) t.push_back("dipole-regime");
  if (flags & kFlagEvaluationError) t.push_back("evaluation-error");
  return t;
}

inline unsigned flag_from_token(std::string_view token) {
  if (token == "degenerate") return kFlagDegeneratePair;
  if (token == "negative-radicand") return kFlagNegativeRadicand;
  if (token == "two-level-guard") return kFlagTwoLevelGuard;
  if (token == "omega-ratio") return kFlagOmegaRatio;
  if (token == "dipole-regime") return kFlagDipoleRegime;
  if (token == "evaluation-error") return kFlagEvaluationError;
  throw parse_error("unknown flag token '" + std::string(token) + "'");
}

struct GainOptions {
  // Sum-rule residual |w_s + w_i - target| / w_p accepted as matched.
  double sum_rule_tolerance = 1e-9;
  // Red channel: use |delta + Omega'/2| instead of |delta + Rabi/2|.
  bool red_alt_form = false;
  // Flag when Omega' exceeds this fraction of omega0.
  double two_level_guard_fraction = 1e-2;
  // Flag when min(w_s, w_i) < omega_ratio_min * Rabi.
  double omega_ratio_min = 10.0;
  // Flag when max(k_s, k_i) * rho_bar exceeds this.
  double dipole_argument_max = 0.3;
};

// Multiplicative audit trail: coefficient == product of the five factors.
struct GainBreakdown {
  double prefactor = 0.0;            // channel prefactor, carries the cm^-1 scale
  double population_coherence = 0.0; // ||a|^2-|b|^2| or |a* b|
  double saturation = 0.0;           // pump-strength factor
  double frequency = 0.0;            // signal/idler frequency dependence
  double matrix_element = 0.0;       // sqrt of the sine matrix element

  double product() const noexcept {
    return prefactor * population_coherence * saturation * frequency * matrix_element;
  }
};

struct GainPoint {
  Component component = Component::ordinary;
  FrequencyPair pair;
  double coefficient = 0.0;  // cm^-1
  GainBreakdown breakdown;
  unsigned flags = kFlagNone;
};

namespace detail {

inline void require_admissible(const PumpConfig& pump, const FrequencyPair& pair,
                               Component c, const GainOptions& opt) {
  if (!(pair.omega_s > 0.0) || !(pair.omega_i > 0.0))
    throw domain_error("signal/idler frequencies must be > 0 rad/s");
  if (!(2.0 * pump.omega_p - pair.omega_s > 0.0) ||
      !(2.0 * pump.omega_p - pair.omega_i > 0.0))
    throw domain_error("2 omega_p - omega_{s,i} must stay > 0 (vanishing denominator)");
  if (pump.delta == 0.0)
    throw domain_error("gain evaluation requires a nonzero pump detuning");
  const double target = sum_rule_target(c, pump.omega_p, pump.rabi);
  const double residual = std::abs(pair.omega_s + pair.omega_i - target) / pump.omega_p;
  if (residual > opt.sum_rule_tolerance)
    throw phase_matching_error(
        to_string(c) + " sum rule violated: |omega_s + omega_i - target| / omega_p = " +
        std::to_string(residual) + " exceeds tolerance " +
        std::to_string(opt.sum_rule_tolerance));
}

inline unsigned common_flags(const TransitionSpec& atom, const PumpConfig& pump,
                             const FrequencyPair& pair, const GainOptions& opt,
                             const PhysicalConstants& k) {
  unsigned flags = kFlagNone;
  const double scale = pair.omega_s + pair.omega_i;
  if (std::abs(pair.omega_s - pair.omega_i) <= 1e-12 * scale)
    flags |= kFlagDegeneratePair;
  if (pump.generalized_rabi > opt.two_level_guard_fraction * atom.omega0)
    flags |= kFlagTwoLevelGuard;
  if (pump.rabi > 0.0 &&
      std::min(pair.omega_s, pair.omega_i) < opt.omega_ratio_min * pump.rabi)
    flags |= kFlagOmegaRatio;
  const double arg = std::max(pair.omega_s, pair.omega_i) / k.speed_of_light * atom.rho_bar;
  if (arg > opt.dipole_argument_max) flags |= kFlagDipoleRegime;
  return flags;
}

}  // namespace detail

// Ordinary channel: (4 pi n e^2 / m c) ||a|^2-|b|^2| (|delta| Rabi / Omega')
//   * sqrt( M / ((2w_p - w_s) w_s (2w_p - w_i) w_i) ).
// Insensitive to the dressed-state coherence; saturates at strong pump.
inline GainPoint gain_ordinary(const TransitionSpec& atom, const PumpConfig& pump,
                               const SuperpositionState& state, const FrequencyPair& pair,
                               const MatrixElementModel& model, const GainOptions& opt = {},
                               const PhysicalConstants& k = kCgs) {
  detail::require_admissible(pump, pair, Component::ordinary, opt);
  const double k_s = pair.omega_s / k.speed_of_light;
  const double k_i = pair.omega_i / k.speed_of_light;
  const double m_factor = matrix_element(model, k_s, k_i);

  GainPoint g;
  g.component = Component::ordinary;
  g.pair = pair;
  g.flags = detail::common_flags(atom, pump, pair, opt, k);
  g.breakdown.prefactor = 4.0 * std::numbers::pi * atom.density * k.electron_charge *
                          k.electron_charge / (k.electron_mass * k.speed_of_light);
  g.breakdown.population_coherence = state.population_difference();
  g.breakdown.saturation =
      pump.rabi > 0.0 ? std::abs(pump.delta) * pump.rabi / pump.generalized_rabi : 0.0;
  g.breakdown.frequency =
      1.0 / std::sqrt((2.0 * pump.omega_p - pair.omega_s) * pair.omega_s *
                      (2.0 * pump.omega_p - pair.omega_i) * pair.omega_i);
  g.breakdown.matrix_element = std::sqrt(m_factor);
  g.coefficient = g.breakdown.product();
  return g;
}

// Blue sideband: (pi n e^2 / m c w_p) |a* b| (Rabi^2 / Omega'^2)
//   * sqrt( M * prod_{mu} (Omega'/(2w_p - w_mu) + delta/w_mu) ).
// For delta < 0 the product under the sqrt can go negative; its magnitude is
// used and the point is flagged negative-radicand.
inline GainPoint gain_blue(const TransitionSpec& atom, const PumpConfig& pump,
                           const SuperpositionState& state, const FrequencyPair& pair,
                           const MatrixElementModel& model, const GainOptions& opt = {},
                           const PhysicalConstants& k = kCgs) {
  detail::require_admissible(pump, pair, Component::blue, opt);
  const double k_s = pair.omega_s / k.speed_of_light;
  const double k_i = pair.omega_i / k.speed_of_light;
  const double m_factor = matrix_element(model, k_s, k_i);

  GainPoint g;
  g.component = Component::blue;
  g.pair = pair;
  g.flags = detail::common_flags(atom, pump, pair, opt, k);

  const double gen = pump.generalized_rabi;
  const double f_s = gen / (2.0 * pump.omega_p - pair.omega_s) + pump.delta / pair.omega_s;
  const double f_i = gen / (2.0 * pump.omega_p - pair.omega_i) + pump.delta / pair.omega_i;
  double radicand = f_s * f_i;
  if (radicand < 0.0) {
    radicand = -radicand;
    g.flags |= kFlagNegativeRadicand;
  }

  g.breakdown.prefactor = std::numbers::pi * atom.density * k.electron_charge *
                          k.electron_charge /
                          (k.electron_mass * k.speed_of_light * pump.omega_p);
  g.breakdown.population_coherence = state.coherence();
  const double ratio = gen > 0.0 ? pump.rabi / gen : 0.0;
  g.breakdown.saturation = ratio * ratio;
  g.breakdown.frequency = std::sqrt(radicand);
  g.breakdown.matrix_element = std::sqrt(m_factor);
  g.coefficient = g.breakdown.product();
  return g;
}

// Red sideband: (pi n e^2 / m c w_p) |a* b| (Rabi^2 / Omega'^2)
//   * |delta + Rabi/2| / sqrt((2w_p - w_s)(2w_p - w_i)) * sqrt(M).
// The alternate form replaces Rabi/2 with Omega'/2 (off by default).
inline GainPoint gain_red(const TransitionSpec& atom, const PumpConfig& pump,
                          const SuperpositionState& state, const FrequencyPair& pair,
                          const MatrixElementModel& model, const GainOptions& opt = {},
                          const PhysicalConstants& k = kCgs) {
  detail::require_admissible(pump, pair, Component::red, opt);
  const double k_s = pair.omega_s / k.speed_of_light;
  const double k_i = pair.omega_i / k.speed_of_light;
  const double m_factor = matrix_element(model, k_s, k_i);

  GainPoint g;
  g.component = Component::red;
  g.pair = pair;
  g.flags = detail::common_flags(atom, pump, pair, opt, k);

  g.breakdown.prefactor = std::numbers::pi * atom.density * k.electron_charge *
                          k.electron_charge /
                          (k.electron_mass * k.speed_of_light * pump.omega_p);
  g.breakdown.population_coherence = state.coherence();
  const double gen = pump.generalized_rabi;
  const double ratio = gen > 0.0 ? pump.rabi / gen : 0.0;
  g.breakdown.saturation = ratio * ratio;
  const double half = 0.5 * (opt.red_alt_form ? gen : pump.rabi);
  g.breakdown.frequency =
      std::abs(pump.delta + half) /
      std::sqrt((2.0 * pump.omega_p - pair.omega_s) * (2.0 * pump.omega_p - pair.omega_i));
  g.breakdown.matrix_element = std::sqrt(m_factor);
  g.coefficient = g.breakdown.product();
  return g;
}

inline GainPoint gain(Component c, const TransitionSpec& atom, const PumpConfig& pump,
                      const SuperpositionState& state, const FrequencyPair& pair,
                      const MatrixElementModel& model, const GainOptions& opt = {},
                      const PhysicalConstants& k = kCgs) {
  switch (c) {
    case Component::ordinary: return gain_ordinary(atom, pump, state, pair, model, opt, k);
    case Component::blue: return gain_blue(atom, pump, state, pair, model, opt, k);
    case Component::red: return gain_red(atom, pump, state, pair, model, opt, k);
  }
  throw domain_error("unreachable component");
}

}  // namespace pdc
