#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "pdc/errors.hpp"
#include "pdc/gain.hpp"

namespace pdc {

struct StepControl {
  double step = 0.0;        // cm
  double tolerance = 1e-9;  // target relative accuracy of the run
};

// One channel reduced to the coupled pair
//   dA_s/dz = kappa conj(A_i) e^{i delta z}
//   dA_i/dz = kappa conj(A_s) e^{i delta z}
// with |kappa| equal to the channel's amplification coefficient and delta the
// mismatch wavenumber (0 for ordinary, +-Rabi/c for the sidebands).
struct CoupledSystem {
  std::complex<double> kappa;  // cm^-1
  double delta = 0.0;          // cm^-1
};

struct TraceMeta {
  Component component = Component::ordinary;
  std::string method;  // "analytic" or "rk4"
  double step = 0.0;
  double tolerance = 0.0;
};

// Sampled amplitudes along z. Amplitude units are arbitrary but consistent;
// only ratios and log-slopes are ever reported.
struct PropagationTrace {
  std::vector<double> z;  // cm, strictly increasing
  std::vector<std::complex<double>> signal;
  std::vector<std::complex<double>> idler;
  TraceMeta meta;
};

// Single-coefficient exponential growth of both amplitudes,
// A_mu(z) = A_mu(z0) exp(coefficient (z - z0)).
inline PropagationTrace propagate_analytic(double coefficient, std::complex<double> a0_signal,
                                           std::complex<double> a0_idler,
                                           std::span<const double> z_grid) {
  if (!(coefficient >= 0.0))
    throw domain_error("amplification coefficient must be >= 0 cm^-1");
  if (z_grid.size() < 2) throw domain_error("z grid needs at least two samples");
  for (std::size_t i = 1; i < z_grid.size(); ++i)
    if (!(z_grid[i] > z_grid[i - 1]))
      throw domain_error("z grid must be strictly increasing");

  PropagationTrace t;
  t.meta.method = "analytic";
  t.z.assign(z_grid.begin(), z_grid.end());
  t.signal.reserve(t.z.size());
  t.idler.reserve(t.z.size());
  for (double z : t.z) {
    const double growth = std::exp(coefficient * (z - t.z.front()));
    t.signal.push_back(a0_signal * growth);
    t.idler.push_back(a0_idler * growth);
  }
  return t;
}

// Classical fixed-step RK4 over [0, z_span]. The step is shrunk, never
// stretched, so the grid ends exactly on z_span.
inline PropagationTrace propagate_coupled(const CoupledSystem& sys,
                                          std::complex<double> a0_signal,
                                          std::complex<double> a0_idler, double z_span,
                                          const StepControl& control) {
  if (!(control.step > 0.0) || !(control.tolerance > 0.0))
    throw domain_error("step control needs positive step and tolerance");
  if (!(z_span > 0.0)) throw domain_error("propagation span must be > 0 cm");
  const double kmag = std::abs(sys.kappa);
  if (kmag * control.step > 0.1)
    throw domain_error("integration step too large: |kappa| h = " +
                       std::to_string(kmag * control.step) +
                       "; choose h <= 0.1 / |kappa|");

  const auto n_steps = static_cast<std::size_t>(std::ceil(z_span / control.step - 1e-12));
  const double h = z_span / static_cast<double>(n_steps);

  using State = std::array<std::complex<double>, 2>;
  const auto rhs = [&sys](double z, const State& y) -> State {
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, sys.delta * z));
    return {sys.kappa * std::conj(y[1]) * phase, sys.kappa * std::conj(y[0]) * phase};
  };
  const auto axpy = [](const State& y, double a, const State& k) -> State {
    return {y[0] + a * k[0], y[1] + a * k[1]};
  };

  PropagationTrace t;
  t.meta.method = "rk4";
  t.meta.step = h;
  t.meta.tolerance = control.tolerance;
  t.z.reserve(n_steps + 1);
  t.signal.reserve(n_steps + 1);
  t.idler.reserve(n_steps + 1);

  State y{a0_signal, a0_idler};
  t.z.push_back(0.0);
  t.signal.push_back(y[0]);
  t.idler.push_back(y[1]);

  for (std::size_t i = 0; i < n_steps; ++i) {
    const double z = static_cast<double>(i) * h;
    const State k1 = rhs(z, y);
    const State k2 = rhs(z + 0.5 * h, axpy(y, 0.5 * h, k1));
    const State k3 = rhs(z + 0.5 * h, axpy(y, 0.5 * h, k2));
    const State k4 = rhs(z + h, axpy(y, h, k3));
    for (int j = 0; j < 2; ++j)
      y[j] += (h / 6.0) * (k1[j] + 2.0 * (k2[j] + k3[j]) + k4[j]);

    if (!std::isfinite(y[0].real()) || !std::isfinite(y[0].imag()) ||
        !std::isfinite(y[1].real()) || !std::isfinite(y[1].imag()))
      throw integration_error("amplitudes left the finite range during RK4", z);

    t.z.push_back(static_cast<double>(i + 1) * h);
    t.signal.push_back(y[0]);
    t.idler.push_back(y[1]);
  }
  t.z.back() = z_span;  // guard against accumulated rounding in the last node
  return t;
}

// Least-squares slope of ln|A_s| over the final third of the trace. With
// require_growth (the default) the trace must have grown by at least e^2 from
// its minimum, so the fit sits on the exponential tail; pass false to read a
// slope off bounded (mismatch-suppressed) traces.
inline double asymptotic_growth_rate(const PropagationTrace& trace,
                                     bool require_growth = true) {
  const std::size_t n = trace.z.size();
  if (n < 6 || trace.signal.size() != n)
    throw domain_error("trace too short for a growth-rate fit");

  double amin = std::abs(trace.signal.front()), amax = amin;
  for (const auto& a : trace.signal) {
    const double m = std::abs(a);
    amin = std::min(amin, m);
    amax = std::max(amax, m);
  }
  if (require_growth && !(amax > amin * std::exp(2.0)))
    throw domain_error("insufficient growth for an asymptotic rate: max/min |A_s| = " +
                       std::to_string(amin > 0.0 ? amax / amin : 0.0) +
                       " < e^2; extend the span or pass require_growth = false");

  const std::size_t begin = (2 * n) / 3;
  double sz = 0.0, sl = 0.0, szz = 0.0, szl = 0.0;
  std::size_t m = 0;
  for (std::size_t i = begin; i < n; ++i) {
    const double a = std::abs(trace.signal[i]);
    if (!(a > 0.0))
      throw domain_error("zero amplitude in the fit window; no log-slope exists");
    const double l = std::log(a);
    sz += trace.z[i];
    sl += l;
    szz += trace.z[i] * trace.z[i];
    szl += trace.z[i] * l;
    ++m;
  }
  const double denom = static_cast<double>(m) * szz - sz * sz;
  if (!(std::abs(denom) > 0.0))
    throw domain_error("degenerate z window in growth-rate fit");
  return (static_cast<double>(m) * szl - sz * sl) / denom;
}

}  // namespace pdc
