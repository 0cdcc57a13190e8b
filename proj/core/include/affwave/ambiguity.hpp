// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "affwave/interpolate.hpp"
#include "affwave/signal.hpp"

namespace affwave {

enum class DopplerKind { dilation_factor, shift_frequency, velocity };

/// One Doppler coordinate resolved to the quantities the integrals use.
struct DopplerPoint {
  double gamma = 1.0;  // time-scale factor
  double nu = 0.0;     // frequency shift in the e^{-j nu t} kernel, rad/s
  double s = 0.0;      // log-scale parameter of the exponential form
};

/// Doppler axis of a surface.
///
/// dilation_factor: values are gamma. With carrier_hz > 0 the frequency
/// shift follows the dilation, nu = 2 pi f0 (gamma - 1); with carrier_hz == 0
/// nu = 0 and only the dilation acts.
/// shift_frequency: values are nu (rad/s), gamma = 1.
/// velocity: values are radial velocities v (m/s, positive closing);
/// gamma = 1 + 2v/c and nu = 2 pi f0 (gamma - 1). carrier_hz > 0 required.
struct DopplerAxis {
  DopplerKind kind = DopplerKind::dilation_factor;
  std::vector<double> values;
  double carrier_hz = 0.0;

  static DopplerAxis dilation(std::vector<double> gammas, double carrier_hz = 0.0);
  static DopplerAxis shift(std::vector<double> nus);
  static DopplerAxis velocity(std::vector<double> v, double carrier_hz);

  /// Throws InvalidArgument when empty, non-finite, gamma <= 0 or a velocity
  /// axis has no carrier.
  void validate() const;
  std::size_t size() const { return values.size(); }

  double gamma(std::size_t i) const;
  double nu(std::size_t i) const;
  /// 2v/(c+v) for velocity axes, gamma - 1 otherwise.
  double delta(std::size_t i) const;
  DopplerPoint point(std::size_t i) const;
  /// Value written to the CSV `doppler` column: nu for shift axes, gamma
  /// otherwise.
  double column_value(std::size_t i) const;
};

std::string to_string(DopplerKind kind);
DopplerKind doppler_kind_from_string(const std::string& name);

enum class WafDefinition {
  naf,                       // int w(t) w*(t - tau) e^{-j nu t} dt
  kelly_wishner,             // sqrt(g) int w(t) w*(g (t - tau)) e^{-j nu t} dt
  daubechies_form,           // 1/sqrt(g) int w(t) w*((t - tau) / g) e^{-j nu t} dt
  speiser_form,              // sqrt(g) int w(t) w*(g t - tau) e^{-j nu t} dt
  exponential_form,          // e^{s/2} int w(t) w*(e^{-s} t - tau) e^{-j s t} dt
  cross_pq,                  // pulse-train cross-ambiguity
  kelly_wishner_narrowband,  // sqrt(g) e^{-2 pi j f0 (g - 1) tau} naf(tau, nu)
};

std::string to_string(WafDefinition d);
WafDefinition waf_definition_from_string(const std::string& name);

enum class Normalization { raw, peak };

/// Complex surface on delays x Doppler. values[i * delays.size() + k] holds
/// Doppler index i and delay index k (delay fastest).
struct AmbiguitySurface {
  std::vector<double> delays;
  DopplerAxis doppler;
  std::vector<cplx> values;
  WafDefinition definition = WafDefinition::kelly_wishner;
  Normalization normalization = Normalization::raw;
  /// values = raw / scale.
  double scale = 1.0;
  /// Leading amplitude factor of the evaluated form, e.g. "sqrt(gamma)".
  std::string leading_factor;
  std::vector<std::string> notes;

  std::size_t n_delays() const { return delays.size(); }
  std::size_t n_doppler() const { return doppler.size(); }
  cplx at(std::size_t doppler_index, std::size_t delay_index) const {
    return values[doppler_index * delays.size() + delay_index];
  }

  struct Peak {
    std::size_t doppler_index = 0;
    std::size_t delay_index = 0;
    double magnitude = 0.0;
  };
  /// First maximum of |value| in storage order.
  Peak peak() const;
};

struct EvalOptions {
  /// Unset: linear for naf, windowed_sinc(32) for everything else.
  std::optional<Interpolator> interp;
  /// 0: resolve_threads default.
  unsigned threads = 0;
};

/// Delay grid helper: `count` points evenly spaced on [lo, hi].
std::vector<double> linspace(double lo, double hi, std::size_t count);

/// int a(t) conj(b^(lam, shift)(t)) e^{-j nu t} dt on a's lattice, where
/// b^(lam, shift)(t) = |lam|^{-1/2} b((t - shift) / lam).
cplx correlate_affine(const SampledSignal& a, const SampledSignal& b,
                      double lam, double shift, double nu,
                      const Interpolator& interp);

/// Single cell of one of the single-signal definitions (naf through
/// exponential_form).
cplx waf_point(const SampledSignal& w, double tau, const DopplerPoint& p,
               WafDefinition def, const Interpolator& interp);

AmbiguitySurface naf(const SampledSignal& w, const std::vector<double>& delays,
                     const std::vector<double>& nus, const EvalOptions& opts = {});

AmbiguitySurface waf(const SampledSignal& w, const std::vector<double>& delays,
                     const DopplerAxis& doppler, WafDefinition def,
                     const EvalOptions& opts = {});

/// sqrt(gamma) e^{-2 pi j f0 (gamma - 1) tau} naf(tau, nu) on the same grid.
AmbiguitySurface waf_narrowband(const SampledSignal& w,
                                const std::vector<double>& delays,
                                const DopplerAxis& doppler, double f0,
                                const EvalOptions& opts = {});

/// ||w(g (t - tau)) - e^{-2 pi j f0 (g - 1)(t - tau)} w(t - tau)|| / ||w||.
double narrowband_approx_error(const SampledSignal& w, double tau, double gamma,
                               double f0,
                               const Interpolator& interp = Interpolator::standard());

/// Kelly-Wishner surface of the coded pulse assembled from chip-level terms:
/// sum over l, k of x[l] x*[l-k] e^{-j nu (l + 1/2) Tc}
///   chi_w(tau - Tc (k + (l + 1/2)(gamma - 1)) / gamma).
AmbiguitySurface waf_coded_decomposition(const PhaseCode& code,
                                         const ChipPulse& pulse, double fs,
                                         const std::vector<double>& delays,
                                         const DopplerAxis& doppler,
                                         const EvalOptions& opts = {});

enum class CrossMode { exact, slow_time };
std::string to_string(CrossMode m);
CrossMode cross_mode_from_string(const std::string& name);

/// exact: int x_P(t) x_Q*(gamma (t - tau)) e^{-j nu t} dt.
/// slow_time: (1/sqrt(gamma)) sum_n q_n e^{-j nu n T}
///   [p_n chi_x(tau, nu) + (1 - p_n) chi_x~(tau, nu)], aliases at +-nT
///   ignored. Rejects max |nu| T > 0.1; notes a warning above 0.01.
AmbiguitySurface cross_af(const PulseTrainSpec& spec, double fs,
                          const std::vector<double>& delays,
                          const DopplerAxis& doppler, CrossMode mode,
                          const EvalOptions& opts = {});

/// Divides by the peak magnitude; throws NumericalError on an all-zero
/// surface.
AmbiguitySurface normalize_peak(AmbiguitySurface surface);

}  // namespace affwave
