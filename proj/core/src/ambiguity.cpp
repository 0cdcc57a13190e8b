// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "affwave/affine.hpp"
#include "affwave/error.hpp"
#include "affwave/parallel.hpp"

namespace affwave {

namespace {

void check_delays(const std::vector<double>& delays) {
  if (delays.empty()) throw InvalidArgument("ambiguity: empty delay grid");
  for (double d : delays) {
    if (!std::isfinite(d)) throw InvalidArgument("ambiguity: non-finite delay");
  }
}

Interpolator pick_interp(const EvalOptions& opts, WafDefinition def) {
  if (opts.interp) return *opts.interp;
  return def == WafDefinition::naf ? Interpolator::linear()
                                   : Interpolator::standard();
}

std::string leading_factor_of(WafDefinition def) {
  switch (def) {
    case WafDefinition::naf: return "1";
    case WafDefinition::kelly_wishner: return "sqrt(gamma)";
    case WafDefinition::daubechies_form: return "1/sqrt(gamma)";
    case WafDefinition::speiser_form: return "sqrt(gamma)";
    case WafDefinition::exponential_form: return "exp(s/2)";
    case WafDefinition::cross_pq: return "1";
    case WafDefinition::kelly_wishner_narrowband: return "sqrt(gamma)";
  }
  return "?";
}

// Fills surface.values by evaluating cell(doppler_index, delay_index) on the
// worker pool. Each cell owns one output slot.
void fill(AmbiguitySurface& surface, unsigned threads,
          const std::function<cplx(std::size_t, std::size_t)>& cell) {
  const std::size_t nd = surface.delays.size();
  const std::size_t total = nd * surface.doppler.size();
  surface.values.assign(total, cplx{});
  parallel_for(total, resolve_threads(threads), [&](std::size_t idx) {
    surface.values[idx] = cell(idx / nd, idx % nd);
  });
}

AmbiguitySurface blank(const std::vector<double>& delays,
                       const DopplerAxis& doppler, WafDefinition def) {
  check_delays(delays);
  doppler.validate();
  AmbiguitySurface s;
  s.delays = delays;
  s.doppler = doppler;
  s.definition = def;
  s.leading_factor = leading_factor_of(def);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// DopplerAxis

DopplerAxis DopplerAxis::dilation(std::vector<double> gammas, double carrier_hz) {
  DopplerAxis a{DopplerKind::dilation_factor, std::move(gammas), carrier_hz};
  a.validate();
  return a;
}

DopplerAxis DopplerAxis::shift(std::vector<double> nus) {
  DopplerAxis a{DopplerKind::shift_frequency, std::move(nus), 0.0};
  a.validate();
  return a;
}

DopplerAxis DopplerAxis::velocity(std::vector<double> v, double carrier_hz) {
  DopplerAxis a{DopplerKind::velocity, std::move(v), carrier_hz};
  a.validate();
  return a;
}

void DopplerAxis::validate() const {
  if (values.empty()) throw InvalidArgument("doppler axis: no values");
  if (!(carrier_hz >= 0.0) || !std::isfinite(carrier_hz)) {
    throw InvalidArgument("doppler axis: carrier must be finite and >= 0");
  }
  if (kind == DopplerKind::velocity && carrier_hz <= 0.0) {
    throw InvalidArgument("doppler axis: velocity axis needs a carrier");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidArgument("doppler axis: non-finite value");
    }
    if (!(gamma(i) > 0.0)) {
      throw InvalidArgument("doppler axis: gamma must be > 0");
    }
  }
}

double DopplerAxis::gamma(std::size_t i) const {
  switch (kind) {
    case DopplerKind::dilation_factor: return values[i];
    case DopplerKind::shift_frequency: return 1.0;
    case DopplerKind::velocity: return 1.0 + 2.0 * values[i] / kSpeedOfLight;
  }
  return 1.0;
}

double DopplerAxis::nu(std::size_t i) const {
  if (kind == DopplerKind::shift_frequency) return values[i];
  return 2.0 * kPi * carrier_hz * (gamma(i) - 1.0);
}

double DopplerAxis::delta(std::size_t i) const {
  if (kind == DopplerKind::velocity) {
    return 2.0 * values[i] / (kSpeedOfLight + values[i]);
  }
  return gamma(i) - 1.0;
}

DopplerPoint DopplerAxis::point(std::size_t i) const {
  DopplerPoint p;
  p.gamma = gamma(i);
  p.nu = nu(i);
  p.s = kind == DopplerKind::shift_frequency ? values[i] : std::log(p.gamma);
  return p;
}

double DopplerAxis::column_value(std::size_t i) const {
  return kind == DopplerKind::shift_frequency ? values[i] : gamma(i);
}

std::string to_string(DopplerKind kind) {
  switch (kind) {
    case DopplerKind::dilation_factor: return "dilation_factor";
    case DopplerKind::shift_frequency: return "shift_frequency";
    case DopplerKind::velocity: return "velocity";
  }
  return "?";
}

DopplerKind doppler_kind_from_string(const std::string& name) {
  if (name == "dilation_factor") return DopplerKind::dilation_factor;
  if (name == "shift_frequency") return DopplerKind::shift_frequency;
  if (name == "velocity") return DopplerKind::velocity;
  throw InvalidArgument("unknown doppler axis kind '" + name + "'");
}

std::string to_string(WafDefinition d) {
  switch (d) {
    case WafDefinition::naf: return "naf";
    case WafDefinition::kelly_wishner: return "kelly_wishner";
    case WafDefinition::daubechies_form: return "daubechies_form";
    case WafDefinition::speiser_form: return "speiser_form";
    case WafDefinition::exponential_form: return "exponential_form";
    case WafDefinition::cross_pq: return "cross_pq";
    case WafDefinition::kelly_wishner_narrowband: return "kelly_wishner_narrowband";
  }
  return "?";
}

WafDefinition waf_definition_from_string(const std::string& name) {
  for (auto d : {WafDefinition::naf, WafDefinition::kelly_wishner,
                 WafDefinition::daubechies_form, WafDefinition::speiser_form,
                 WafDefinition::exponential_form, WafDefinition::cross_pq,
                 WafDefinition::kelly_wishner_narrowband}) {
    if (to_string(d) == name) return d;
  }
  throw InvalidArgument("unknown definition '" + name + "'");
}

std::string to_string(CrossMode m) {
  return m == CrossMode::exact ? "exact" : "slow_time";
}

CrossMode cross_mode_from_string(const std::string& name) {
  if (name == "exact") return CrossMode::exact;
  if (name == "slow_time") return CrossMode::slow_time;
  throw InvalidArgument("unknown cross-AF mode '" + name + "'");
}

AmbiguitySurface::Peak AmbiguitySurface::peak() const {
  Peak p;
  const std::size_t nd = delays.size();
  for (std::size_t idx = 0; idx < values.size(); ++idx) {
    const double m = std::abs(values[idx]);
    if (m > p.magnitude) {
      p.magnitude = m;
      p.doppler_index = idx / nd;
      p.delay_index = idx % nd;
    }
  }
  return p;
}

std::vector<double> linspace(double lo, double hi, std::size_t count) {
  if (count == 0) throw InvalidArgument("linspace: count must be >= 1");
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + step * static_cast<double>(i);
  }
  // Make the grid symmetric bit for bit when it is nominally symmetric.
  if (lo == -hi) {
    for (std::size_t i = 0; i < count / 2; ++i) out[count - 1 - i] = -out[i];
    if (count % 2 == 1) out[count / 2] = 0.0;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Cell kernels

cplx correlate_affine(const SampledSignal& a, const SampledSignal& b,
                      double lam, double shift, double nu,
                      const Interpolator& interp) {
  const auto [lo_t, hi_t] = affine_support(b, lam, shift, interp);
  const double fs = a.fs();
  const double lo_f = std::max(0.0, std::ceil((lo_t - a.t0()) * fs));
  const double hi_f =
      std::min(static_cast<double>(a.size()), std::floor((hi_t - a.t0()) * fs) + 1.0);
  if (!(hi_f > lo_f)) return {};
  const auto lo = static_cast<std::size_t>(lo_f);
  const auto hi = static_cast<std::size_t>(hi_f);

  const double amp = 1.0 / std::sqrt(std::abs(lam));
  const std::span<const cplx> bdata(b.samples());
  const auto& as = a.samples();
  const double b_t0 = b.t0();
  const double b_fs = b.fs();
  const cplx sum = pairwise_sum<cplx>(lo, hi, [&](std::size_t i) -> cplx {
    const cplx ai = as[i];
    if (ai == cplx{}) return {};
    const double t = a.time(i);
    const double x = ((t - shift) / lam - b_t0) * b_fs;
    const cplx bi = amp * interp.eval(bdata, x);
    const cplx phase = nu == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, -nu * t);
    return ai * std::conj(bi) * phase;
  });
  return sum / fs;
}

cplx waf_point(const SampledSignal& w, double tau, const DopplerPoint& p,
               WafDefinition def, const Interpolator& interp) {
  if (!(p.gamma > 0.0)) throw InvalidArgument("waf: gamma must be > 0");
  const double g = p.gamma;
  switch (def) {
    case WafDefinition::naf:
      return correlate_affine(w, w, 1.0, tau, p.nu, interp);
    case WafDefinition::kelly_wishner:
      // sqrt(g) w*(g (t - tau)) = conj(w^(1/g, tau)).
      return correlate_affine(w, w, 1.0 / g, tau, p.nu, interp);
    case WafDefinition::daubechies_form:
      return correlate_affine(w, w, g, tau, p.nu, interp);
    case WafDefinition::speiser_form:
      return correlate_affine(w, w, 1.0 / g, tau / g, p.nu, interp);
    case WafDefinition::exponential_form: {
      // w(e^{-s} t - tau) = e^{s/2} w^(e^s, e^s tau)(t).
      const double es = std::exp(p.s);
      return es * correlate_affine(w, w, es, es * tau, p.s, interp);
    }
    default:
      throw InvalidArgument("waf_point: definition " + to_string(def) +
                            " is not a single-signal form");
  }
}

// ---------------------------------------------------------------------------
// Surfaces

AmbiguitySurface waf(const SampledSignal& w, const std::vector<double>& delays,
                     const DopplerAxis& doppler, WafDefinition def,
                     const EvalOptions& opts) {
  if (def == WafDefinition::cross_pq || def == WafDefinition::kelly_wishner_narrowband) {
    throw InvalidArgument("waf: use cross_af / waf_narrowband for " + to_string(def));
  }
  AmbiguitySurface s = blank(delays, doppler, def);
  const Interpolator interp = pick_interp(opts, def);
  std::vector<DopplerPoint> pts(doppler.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = doppler.point(i);
  s.notes.push_back("interpolator: " + interp.describe());
  fill(s, opts.threads, [&](std::size_t i, std::size_t k) {
    return waf_point(w, s.delays[k], pts[i], def, interp);
  });
  return s;
}

AmbiguitySurface naf(const SampledSignal& w, const std::vector<double>& delays,
                     const std::vector<double>& nus, const EvalOptions& opts) {
  return waf(w, delays, DopplerAxis::shift(nus), WafDefinition::naf, opts);
}

AmbiguitySurface waf_narrowband(const SampledSignal& w,
                                const std::vector<double>& delays,
                                const DopplerAxis& doppler, double f0,
                                const EvalOptions& opts) {
  AmbiguitySurface s = blank(delays, doppler, WafDefinition::kelly_wishner_narrowband);
  const Interpolator interp = opts.interp.value_or(Interpolator::standard());
  s.notes.push_back("interpolator: " + interp.describe());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", f0);
  s.notes.push_back(std::string("narrowband carrier f0 = ") + buf + " Hz");
  fill(s, opts.threads, [&](std::size_t i, std::size_t k) {
    const DopplerPoint p = doppler.point(i);
    const double tau = s.delays[k];
    const cplx psi = correlate_affine(w, w, 1.0, tau, p.nu, interp);
    return std::sqrt(p.gamma) * std::polar(1.0, -2.0 * kPi * f0 * (p.gamma - 1.0) * tau) * psi;
  });
  return s;
}

double narrowband_approx_error(const SampledSignal& w, double tau, double gamma,
                               double f0, const Interpolator& interp) {
  if (!(gamma > 0.0)) throw InvalidArgument("narrowband error: gamma must be > 0");
  // Lattice through tau + t0 so that w(t - tau) is read at sample points.
  const double fs = w.fs();
  const double reach = static_cast<double>(interp.half_width()) / fs;
  const double base = tau + w.t0();
  const double ex_lo = tau + (w.t0() - reach) / gamma;
  const double ex_hi = tau + (w.t_last() + reach) / gamma;
  const double lo = std::min(base, ex_lo);
  const double hi = std::max(tau + w.t_last(), ex_hi);
  const auto k_lo = static_cast<long>(std::floor((lo - base) * fs));
  const auto k_hi = static_cast<long>(std::ceil((hi - base) * fs));
  const std::span<const cplx> data(w.samples());
  const auto n = static_cast<std::size_t>(k_hi - k_lo + 1);
  const double num = pairwise_sum<double>(0, n, [&](std::size_t j) {
    const long k = k_lo + static_cast<long>(j);
    const double t = base + static_cast<double>(k) / fs;
    const cplx exact = interp.eval(data, (gamma * (t - tau) - w.t0()) * fs);
    cplx approx{};
    if (k >= 0 && k < static_cast<long>(w.size())) {
      approx = std::polar(1.0, -2.0 * kPi * f0 * (gamma - 1.0) * (t - tau)) *
               w[static_cast<std::size_t>(k)];
    }
    return std::norm(exact - approx);
  });
  return std::sqrt(num / fs) / w.norm();
}

AmbiguitySurface waf_coded_decomposition(const PhaseCode& code,
                                         const ChipPulse& pulse, double fs,
                                         const std::vector<double>& delays,
                                         const DopplerAxis& doppler,
                                         const EvalOptions& opts) {
  AmbiguitySurface s = blank(delays, doppler, WafDefinition::kelly_wishner);
  const Interpolator interp = pick_interp(opts, WafDefinition::kelly_wishner);
  const SampledSignal chip = synth_chip(pulse, fs);
  const auto L = static_cast<long>(code.length());
  const double Tc = pulse.Tc;
  s.notes.push_back("chip-level decomposition");
  s.notes.push_back("interpolator: " + interp.describe());
  fill(s, opts.threads, [&](std::size_t i, std::size_t kd) {
    const DopplerPoint p = doppler.point(i);
    const double tau = s.delays[kd];
    cplx acc{};
    for (long l = 0; l < L; ++l) {
      const double centre = (static_cast<double>(l) + 0.5) * Tc;
      const cplx rot = p.nu == 0.0 ? cplx{1.0, 0.0} : std::polar(1.0, -p.nu * centre);
      for (long k = l - L + 1; k <= l; ++k) {
        const cplx A = code[static_cast<std::size_t>(l)] *
                       std::conj(code[static_cast<std::size_t>(l - k)]) * rot;
        const double shifted =
            tau - Tc * (static_cast<double>(k) +
                        (static_cast<double>(l) + 0.5) * (p.gamma - 1.0)) /
                      p.gamma;
        acc += A * waf_point(chip, shifted, p, WafDefinition::kelly_wishner, interp);
      }
    }
    return acc;
  });
  return s;
}

AmbiguitySurface cross_af(const PulseTrainSpec& spec, double fs,
                          const std::vector<double>& delays,
                          const DopplerAxis& doppler, CrossMode mode,
                          const EvalOptions& opts) {
  spec.validate();
  AmbiguitySurface s = blank(delays, doppler, WafDefinition::cross_pq);
  const Interpolator interp = pick_interp(opts, WafDefinition::cross_pq);
  s.notes.push_back("mode: " + to_string(mode));
  s.notes.push_back("interpolator: " + interp.describe());

  if (mode == CrossMode::exact) {
    s.leading_factor = "1";
    const SampledSignal xp = synth_train(spec, fs, false);
    const SampledSignal xq = synth_train(spec, fs, true);
    fill(s, opts.threads, [&](std::size_t i, std::size_t k) {
      const DopplerPoint p = doppler.point(i);
      return correlate_affine(xp, xq, 1.0 / p.gamma, s.delays[k], p.nu, interp) /
             std::sqrt(p.gamma);
    });
    return s;
  }

  s.leading_factor = "1/sqrt(gamma)";
  double max_nuT = 0.0;
  for (std::size_t i = 0; i < doppler.size(); ++i) {
    max_nuT = std::max(max_nuT, std::abs(doppler.nu(i)) * spec.T);
  }
  // Axes built from nu T pass through gamma; allow rounding at the limit.
  if (max_nuT > 0.1 * (1.0 + 1e-9)) {
    throw InvalidArgument("cross_af slow_time: max |nu| T = " +
                          std::to_string(max_nuT) + " exceeds 0.1");
  }
  if (max_nuT > 0.01) {
    s.notes.push_back("warning: max |nu| T = " + std::to_string(max_nuT) +
                      " > 0.01, slow-time approximation degrades");
  }
  s.notes.push_back("range aliases at +-nT ignored");

  EvalOptions inner = opts;
  inner.interp = interp;
  const bool need_x = std::any_of(spec.p.begin(), spec.p.end(), [](int v) { return v == 1; });
  const bool need_xt = std::any_of(spec.p.begin(), spec.p.end(), [](int v) { return v == 0; });
  AmbiguitySurface cx, cxt;
  if (need_x) {
    cx = waf(synth_coded(spec.code, spec.chip, fs), delays, doppler,
             WafDefinition::kelly_wishner, inner);
  }
  if (need_xt) {
    cxt = waf(synth_coded(spec.companion, spec.chip, fs), delays, doppler,
              WafDefinition::kelly_wishner, inner);
  }
  const std::size_t nd = delays.size();
  s.values.assign(nd * doppler.size(), cplx{});
  for (std::size_t i = 0; i < doppler.size(); ++i) {
    const DopplerPoint p = doppler.point(i);
    cplx a{}, b{};
    for (std::size_t n = 0; n < spec.N; ++n) {
      const cplx rot = std::polar(spec.q_w[n], -p.nu * static_cast<double>(n) * spec.T);
      if (spec.p[n] == 1) a += rot; else b += rot;
    }
    const double inv = 1.0 / std::sqrt(p.gamma);
    for (std::size_t k = 0; k < nd; ++k) {
      cplx v{};
      if (need_x) v += a * cx.at(i, k);
      if (need_xt) v += b * cxt.at(i, k);
      s.values[i * nd + k] = inv * v;
    }
  }
  return s;
}

AmbiguitySurface normalize_peak(AmbiguitySurface surface) {
  const double pk = surface.peak().magnitude;
  if (!(pk > 0.0)) throw NumericalError("normalize_peak: all-zero surface");
  for (auto& v : surface.values) v /= pk;
  surface.scale *= pk;
  surface.normalization = Normalization::peak;
  return surface;
}

}  // namespace affwave
