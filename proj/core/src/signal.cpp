// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/signal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "affwave/error.hpp"

namespace affwave {

namespace {

constexpr double kLatticeTol = 1e-9;

// round(x) when x is an integer to relative tolerance 1e-9, else -1.
std::int64_t integral_or_negative(double x) {
  const double r = std::round(x);
  if (r < 0 || std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) return -1;
  return static_cast<std::int64_t>(r);
}

}  // namespace

SampledSignal::SampledSignal(std::vector<cplx> samples, double fs, double t0)
    : samples_(std::move(samples)), fs_(fs), t0_(t0) {
  if (samples_.empty()) throw InvalidArgument("SampledSignal: no samples");
  if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
    throw InvalidArgument("SampledSignal: fs must be positive and finite");
  }
  if (!std::isfinite(t0_)) throw InvalidArgument("SampledSignal: t0 not finite");
  for (const auto& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw InvalidArgument("SampledSignal: non-finite sample");
    }
  }
}

cplx SampledSignal::at(double t) const {
  const double x = (t - t0_) * fs_;
  if (x < -kLatticeTol || x > static_cast<double>(size() - 1) + kLatticeTol) {
    return {};
  }
  const double fl = std::floor(x);
  auto i = static_cast<std::int64_t>(fl);
  const double frac = x - fl;
  if (i < 0) return samples_[0];
  const auto last = static_cast<std::int64_t>(size() - 1);
  if (i >= last) return samples_[static_cast<std::size_t>(last)];
  const auto u = static_cast<std::size_t>(i);
  return samples_[u] * (1.0 - frac) + samples_[u + 1] * frac;
}

double SampledSignal::energy() const {
  return pairwise_sum<double>(0, size(), [&](std::size_t i) {
           return std::norm(samples_[i]);
         }) /
         fs_;
}

double SampledSignal::norm() const { return std::sqrt(energy()); }

SampledSignal SampledSignal::scaled(cplx c) const {
  std::vector<cplx> out(samples_);
  for (auto& s : out) s *= c;
  return SampledSignal(std::move(out), fs_, t0_);
}

SampledSignal SampledSignal::with_t0(double t0) const {
  return SampledSignal(samples_, fs_, t0);
}

bool lattices_aligned(const SampledSignal& a, const SampledSignal& b) {
  if (std::abs(a.fs() - b.fs()) > 1e-12 * a.fs()) return false;
  const double off = (b.t0() - a.t0()) * a.fs();
  return std::abs(off - std::round(off)) <= kLatticeTol;
}

std::int64_t lattice_offset(const SampledSignal& a, const SampledSignal& b) {
  if (!lattices_aligned(a, b)) {
    throw InvalidArgument("inner product: sample lattices do not coincide");
  }
  return static_cast<std::int64_t>(std::llround((b.t0() - a.t0()) * a.fs()));
}

cplx inner_product_aligned(const SampledSignal& a, const SampledSignal& b) {
  const std::int64_t off = lattice_offset(a, b);
  // a index i pairs with b index i - off.
  const std::int64_t lo = std::max<std::int64_t>(0, off);
  const std::int64_t hi = std::min<std::int64_t>(
      static_cast<std::int64_t>(a.size()),
      off + static_cast<std::int64_t>(b.size()));
  if (hi <= lo) return {};
  const auto& as = a.samples();
  const auto& bs = b.samples();
  const cplx sum = pairwise_sum<cplx>(
      static_cast<std::size_t>(lo), static_cast<std::size_t>(hi),
      [&](std::size_t i) {
        return as[i] * std::conj(bs[i - static_cast<std::size_t>(off)]);
      });
  return sum / a.fs();
}

std::string to_string(ChipShape shape) {
  return shape == ChipShape::rectangular ? "rectangular" : "gaussian";
}

ChipShape chip_shape_from_string(const std::string& name) {
  if (name == "rectangular") return ChipShape::rectangular;
  if (name == "gaussian") return ChipShape::gaussian;
  throw InvalidArgument("unknown chip shape '" + name + "'");
}

std::size_t samples_per_chip(const ChipPulse& pulse, double fs) {
  if (!(pulse.Tc > 0.0) || !std::isfinite(pulse.Tc)) {
    throw InvalidArgument("chip: Tc must be positive");
  }
  if (!(fs > 0.0)) throw InvalidArgument("chip: fs must be positive");
  const std::int64_t m = integral_or_negative(fs * pulse.Tc);
  if (m < 0) throw InvalidArgument("chip: fs * Tc must be an integer");
  if (m < 4) {
    throw InvalidArgument("chip: undersampled, fs * Tc = " +
                          std::to_string(m) + " < 4");
  }
  return static_cast<std::size_t>(m);
}

SampledSignal synth_chip(const ChipPulse& pulse, double fs) {
  const std::size_t m = samples_per_chip(pulse, fs);
  std::vector<cplx> s(m);
  const double t_first = -pulse.Tc / 2.0 + 0.5 / fs;
  if (pulse.shape == ChipShape::rectangular) {
    std::fill(s.begin(), s.end(), cplx{1.0 / std::sqrt(pulse.Tc), 0.0});
  } else {
    const double sigma = pulse.Tc / 6.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double t = t_first + static_cast<double>(i) / fs;
      s[i] = std::exp(-t * t / (2.0 * sigma * sigma));
    }
    const double e = pairwise_sum<double>(0, m, [&](std::size_t i) {
                       return std::norm(s[i]);
                     }) /
                     fs;
    const double scale = 1.0 / std::sqrt(e);
    for (auto& v : s) v *= scale;
  }
  return SampledSignal(std::move(s), fs, t_first);
}

PhaseCode::PhaseCode(std::vector<cplx> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("PhaseCode: empty code");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!(std::abs(std::abs(values_[i]) - 1.0) <= 1e-12)) {
      throw InvalidArgument("PhaseCode: entry " + std::to_string(i) +
                            " is not unimodular");
    }
  }
}

PhaseCode PhaseCode::from_real(const std::vector<double>& values) {
  std::vector<cplx> v(values.begin(), values.end());
  return PhaseCode(std::move(v));
}

PhaseCode PhaseCode::barker(std::size_t length) {
  switch (length) {
    case 2: return from_real({1, -1});
    case 3: return from_real({1, 1, -1});
    case 4: return from_real({1, 1, -1, 1});
    case 5: return from_real({1, 1, 1, -1, 1});
    case 7: return from_real({1, 1, 1, -1, -1, 1, -1});
    case 11: return from_real({1, 1, 1, -1, -1, -1, 1, -1, -1, 1, -1});
    case 13: return from_real({1, 1, 1, 1, 1, -1, -1, 1, 1, -1, 1, -1, 1});
    default:
      throw InvalidArgument("no Barker code of length " + std::to_string(length));
  }
}

PhaseCode PhaseCode::companion() const {
  const std::size_t L = values_.size();
  std::vector<cplx> out(L);
  for (std::size_t n = 0; n < L; ++n) {
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    out[n] = sign * std::conj(values_[L - 1 - n]);
  }
  return PhaseCode(std::move(out));
}

SampledSignal synth_coded(const PhaseCode& code, const ChipPulse& pulse,
                          double fs) {
  const SampledSignal chip = synth_chip(pulse, fs);
  const std::size_t m = chip.size();
  const std::size_t L = code.length();
  std::vector<cplx> s(L * m);
  for (std::size_t l = 0; l < L; ++l) {
    for (std::size_t i = 0; i < m; ++i) s[l * m + i] = code[l] * chip[i];
  }
  return SampledSignal(std::move(s), fs, 0.5 / fs);
}

PulseTrainSpec PulseTrainSpec::make(std::vector<int> p, std::vector<double> q_w,
                                    double T, PhaseCode code, ChipPulse chip) {
  PulseTrainSpec spec;
  spec.N = p.size();
  spec.T = T;
  spec.p = std::move(p);
  spec.q_w = std::move(q_w);
  spec.companion = code.companion();
  spec.code = std::move(code);
  spec.chip = chip;
  spec.validate();
  return spec;
}

void PulseTrainSpec::validate() const {
  if (N == 0) throw InvalidArgument("pulse train: N must be >= 1");
  if (p.size() != N || q_w.size() != N) {
    throw InvalidArgument("pulse train: p and q must have N entries");
  }
  for (std::size_t n = 0; n < N; ++n) {
    if (p[n] != 0 && p[n] != 1) {
      throw InvalidArgument("pulse train: p[" + std::to_string(n) +
                            "] must be 0 or 1");
    }
    if (!(q_w[n] >= 0.0) || !std::isfinite(q_w[n])) {
      throw InvalidArgument("pulse train: q[" + std::to_string(n) +
                            "] must be finite and >= 0");
    }
  }
  if (!(chip.Tc > 0.0)) throw InvalidArgument("pulse train: Tc must be > 0");
  if (code.length() != companion.length()) {
    throw InvalidArgument("pulse train: code and companion lengths differ");
  }
  if (!(T > 0.0) || T < pulse_duration() * (1.0 - 1e-12)) {
    throw InvalidArgument("pulse train: T must be >= L * Tc (pulses overlap)");
  }
}

SampledSignal synth_train(const PulseTrainSpec& spec, double fs, bool use_q) {
  spec.validate();
  const std::int64_t per = integral_or_negative(spec.T * fs);
  if (per <= 0) throw InvalidArgument("pulse train: T * fs must be an integer");
  const SampledSignal x = synth_coded(spec.code, spec.chip, fs);
  const SampledSignal xt = synth_coded(spec.companion, spec.chip, fs);
  const auto stride = static_cast<std::size_t>(per);
  const std::size_t total = (spec.N - 1) * stride + x.size();
  std::vector<cplx> s(total);
  for (std::size_t n = 0; n < spec.N; ++n) {
    const double weight = use_q ? spec.q_w[n] : 1.0;
    const SampledSignal& src = spec.p[n] == 1 ? x : xt;
    for (std::size_t i = 0; i < src.size(); ++i) {
      s[n * stride + i] = weight * src[i];
    }
  }
  return SampledSignal(std::move(s), fs, x.t0());
}

void write_signal_csv(std::ostream& os, const SampledSignal& sig) {
  os << "t,re,im\n";
  char buf[96];
  for (std::size_t i = 0; i < sig.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g\n", sig.time(i),
                  sig[i].real(), sig[i].imag());
    os << buf;
  }
}

}  // namespace affwave
