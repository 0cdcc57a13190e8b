// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "affwave/numeric.hpp"

namespace affwave {

/// Uniformly sampled complex baseband signal. Sample i sits at t0 + i / fs;
/// the signal is taken to be zero outside the sampled range.
class SampledSignal {
 public:
  /// Throws InvalidArgument when samples is empty, fs <= 0 or a value is not
  /// finite.
  SampledSignal(std::vector<cplx> samples, double fs, double t0);

  const std::vector<cplx>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  double fs() const { return fs_; }
  double dt() const { return 1.0 / fs_; }
  double t0() const { return t0_; }
  double time(std::size_t i) const { return t0_ + static_cast<double>(i) / fs_; }
  double t_last() const { return time(samples_.size() - 1); }
  cplx operator[](std::size_t i) const { return samples_[i]; }

  /// Linear interpolation between neighbouring samples, zero outside
  /// [t0, t_last].
  cplx at(double t) const;

  /// (1/fs) * sum |s_i|^2, pairwise summed.
  double energy() const;
  double norm() const;

  SampledSignal scaled(cplx c) const;
  SampledSignal with_t0(double t0) const;

 private:
  std::vector<cplx> samples_;
  double fs_;
  double t0_;
};

/// (1/fs) * sum a_i conj(b_i) over the overlap of two signals that share fs
/// and whose lattices coincide (offset an integer number of samples within
/// 1e-9 of a sample). Throws InvalidArgument otherwise; use
/// affwave::inner_product in affine.hpp for arbitrary offsets.
cplx inner_product_aligned(const SampledSignal& a, const SampledSignal& b);

/// Integer sample offset of b's lattice relative to a's, or throws when the
/// lattices do not coincide.
std::int64_t lattice_offset(const SampledSignal& a, const SampledSignal& b);
bool lattices_aligned(const SampledSignal& a, const SampledSignal& b);

enum class ChipShape { rectangular, gaussian };

/// Unit-energy chip w of duration Tc, centred on t = 0.
struct ChipPulse {
  ChipShape shape = ChipShape::rectangular;
  double Tc = 1.0;
};

std::string to_string(ChipShape shape);
ChipShape chip_shape_from_string(const std::string& name);

/// Number of samples per chip, fs * Tc. Throws InvalidArgument unless it is
/// an integer (relative tolerance 1e-9) and at least 4.
std::size_t samples_per_chip(const ChipPulse& pulse, double fs);

/// Midpoint samples t_i = -Tc/2 + (i + 1/2)/fs. Rectangular: 1/sqrt(Tc).
/// Gaussian: exp(-t^2 / (2 sigma^2)) with sigma = Tc/6, truncated to the chip
/// and renormalised to unit discrete energy.
SampledSignal synth_chip(const ChipPulse& pulse, double fs);

/// Unimodular code x[0..L).
class PhaseCode {
 public:
  /// Throws InvalidArgument when empty or when some ||x| - 1| > 1e-12.
  explicit PhaseCode(std::vector<cplx> values);

  static PhaseCode from_real(const std::vector<double>& values);
  /// Barker code of length 2, 3, 4, 5, 7, 11 or 13.
  static PhaseCode barker(std::size_t length);

  const std::vector<cplx>& values() const { return values_; }
  std::size_t length() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }

  /// Companion code (-1)^n conj(x[L-1-n]).
  PhaseCode companion() const;

  bool operator==(const PhaseCode&) const = default;

 private:
  std::vector<cplx> values_;
};

/// x(t) = sum_l x[l] w(t - (l + 1/2) Tc): the coded pulse starts at t = 0 and
/// the first sample sits at 1/(2 fs).
SampledSignal synth_coded(const PhaseCode& code, const ChipPulse& pulse,
                          double fs);

struct PulseTrainSpec {
  std::size_t N = 1;
  double T = 1.0;
  std::vector<int> p;
  std::vector<double> q_w;
  PhaseCode code{std::vector<cplx>{cplx{1.0, 0.0}}};
  PhaseCode companion{std::vector<cplx>{cplx{1.0, 0.0}}};
  ChipPulse chip;

  /// Pulse train with the default companion code.
  static PulseTrainSpec make(std::vector<int> p, std::vector<double> q_w,
                             double T, PhaseCode code, ChipPulse chip);

  /// p, q_w of length N, p in {0,1}, q_w >= 0, T >= L Tc, codes of equal
  /// length. Throws InvalidArgument.
  void validate() const;
  double pulse_duration() const {
    return static_cast<double>(code.length()) * chip.Tc;
  }
};

/// use_q = false: x_P(t) = sum_n p_n x(t - nT) + (1 - p_n) x~(t - nT).
/// use_q = true:  x_Q(t) = sum_n q_n [p_n x(t - nT) + (1 - p_n) x~(t - nT)].
/// Requires T * fs to be an integer (relative tolerance 1e-9).
SampledSignal synth_train(const PulseTrainSpec& spec, double fs, bool use_q);

/// CSV with header `t,re,im`, 17 significant digits.
void write_signal_csv(std::ostream& os, const SampledSignal& sig);

}  // namespace affwave
