// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "affwave/numeric.hpp"

namespace affwave {

enum class InterpMethod { linear, cubic, windowed_sinc };

/// Reconstructs values between samples of a zero-extended sequence.
///
/// windowed_sinc is a Kaiser-windowed sinc whose weights are multiplied by a
/// per-position quadratic so that they reproduce constants, lines and
/// parabolas exactly; without that correction a 32-tap kernel leaks about
/// 1e-5 of the energy of a smooth pulse.
class Interpolator {
 public:
  static Interpolator linear();
  /// Keys cubic convolution, a = -1/2.
  static Interpolator cubic();
  /// taps even and >= 8.
  static Interpolator windowed_sinc(int taps = 32, double beta = 8.0);
  /// windowed_sinc(32, 8).
  static Interpolator standard() { return windowed_sinc(); }

  InterpMethod method() const { return method_; }
  int taps() const { return taps_; }
  double beta() const { return beta_; }
  /// Samples on each side of the evaluation point that can contribute.
  int half_width() const;
  std::string describe() const;

  /// Value at fractional index x (x = 0 is data[0]); zero far outside.
  /// Positions within 1e-9 of an integer return that sample exactly.
  cplx eval(std::span<const cplx> data, double x) const;

  bool operator==(const Interpolator& o) const {
    return method_ == o.method_ && taps_ == o.taps_ && beta_ == o.beta_;
  }

 private:
  Interpolator(InterpMethod method, int taps, double beta);

  cplx eval_sinc(std::span<const cplx> data, long i0, double frac) const;
  double kaiser(double u) const;

  InterpMethod method_;
  int taps_;
  double beta_;
  // Kaiser window sampled on u^2 in [0, 1]; shared, read-only.
  std::shared_ptr<const std::vector<double>> table_;
};

std::string to_string(InterpMethod m);
InterpMethod interp_method_from_string(const std::string& name);

}  // namespace affwave
