// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <span>
#include <utility>

#include "affwave/interpolate.hpp"
#include "affwave/signal.hpp"

namespace affwave {

/// Element (a, b) of the affine group, a != 0. Acts on the line as
/// t -> a t + b.
class AffineElement {
 public:
  /// Throws InvalidArgument for a == 0 or non-finite entries.
  AffineElement(double a, double b);

  static AffineElement identity() { return {1.0, 0.0}; }

  double a() const { return a_; }
  double b() const { return b_; }
  double apply(double t) const { return a_ * t + b_; }

  bool operator==(const AffineElement&) const = default;

 private:
  double a_;
  double b_;
};

/// (a, b) o (a', b') = (a a', b + a b').
AffineElement compose(const AffineElement& g, const AffineElement& h);
/// (1/a, -b/a).
AffineElement inverse(const AffineElement& g);
bool approx_equal(const AffineElement& g, const AffineElement& h,
                  double tol = 1e-12);

/// (T_s f)(t) = f(t - s): moves the time origin, samples untouched.
SampledSignal translate(const SampledSignal& sig, double s);

/// (D_lam f)(t) = |lam|^(-1/2) f(t / lam), sampled at the input rate on a
/// lattice through lam * t0, covering the dilated support plus the
/// interpolator's reach. lam == 1 returns the input unchanged.
SampledSignal dilate(const SampledSignal& sig, double lam,
                     const Interpolator& interp = Interpolator::standard());

/// h^(lam, s)(t) = |lam|^(-1/2) h((t - s) / lam) = (T_s D_lam h)(t).
SampledSignal dilate_translate(const SampledSignal& sig, double lam, double s,
                               const Interpolator& interp = Interpolator::standard());

/// U_(a,b) f = f^(a, b). U_g U_h = U_(g o h).
SampledSignal represent(const AffineElement& g, const SampledSignal& sig,
                        const Interpolator& interp = Interpolator::standard());

/// out[i] = |lam|^(-1/2) f((start + i/fs - shift) / lam).
void sample_affine(const SampledSignal& f, double lam, double shift,
                   double start, double fs, std::span<cplx> out,
                   const Interpolator& interp);

/// Time interval outside which f^(lam, shift) vanishes, interpolator reach
/// included.
std::pair<double, double> affine_support(const SampledSignal& f, double lam,
                                         double shift,
                                         const Interpolator& interp);

/// Integral of a(t) conj(b(t)) on a's lattice. Aligned lattices are summed
/// directly; otherwise b is resampled once onto a's lattice.
cplx inner_product(const SampledSignal& a, const SampledSignal& b,
                   const Interpolator& interp = Interpolator::standard());

}  // namespace affwave
