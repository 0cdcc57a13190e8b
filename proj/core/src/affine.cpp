// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/affine.hpp"

#include <algorithm>
#include <cmath>

#include "affwave/error.hpp"

namespace affwave {

AffineElement::AffineElement(double a, double b) : a_(a), b_(b) {
  if (a_ == 0.0) throw InvalidArgument("AffineElement: a must be nonzero");
  if (!std::isfinite(a_) || !std::isfinite(b_)) {
    throw InvalidArgument("AffineElement: entries must be finite");
  }
}

AffineElement compose(const AffineElement& g, const AffineElement& h) {
  return {g.a() * h.a(), g.b() + g.a() * h.b()};
}

AffineElement inverse(const AffineElement& g) {
  return {1.0 / g.a(), -g.b() / g.a()};
}

bool approx_equal(const AffineElement& g, const AffineElement& h, double tol) {
  auto close = [tol](double x, double y) {
    return std::abs(x - y) <= tol * std::max(1.0, std::max(std::abs(x), std::abs(y)));
  };
  return close(g.a(), h.a()) && close(g.b(), h.b());
}

SampledSignal translate(const SampledSignal& sig, double s) {
  return sig.with_t0(sig.t0() + s);
}

void sample_affine(const SampledSignal& f, double lam, double shift,
                   double start, double fs, std::span<cplx> out,
                   const Interpolator& interp) {
  if (lam == 0.0) throw InvalidArgument("dilation factor must be nonzero");
  const double amp = 1.0 / std::sqrt(std::abs(lam));
  const std::span<const cplx> data(f.samples());
  const double f_t0 = f.t0();
  const double f_fs = f.fs();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double t = start + static_cast<double>(i) / fs;
    const double x = ((t - shift) / lam - f_t0) * f_fs;
    out[i] = amp * interp.eval(data, x);
  }
}

std::pair<double, double> affine_support(const SampledSignal& f, double lam,
                                         double shift,
                                         const Interpolator& interp) {
  const double reach = static_cast<double>(interp.half_width()) / f.fs();
  const double u0 = f.t0() - reach;
  const double u1 = f.t_last() + reach;
  const double a = lam * u0 + shift;
  const double b = lam * u1 + shift;
  return {std::min(a, b), std::max(a, b)};
}

SampledSignal dilate(const SampledSignal& sig, double lam,
                     const Interpolator& interp) {
  if (lam == 0.0 || !std::isfinite(lam)) {
    throw InvalidArgument("dilate: factor must be nonzero and finite");
  }
  if (lam == 1.0) return sig;
  // Output lattice t = lam * t0 + k / fs; k spans the dilated support.
  const double hw = static_cast<double>(interp.half_width());
  const double n1 = static_cast<double>(sig.size() - 1);
  const double e0 = lam * (-hw);
  const double e1 = lam * (n1 + hw);
  const auto k_lo = static_cast<long>(std::ceil(std::min(e0, e1) - 1e-9));
  const auto k_hi = static_cast<long>(std::floor(std::max(e0, e1) + 1e-9));
  const double start = lam * sig.t0() + static_cast<double>(k_lo) / sig.fs();
  std::vector<cplx> out(static_cast<std::size_t>(k_hi - k_lo + 1));
  sample_affine(sig, lam, 0.0, start, sig.fs(), out, interp);
  return SampledSignal(std::move(out), sig.fs(), start);
}

SampledSignal dilate_translate(const SampledSignal& sig, double lam, double s,
                               const Interpolator& interp) {
  return translate(dilate(sig, lam, interp), s);
}

SampledSignal represent(const AffineElement& g, const SampledSignal& sig,
                        const Interpolator& interp) {
  return dilate_translate(sig, g.a(), g.b(), interp);
}

cplx inner_product(const SampledSignal& a, const SampledSignal& b,
                   const Interpolator& interp) {
  if (lattices_aligned(a, b)) return inner_product_aligned(a, b);
  const auto [lo_t, hi_t] = affine_support(b, 1.0, 0.0, interp);
  const double fs = a.fs();
  const auto lo = static_cast<long>(
      std::max(0.0, std::ceil((lo_t - a.t0()) * fs)));
  const auto hi = static_cast<long>(std::min(
      static_cast<double>(a.size()), std::floor((hi_t - a.t0()) * fs) + 1.0));
  if (hi <= lo) return {};
  std::vector<cplx> rb(static_cast<std::size_t>(hi - lo));
  sample_affine(b, 1.0, 0.0, a.time(static_cast<std::size_t>(lo)), fs, rb, interp);
  const auto& as = a.samples();
  const cplx sum = pairwise_sum<cplx>(0, rb.size(), [&](std::size_t i) {
    return as[static_cast<std::size_t>(lo) + i] * std::conj(rb[i]);
  });
  return sum / fs;
}

}  // namespace affwave
