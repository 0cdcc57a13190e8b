// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "affwave/affine.hpp"
#include "affwave/error.hpp"
#include "oracles.hpp"

using namespace affwave;

namespace {

SampledSignal gaussian_signal(double fs, double half_width = 12.0, double sigma = 1.0) {
  const auto K = static_cast<long>(std::ceil(half_width * fs));
  std::vector<cplx> s;
  for (long k = -K; k <= K; ++k) s.emplace_back(oracle::gaussian(static_cast<double>(k) / fs, sigma));
  return SampledSignal(std::move(s), fs, -static_cast<double>(K) / fs);
}

// Asymmetric smooth test function: t e^{-t^2/2} + 0.3 e^{-(t-1)^2}.
double skew(double t) { return t * std::exp(-t * t / 2.0) + 0.3 * std::exp(-(t - 1.0) * (t - 1.0)); }

SampledSignal skew_signal(double fs) {
  const auto K = static_cast<long>(std::ceil(12.0 * fs));
  std::vector<cplx> s;
  for (long k = -K; k <= K; ++k) s.emplace_back(skew(static_cast<double>(k) / fs));
  return SampledSignal(std::move(s), fs, -static_cast<double>(K) / fs);
}

// Max |a - b| over the union of two signals on a common lattice.
double max_diff(const SampledSignal& a, const SampledSignal& b) {
  const auto off = lattice_offset(a, b);
  const long lo = std::min<long>(0, off);
  const long hi = std::max<long>(static_cast<long>(a.size()), off + static_cast<long>(b.size()));
  double m = 0.0;
  for (long i = lo; i < hi; ++i) {
    const cplx va = (i >= 0 && i < static_cast<long>(a.size())) ? a[static_cast<std::size_t>(i)] : cplx{};
    const long j = i - off;
    const cplx vb = (j >= 0 && j < static_cast<long>(b.size())) ? b[static_cast<std::size_t>(j)] : cplx{};
    m = std::max(m, std::abs(va - vb));
  }
  return m;
}

double rms_vs(const SampledSignal& s, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) acc += std::norm(s[i] - f(s.time(i)));
  return std::sqrt(acc / static_cast<double>(s.size()));
}

}  // namespace

TEST(Group, ProductExamples) {
  const AffineElement e = AffineElement::identity();
  EXPECT_EQ(compose(e, AffineElement(3.0, -2.0)), AffineElement(3.0, -2.0));
  EXPECT_EQ(compose(AffineElement(2, 3), AffineElement(4, 5)), AffineElement(8, 13));
  const AffineElement g(2.5, 7.0);
  EXPECT_TRUE(approx_equal(compose(g, AffineElement(1 / 2.5, -7.0 / 2.5)), e, 1e-15));
}

TEST(Group, InverseExamples) {
  EXPECT_EQ(inverse(AffineElement(1, 0)), AffineElement(1, 0));
  EXPECT_EQ(inverse(AffineElement(2, 6)), AffineElement(0.5, -3));
  EXPECT_EQ(inverse(AffineElement(-1, 0)), AffineElement(-1, 0));
}

TEST(Group, NonCommutativityWitness) {
  EXPECT_EQ(compose(AffineElement(2, 1), AffineElement(3, 4)), AffineElement(6, 9));
  EXPECT_EQ(compose(AffineElement(3, 4), AffineElement(2, 1)), AffineElement(6, 7));
}

TEST(Group, RejectsZeroDilation) {
  EXPECT_THROW(AffineElement(0.0, 1.0), InvalidArgument);
  EXPECT_THROW(AffineElement(1.0, INFINITY), InvalidArgument);
}

TEST(Group, AxiomsOnRandomTriples) {
  PortableRng rng(2026);
  auto pick = [&] {
    const double mag = 0.5 * std::pow(4.0, rng.uniform());
    return AffineElement(rng.uniform() < 0.5 ? -mag : mag, 20.0 * rng.uniform() - 10.0);
  };
  for (int i = 0; i < 1000; ++i) {
    const AffineElement g = pick(), h = pick(), k = pick();
    EXPECT_TRUE(approx_equal(compose(compose(g, h), k), compose(g, compose(h, k)), 1e-12));
    EXPECT_TRUE(approx_equal(compose(g, inverse(g)), AffineElement::identity(), 1e-12));
    EXPECT_TRUE(approx_equal(compose(inverse(g), g), AffineElement::identity(), 1e-12));
    EXPECT_EQ(compose(AffineElement::identity(), g), g);
    EXPECT_EQ(compose(g, AffineElement::identity()), g);
  }
}

TEST(Group, ApplyMatchesAction) {
  const AffineElement g(2.0, 3.0), h(-0.5, 1.0);
  EXPECT_DOUBLE_EQ(compose(g, h).apply(1.5), g.apply(h.apply(1.5)));
}

TEST(Translate, ExactShift) {
  const SampledSignal f = gaussian_signal(16.0);
  EXPECT_EQ(translate(f, 0.0).t0(), f.t0());
  EXPECT_EQ(translate(f, 0.0).samples(), f.samples());
  const SampledSignal a = translate(translate(f, 0.3), 1.1);
  EXPECT_NEAR(a.t0(), translate(f, 1.4).t0(), 1e-15);
  EXPECT_EQ(a.samples(), f.samples());
  EXPECT_EQ(translate(f, 0.77).energy(), f.energy());
}

TEST(Dilate, IdentityBypassesInterpolation) {
  const SampledSignal f = skew_signal(8.0);
  const SampledSignal d = dilate(f, 1.0);
  EXPECT_EQ(d.samples(), f.samples());
  EXPECT_EQ(d.t0(), f.t0());
  EXPECT_THROW(dilate(f, 0.0), InvalidArgument);
}

TEST(Dilate, GaussianClosedForm) {
  const SampledSignal f = gaussian_signal(64.0);
  const SampledSignal d = dilate(f, 4.0);
  EXPECT_LE(rms_vs(d, [](double t) { return 0.5 * oracle::gaussian(t / 4.0); }), 1e-6);
  const SampledSignal s = dilate(f, 0.5);
  EXPECT_LE(rms_vs(s, [](double t) { return std::sqrt(2.0) * oracle::gaussian(2.0 * t); }), 1e-6);
}

TEST(Dilate, NegativeFactorReversesTime) {
  const SampledSignal f = skew_signal(32.0);
  const SampledSignal d = dilate(f, -2.0);
  EXPECT_LE(rms_vs(d, [](double t) { return skew(-t / 2.0) / std::sqrt(2.0); }), 1e-6);
}

TEST(Dilate, Unitarity) {
  const SampledSignal f = gaussian_signal(16.0);
  for (double lam : {0.5, 0.8, 1.3, 2.0, 3.7}) {
    EXPECT_NEAR(dilate(f, lam).norm() / f.norm(), 1.0, 1e-6) << lam;
    EXPECT_NEAR(dilate(f, lam, Interpolator::linear()).norm() / f.norm(), 1.0, 1e-3) << lam;
  }
}

TEST(Dilate, RepresentationLaw) {
  // D_b D_a f and D_(ab) f sit on different lattices; both are checked
  // against the closed form of f(t / (ab)) / sqrt(ab).
  const SampledSignal f = skew_signal(16.0);
  for (auto [a, b] : {std::pair{2.0, 0.75}, std::pair{0.6, 1.9}, std::pair{1.25, 1.25}}) {
    const double ab = a * b;
    auto want = [ab](double t) { return skew(t / ab) / std::sqrt(ab); };
    EXPECT_LE(rms_vs(dilate(dilate(f, a), b), want), 2e-6) << a << " " << b;
    EXPECT_LE(rms_vs(dilate(f, ab), want), 2e-6) << a << " " << b;
  }
}

TEST(Dilate, GroupHomomorphism) {
  const SampledSignal f = skew_signal(16.0);
  const AffineElement g(1.5, 0.5), h(0.8, -1.0);
  const AffineElement gh = compose(g, h);
  auto want = [&](double t) { return skew((t - gh.b()) / gh.a()) / std::sqrt(gh.a()); };
  EXPECT_LE(rms_vs(represent(g, represent(h, f)), want), 2e-6);
  EXPECT_LE(rms_vs(represent(gh, f), want), 2e-6);
}

TEST(DilateTranslate, MatchesComposition) {
  const SampledSignal f = skew_signal(16.0);
  const SampledSignal a = dilate_translate(f, 1.7, 0.45);
  const SampledSignal b = translate(dilate(f, 1.7), 0.45);
  EXPECT_EQ(a.samples(), b.samples());
  EXPECT_EQ(a.t0(), b.t0());
  // Independent path: sample h^(lam, s) directly on the same lattice.
  std::vector<cplx> direct(a.size());
  sample_affine(f, 1.7, 0.45, a.t0(), a.fs(), direct, Interpolator::standard());
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - direct[i]));
  EXPECT_LE(m, 1e-9);
  EXPECT_EQ(dilate_translate(f, 1.0, 0.0).samples(), f.samples());
}

TEST(DilateTranslate, RepresentMatchesGroupElement) {
  const SampledSignal f = skew_signal(16.0);
  const AffineElement g(1.5, -0.25);
  const SampledSignal r = represent(g, f);
  EXPECT_LE(rms_vs(r, [&](double t) { return skew((t - g.b()) / g.a()) / std::sqrt(g.a()); }), 1e-6);
}

TEST(DilateTranslate, TranslationDilationCommutation) {
  // T_s D_lam = D_lam T_(s/lam).
  const SampledSignal f = skew_signal(16.0);
  for (auto [lam, s] : {std::pair{2.0, 0.7}, std::pair{0.5, -1.3}, std::pair{3.0, 2.25}}) {
    const SampledSignal lhs = translate(dilate(f, lam), s);
    const SampledSignal rhs = dilate(translate(f, s / lam), lam);
    EXPECT_LE(max_diff(lhs, rhs), 1e-9) << lam << " " << s;
  }
}

TEST(InnerProduct, ResampledPathMatchesClosedForm) {
  const SampledSignal g = gaussian_signal(32.0);
  for (double s : {0.0, 1.0 / 64.0, 0.3, 1.7}) {
    const cplx ip = inner_product(g, translate(g, s));
    EXPECT_NEAR(ip.real(), std::exp(-s * s / 4.0), 1e-7) << s;
    EXPECT_NEAR(ip.imag(), 0.0, 1e-12);
  }
}

TEST(Support, ContainsAllNonzeroSamples) {
  const SampledSignal f({1.0, 2.0, 1.0}, 4.0, 0.5);
  for (const Interpolator& ip : {Interpolator::linear(), Interpolator::cubic(), Interpolator::standard()}) {
    const auto [lo, hi] = affine_support(f, 2.0, 1.0, ip);
    EXPECT_LE(lo, 2.0 * f.t0() + 1.0);
    EXPECT_GE(hi, 2.0 * f.t_last() + 1.0);
    std::vector<cplx> out(4);
    sample_affine(f, 2.0, 1.0, hi + 0.25, 4.0, out, ip);
    for (const cplx& v : out) EXPECT_EQ(v, cplx{});
    sample_affine(f, 2.0, 1.0, lo - 1.25, 4.0, out, ip);
    for (const cplx& v : out) EXPECT_EQ(v, cplx{});
  }
}
