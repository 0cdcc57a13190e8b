// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "affwave/error.hpp"
#include "affwave/signal.hpp"
#include "oracles.hpp"

using namespace affwave;

namespace {

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  EXPECT_EQ(a.size(), b.size());
  double m = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

PhaseCode random_phase_code(std::size_t L, std::uint64_t seed) {
  PortableRng rng(seed);
  std::vector<cplx> v(L);
  for (auto& x : v) x = std::polar(1.0, 2.0 * kPi * rng.uniform());
  return PhaseCode(v);
}

}  // namespace

TEST(SampledSignal, Validation) {
  EXPECT_THROW(SampledSignal({}, 1.0, 0.0), InvalidArgument);
  EXPECT_THROW(SampledSignal({1.0}, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(SampledSignal({cplx(NAN, 0)}, 1.0, 0.0), InvalidArgument);
  const SampledSignal s({1.0, 2.0, 3.0}, 2.0, 1.0);
  EXPECT_EQ(s.time(2), 2.0);
  EXPECT_EQ(s.at(1.25), cplx(1.5, 0.0));
  EXPECT_EQ(s.at(0.5), cplx{});
  EXPECT_NEAR(s.energy(), 14.0 / 2.0, 1e-15);
}

TEST(SampledSignal, AlignedInnerProduct) {
  const SampledSignal a({1.0, 2.0, 3.0}, 1.0, 0.0);
  const SampledSignal b({cplx(0, 1), 1.0}, 1.0, 1.0);
  EXPECT_EQ(inner_product_aligned(a, b), cplx(3.0, -2.0));
  EXPECT_EQ(lattice_offset(a, b), 1);
  EXPECT_FALSE(lattices_aligned(a, SampledSignal({1.0}, 1.0, 0.5)));
  EXPECT_THROW(inner_product_aligned(a, SampledSignal({1.0}, 1.0, 0.5)), InvalidArgument);
}

TEST(Chip, RectangularAmplitudes) {
  const SampledSignal c = synth_chip({ChipShape::rectangular, 1.0}, 16.0);
  ASSERT_EQ(c.size(), 16u);
  for (const cplx& v : c.samples()) EXPECT_EQ(v, cplx(1.0, 0.0));
  EXPECT_NEAR(c.energy(), 1.0, 1e-15);
  const SampledSignal d = synth_chip({ChipShape::rectangular, 0.25}, 64.0);
  for (const cplx& v : d.samples()) EXPECT_NEAR(v.real(), 2.0, 1e-15);
}

TEST(Chip, SupportAndEnergy) {
  for (ChipShape shape : {ChipShape::rectangular, ChipShape::gaussian}) {
    const SampledSignal c = synth_chip({shape, 1.0}, 64.0);
    EXPECT_NEAR(c.energy(), 1.0, 1e-9);
    EXPECT_GE(c.t0(), -0.5);
    EXPECT_LE(c.t_last(), 0.5);
  }
}

TEST(Chip, RejectsUndersampling) {
  EXPECT_THROW(synth_chip({ChipShape::rectangular, 1.0}, 3.0), InvalidArgument);
  EXPECT_THROW(synth_chip({ChipShape::rectangular, 1.0}, 16.5), InvalidArgument);
  EXPECT_THROW(samples_per_chip({ChipShape::rectangular, -1.0}, 16.0), InvalidArgument);
  EXPECT_EQ(samples_per_chip({ChipShape::rectangular, 1e-6}, 16e6), 16u);
}

TEST(Chip, ShapeNames) {
  EXPECT_EQ(chip_shape_from_string(to_string(ChipShape::gaussian)), ChipShape::gaussian);
  EXPECT_THROW(chip_shape_from_string("sinc"), InvalidArgument);
}

TEST(Code, Construction) {
  EXPECT_THROW(PhaseCode({}), InvalidArgument);
  EXPECT_THROW(PhaseCode({cplx(1.1, 0.0)}), InvalidArgument);
  EXPECT_THROW(PhaseCode::barker(6), InvalidArgument);
  EXPECT_EQ(PhaseCode::barker(13).length(), 13u);
  // Barker property: aperiodic sidelobes of magnitude <= 1.
  for (std::size_t L : {2, 3, 4, 5, 7, 11, 13}) {
    const PhaseCode code = PhaseCode::barker(L);
    const auto& v = code.values();
    for (long k = 1; k < static_cast<long>(L); ++k) EXPECT_LE(std::abs(oracle::code_autocorr(v, k)), 1.0 + 1e-12);
  }
}

TEST(Code, Companion) {
  const PhaseCode x = PhaseCode({cplx(1, 0), cplx(0, 1), cplx(-1, 0)});
  const PhaseCode c = x.companion();
  const std::size_t L = x.length();
  for (std::size_t n = 0; n < L; ++n) {
    const double sign = n % 2 == 0 ? 1.0 : -1.0;
    EXPECT_EQ(c[n], sign * std::conj(x[L - 1 - n]));
  }
}

TEST(Coded, SingleTermEqualsChip) {
  for (ChipShape shape : {ChipShape::rectangular, ChipShape::gaussian}) {
    const ChipPulse p{shape, 1.0};
    const SampledSignal chip = synth_chip(p, 32.0);
    const SampledSignal x = synth_coded(PhaseCode::from_real({1.0}), p, 32.0);
    EXPECT_EQ(x.samples(), chip.samples());
    EXPECT_NEAR(x.t0(), chip.t0() + 0.5, 1e-15);
  }
}

TEST(Coded, BarkerLikeSample) {
  const SampledSignal x = synth_coded(PhaseCode::from_real({1, -1, 1, 1}),
                                      {ChipShape::rectangular, 1.0}, 16.0);
  EXPECT_NEAR(x.at(1.5).real(), -1.0, 1e-15);
  EXPECT_NEAR(x.energy(), 4.0, 1e-12);
  EXPECT_NEAR(x.t0(), 1.0 / 32.0, 1e-15);
}

TEST(Coded, EnergyEqualsLength) {
  for (std::size_t L : {1u, 4u, 13u, 31u}) {
    for (ChipShape shape : {ChipShape::rectangular, ChipShape::gaussian}) {
      const SampledSignal x = synth_coded(random_phase_code(L, L), {shape, 1e-6}, 16e6);
      EXPECT_NEAR(x.energy() / static_cast<double>(L), 1.0, 1e-6) << "L=" << L;
    }
  }
}

TEST(Train, SinglePulse) {
  const PhaseCode code = PhaseCode::barker(5);
  const ChipPulse chip{ChipShape::rectangular, 1.0};
  const auto spec = PulseTrainSpec::make({1}, {1.0}, 5.0, code, chip);
  const SampledSignal x = synth_coded(code, chip, 8.0);
  EXPECT_EQ(synth_train(spec, 8.0, false).samples(), x.samples());
  EXPECT_EQ(synth_train(spec, 8.0, true).samples(), x.samples());
}

TEST(Train, ComplementSelectorAndWeights) {
  const PhaseCode code = PhaseCode::barker(4);
  const ChipPulse chip{ChipShape::rectangular, 1.0};
  const double fs = 8.0;
  const SampledSignal x = synth_coded(code, chip, fs);
  const SampledSignal xt = synth_coded(code.companion(), chip, fs);
  const auto per = static_cast<std::size_t>(6.0 * fs);

  const auto s1 = synth_train(PulseTrainSpec::make({1, 0}, {1, 1}, 6.0, code, chip), fs, false);
  std::vector<cplx> first(s1.samples().begin(), s1.samples().begin() + x.size());
  std::vector<cplx> second(s1.samples().begin() + per, s1.samples().begin() + per + xt.size());
  EXPECT_EQ(first, x.samples());
  EXPECT_EQ(second, xt.samples());

  const auto s2 = synth_train(PulseTrainSpec::make({1, 1}, {0, 1}, 6.0, code, chip), fs, true);
  for (std::size_t i = 0; i < per; ++i) EXPECT_EQ(s2[i], cplx{});
}

TEST(Train, EnergyAdditivityAndLinearity) {
  const PhaseCode code = PhaseCode::barker(13);
  const ChipPulse chip{ChipShape::gaussian, 1e-6};
  const double fs = 16e6;
  const std::vector<int> p{1, 0, 1, 1, 0};
  const std::vector<double> q{1.0, 0.5, 2.0, 0.0, 1.5};
  const auto spec = PulseTrainSpec::make(p, q, 20e-6, code, chip);
  const double ex = synth_coded(code, chip, fs).energy();
  const double ext = synth_coded(code.companion(), chip, fs).energy();
  double want_p = 0.0, want_q = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double e = p[n] ? ex : ext;
    want_p += e;
    want_q += q[n] * q[n] * e;
  }
  EXPECT_NEAR(synth_train(spec, fs, false).energy() / want_p, 1.0, 1e-9);
  EXPECT_NEAR(synth_train(spec, fs, true).energy() / want_q, 1.0, 1e-9);

  auto scaled = spec;
  for (double& w : scaled.q_w) w *= 3.0;
  const auto a = synth_train(spec, fs, true);
  const auto b = synth_train(scaled, fs, true);
  for (std::size_t i = 0; i < a.size(); ++i) ASSERT_LE(std::abs(b[i] - 3.0 * a[i]), 1e-14 * std::abs(b[i]));
}

TEST(Train, Validation) {
  const PhaseCode code = PhaseCode::barker(4);
  const ChipPulse chip{ChipShape::rectangular, 1.0};
  EXPECT_THROW(PulseTrainSpec::make({1}, {1.0}, 3.0, code, chip), InvalidArgument);  // overlap
  EXPECT_THROW(PulseTrainSpec::make({2}, {1.0}, 5.0, code, chip), InvalidArgument);
  EXPECT_THROW(PulseTrainSpec::make({1}, {-1.0}, 5.0, code, chip), InvalidArgument);
  EXPECT_THROW(PulseTrainSpec::make({1, 0}, {1.0}, 5.0, code, chip), InvalidArgument);
  const auto spec = PulseTrainSpec::make({1, 1}, {1.0, 1.0}, 5.1, code, chip);
  EXPECT_THROW(synth_train(spec, 8.0, false), InvalidArgument);  // T * fs not integer
}

TEST(SignalCsv, Format) {
  std::ostringstream os;
  write_signal_csv(os, SampledSignal({cplx(0.1, -1.0 / 3.0)}, 1.0, 0.0));
  EXPECT_EQ(os.str(), "t,re,im\n0,0.10000000000000001,-0.33333333333333331\n");
}

TEST(Coded, MatchesDirectChipSum) {
  // Independent construction: place shifted chip copies by hand.
  const PhaseCode code = PhaseCode::barker(7);
  const ChipPulse chip{ChipShape::gaussian, 1.0};
  const double fs = 16.0;
  const SampledSignal w = synth_chip(chip, fs);
  const SampledSignal x = synth_coded(code, chip, fs);
  std::vector<cplx> want(x.size());
  for (std::size_t l = 0; l < code.length(); ++l) {
    for (std::size_t i = 0; i < w.size(); ++i) want[l * 16 + i] += code[l] * w[i];
  }
  EXPECT_LE(max_abs_diff(x.samples(), want), 1e-15);
}
