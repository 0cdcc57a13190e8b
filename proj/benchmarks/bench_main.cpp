// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include <benchmark/benchmark.h>

#include "affwave/ambiguity.hpp"
#include "affwave/design.hpp"
#include "affwave/diffset.hpp"
#include "affwave/frame.hpp"
#include "affwave/galois.hpp"

using namespace affwave;

namespace {

void BM_ExtFieldMul(benchmark::State& state) {
  const auto field = galois::ExtField::build(11, 3);
  auto x = field->element(1234);
  const auto y = field->element(777);
  for (auto _ : state) {
    x = x * y;
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_ExtFieldMul);

void BM_SingerConstruct(benchmark::State& state) {
  const diffset::SingerParams params{static_cast<std::uint32_t>(state.range(0)), 2};
  for (auto _ : state) benchmark::DoNotOptimize(diffset::singer_construct(params));
}
BENCHMARK(BM_SingerConstruct)->Arg(5)->Arg(11)->Arg(23)->Unit(benchmark::kMicrosecond);

void BM_WafCell(benchmark::State& state) {
  const SampledSignal w =
      synth_coded(PhaseCode::barker(13), {ChipShape::rectangular, 1.0}, static_cast<double>(state.range(0)));
  DopplerPoint p;
  p.gamma = 1.0005;
  const Interpolator interp = Interpolator::standard();
  for (auto _ : state) {
    benchmark::DoNotOptimize(waf_point(w, 0.37, p, WafDefinition::kelly_wishner, interp));
  }
}
BENCHMARK(BM_WafCell)->Arg(16)->Arg(64)->Unit(benchmark::kMicrosecond);

void BM_CrossAfSlowTimeRow(benchmark::State& state) {
  const diffset::DifferenceSet ds = diffset::singer_construct({11, 2});
  const auto seqs = design::assign(ds);
  const auto spec = design::make_train(seqs, 26e-6, PhaseCode::barker(13), {ChipShape::rectangular, 1e-6});
  const auto delays = linspace(-13e-6, 13e-6, 201);
  const auto axis = DopplerAxis::dilation({1.0 + 2e-8}, 1e10);
  EvalOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_af(spec, 16e6, delays, axis, CrossMode::slow_time, opts));
  }
}
BENCHMARK(BM_CrossAfSlowTimeRow)->Unit(benchmark::kMillisecond);

void BM_FrameBounds(benchmark::State& state) {
  const frame::WaveletFrame wf(frame::make_mother({frame::MotherShape::morlet, 12.0, 8.0}, 16.0),
                               frame::FrameGrid{2.0, 2.5, -1, 1, -4, 4});
  const frame::AtomSet atoms = wf.atoms(1);
  for (auto _ : state) benchmark::DoNotOptimize(frame::frame_bounds(atoms));
}
BENCHMARK(BM_FrameBounds)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
