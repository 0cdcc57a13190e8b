// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "affwave/ambiguity.hpp"
#include "affwave/design.hpp"
#include "affwave/frame.hpp"
#include "affwave/interpolate.hpp"
#include "affwave/signal.hpp"

namespace affwave::io {

inline constexpr int kConfigVersion = 1;

/// CSV `tau,doppler,re,im,mag`, one row per cell in storage order, 17
/// significant digits.
void write_surface_csv(std::ostream& os, const AmbiguitySurface& s);

/// Metadata sidecar: definition, normalization, scale, leading factor,
/// Doppler axis kind and carrier, grid sizes, peak cell and notes.
nlohmann::json surface_sidecar(const AmbiguitySurface& s);

nlohmann::json to_json(const design::SidelobeReport& r);

struct BoundsReportInput {
  double gamma0 = 0.0;
  double tau0 = 0.0;
  std::array<int, 2> m_range{0, 0};
  std::array<int, 2> n_range{0, 0};
  frame::FrameBounds bounds;
  std::optional<frame::DualFrame> dual;
  /// Bounds of the dual atoms.
  std::optional<frame::FrameBounds> dual_bounds;
  std::optional<frame::Certification> certification;
  std::optional<double> reconstruction_error;
};

/// {gamma0, tau0, m_range, n_range, A, B, ratio, K, convergence_factor,
/// iterations, ...}.
nlohmann::json bounds_report(const BoundsReportInput& in);

// ---------------------------------------------------------------------------
// Run configuration

struct CodeSpec {
  /// Barker length, or 0 when explicit values are given.
  std::size_t barker = 0;
  std::vector<cplx> values;

  PhaseCode build() const;
  bool operator==(const CodeSpec&) const = default;
};

struct GridSpec {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  std::vector<double> values() const;
  bool operator==(const GridSpec&) const = default;
};

/// Doppler axis description. `param` selects the coordinate the grid is laid
/// out in: "gamma" (dilation_factor), "nu" (shift_frequency), "velocity", or
/// "nu_T" (dilation_factor laid out in normalized slow-time Doppler nu T,
/// gamma = 1 + nu T / (2 pi f0 T); needs f0 and train.T).
struct DopplerSpec {
  DopplerKind kind = DopplerKind::dilation_factor;
  std::string param = "gamma";
  GridSpec grid;
  double f0 = 0.0;

  bool operator==(const DopplerSpec&) const = default;
};

struct TrainSpec {
  std::size_t N = 1;
  double T = 0.0;
  bool operator==(const TrainSpec&) const = default;
};

struct MaskSpec {
  std::optional<double> tau_half_width;
  std::optional<double> gamma_half_width;
  std::optional<double> nu_half_width;
  bool operator==(const MaskSpec&) const = default;
};

struct SyntheticFrameSpec {
  /// "orthonormal": standard basis on `dim` samples (`copies` times).
  std::string kind = "orthonormal";
  std::size_t dim = 16;
  std::size_t copies = 1;
  bool operator==(const SyntheticFrameSpec&) const = default;
};

struct FrameSpec {
  std::optional<frame::MotherSpec> mother;
  std::optional<SyntheticFrameSpec> synthetic;
  double fs = 32.0;
  double gamma0 = 2.0;
  double tau0 = 1.0;
  std::array<int, 2> m_range{0, 0};
  std::array<int, 2> n_range{0, 0};
  std::size_t max_dim = 4096;
  double tol = 1e-8;
  int max_iter = 10000;
  double rank_tol = 1e-6;
  std::size_t certify = 100;
  bool dual = true;
  std::optional<double> K;
  int iters = 20;
  frame::DualMode dual_mode = frame::DualMode::dilation;
  /// Reconstruct a seeded random span vector and report its error.
  bool reconstruct = true;

  bool operator==(const FrameSpec&) const;
};

/// One configuration file for `waf`, `xaf` and `frame`; each command reads
/// the sections it needs. Unknown keys are rejected at every level.
struct RunConfig {
  int version = kConfigVersion;
  std::optional<double> fs;
  std::optional<ChipPulse> chip;
  std::optional<CodeSpec> code;
  std::optional<TrainSpec> train;
  std::optional<GridSpec> delays;
  std::optional<DopplerSpec> doppler;
  std::optional<WafDefinition> definition;
  std::optional<CrossMode> mode;
  Normalization normalization = Normalization::peak;
  std::optional<Interpolator> interp;
  std::optional<MaskSpec> mask;
  std::optional<FrameSpec> frame;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::optional<std::string> out;

  bool operator==(const RunConfig&) const;
};

/// Throws InvalidArgument on unknown keys, wrong types, a version other than
/// kConfigVersion or non-positive physical quantities.
RunConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

/// Builds the Doppler axis; `T` is needed for param "nu_T".
DopplerAxis build_doppler(const DopplerSpec& d, std::optional<double> T);

nlohmann::json read_json_file(const std::string& path);
/// Writes via a temporary file and rename.
void write_text_file(const std::string& path, const std::string& text);
/// Pretty JSON with a trailing newline.
std::string dump(const nlohmann::json& j);

}  // namespace affwave::io
