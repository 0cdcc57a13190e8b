// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "affwave/ambiguity.hpp"
#include "affwave/diffset.hpp"
#include "affwave/frame.hpp"
#include "affwave/signal.hpp"

namespace affwave::design {

/// Binary pulse-selection sequences for a train of N pulses.
struct DesignedSequences {
  std::size_t N = 0;
  std::vector<int> p;
  std::vector<int> q;
  diffset::DifferenceSet source_set;

  /// Lengths N, entries in {0, 1}, source_set.N == N. Throws InvalidArgument.
  void validate() const;
  /// p_n q_n == [n in source_set] for every n.
  bool satisfies_product_rule() const;
  bool operator==(const DesignedSequences&) const = default;
};

/// (p_n, q_n) = (1, 1) for n in the set, (n mod 2, (n + 1) mod 2) otherwise.
/// Only the structure of the set is checked (sorted, distinct, < N); the
/// difference property is not required.
DesignedSequences assign(const diffset::DifferenceSet& ds);

/// p = q = 1 for every pulse; the comparator for sidelobe scoring.
DesignedSequences baseline_all_ones(const diffset::DifferenceSet& ds);

/// Train spec with q as weights and the default companion code.
PulseTrainSpec make_train(const DesignedSequences& seqs, double T,
                          const PhaseCode& code, const ChipPulse& chip);

/// (1/sqrt(gamma)) sum_n q_n p_n |chi_x| + q_n (1 - p_n) |chi_x~|.
/// Throws InvalidArgument on negative peaks or gamma <= 0.
double design_bound(const DesignedSequences& seqs, double chi_x_peak,
                    double chi_xt_peak, double gamma = 1.0);

/// design_bound evaluated cell by cell with the auto-ambiguity magnitudes
/// of the code and its companion on the surface grid (same interpolator as
/// cross_af), in storage order.
std::vector<double> bound_surface(const DesignedSequences& seqs,
                                  const PulseTrainSpec& spec, double fs,
                                  const std::vector<double>& delays,
                                  const DopplerAxis& doppler,
                                  const EvalOptions& opts = {});

/// Mainlobe region: |tau| <= tau_half_width, and |gamma - 1| <=
/// gamma_half_width and |nu| <= nu_half_width when those are set.
struct MainlobeMask {
  double tau_half_width = 0.0;
  std::optional<double> gamma_half_width;
  std::optional<double> nu_half_width;

  bool contains(double tau, const DopplerPoint& p) const;
  bool operator==(const MainlobeMask&) const = default;
};

/// |tau| <= Tc, |gamma - 1| <= 1 / (N T f0).
MainlobeMask default_mask(double Tc, std::size_t N, double T, double f0);

/// Reported in place of -inf dB.
inline constexpr double kFloorDb = -300.0;

struct SidelobeReport {
  double peak = 0.0;
  std::size_t peak_doppler_index = 0;
  std::size_t peak_delay_index = 0;
  double psl_db = kFloorDb;
  double isl_db = kFloorDb;
  std::size_t mainlobe_cells = 0;
  std::size_t sidelobe_cells = 0;
  MainlobeMask mask;
};

/// PSL = 20 log10(max outside mask / peak), ISL = 10 log10(outside power /
/// inside power). Throws InvalidArgument when no cell falls inside the mask
/// and NumericalError on an all-zero surface.
SidelobeReport score(const AmbiguitySurface& surface, const MainlobeMask& mask);

/// Slow-time Doppler codebook on the pulses of a set F: N unit vectors
/// v_k[n] = |F|^(-1/2) e^(-2 pi j k n / N), n in F. It is a tight frame of
/// C^|F| and its coherence meets the Welch bound exactly when F is a
/// difference set.
frame::AtomSet doppler_codebook(const diffset::DifferenceSet& ds);

struct CodebookReport {
  std::size_t N = 0;
  std::size_t k = 0;
  double welch = 0.0;
  /// max_{k != l} |<v_k, v_l>|.
  double coherence = 0.0;
  double A = 0.0;
  double B = 0.0;
  double ratio() const { return B / A; }
};

/// Observational metric only: bounds and coherence of doppler_codebook(ds).
CodebookReport codebook_report(const diffset::DifferenceSet& ds,
                               const frame::BoundsOptions& opts = {});

/// JSON object {"N", "p", "q", "set"}; all integers.
void to_json(nlohmann::json& j, const DesignedSequences& s);
/// Strict: exactly those keys; runs validate(). Throws InvalidArgument.
void from_json(const nlohmann::json& j, DesignedSequences& s);

}  // namespace affwave::design
