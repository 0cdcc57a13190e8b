// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "affwave/interpolate.hpp"
#include "affwave/signal.hpp"

namespace affwave::frame {

enum class MotherShape { gaussian, mexican_hat, morlet };

std::string to_string(MotherShape s);
MotherShape mother_shape_from_string(const std::string& name);

/// Unit-norm mother functions on the real line:
///   gaussian     pi^(-1/4) e^(-t^2/2)
///   mexican_hat  2 / (sqrt(3) pi^(1/4)) (1 - t^2) e^(-t^2/2)
///   morlet       pi^(-1/4) e^(-t^2/2) e^(j omega0 t)   (no admissibility
///                correction; negligible for omega0 >= 5)
struct MotherSpec {
  MotherShape shape = MotherShape::gaussian;
  double omega0 = 12.0;
  /// Samples cover [-half_width, half_width].
  double half_width = 8.0;
};

/// Closed-form value of the mother function.
cplx mother_value(const MotherSpec& spec, double t);

/// Samples at k / fs for |k| <= ceil(half_width * fs).
SampledSignal make_mother(const MotherSpec& spec, double fs);

/// Dilation-translation grid: atom (m, n) is the affine element
/// (gamma0^m, n tau0 gamma0^m).
struct FrameGrid {
  double gamma0 = 2.0;
  double tau0 = 1.0;
  int m_lo = 0;
  int m_hi = 0;
  int n_lo = 0;
  int n_hi = 0;

  void validate() const;
  std::size_t m_count() const { return static_cast<std::size_t>(m_hi - m_lo + 1); }
  std::size_t n_count() const { return static_cast<std::size_t>(n_hi - n_lo + 1); }
  std::size_t count() const { return m_count() * n_count(); }
  bool contains(int m, int n) const {
    return m >= m_lo && m <= m_hi && n >= n_lo && n <= n_hi;
  }
  /// Column index, n fastest.
  std::size_t index(int m, int n) const;
  std::pair<int, int> label(std::size_t index) const;
  double dilation(int m) const;
  double shift(int m, int n) const;
};

/// Sample points t0 + i / fs, i < size.
struct Lattice {
  double t0 = 0.0;
  double fs = 1.0;
  std::size_t size = 0;

  double dt() const { return 1.0 / fs; }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) / fs; }
  bool operator==(const Lattice&) const = default;
};

/// Values of u at the lattice points (exact copy when aligned, else one
/// interpolation pass; zero outside u).
Eigen::VectorXcd to_lattice(const SampledSignal& u, const Lattice& lat,
                            const Interpolator& interp = Interpolator::standard());
SampledSignal from_lattice(const Eigen::VectorXcd& v, const Lattice& lat);

/// Finite family of atoms stored column-wise on a common lattice. Inner
/// products are conjugate-linear in the first slot: <h, u> = int conj(h) u.
class AtomSet {
 public:
  AtomSet(Lattice lattice, Eigen::MatrixXcd atoms,
          std::vector<std::pair<int, int>> labels = {});

  /// Columns sqrt(fs) e_i: unit-norm point masses, S = I.
  static AtomSet standard_basis(const Lattice& lattice);
  /// Every column repeated `copies` times.
  AtomSet repeated(std::size_t copies) const;

  const Lattice& lattice() const { return lattice_; }
  const Eigen::MatrixXcd& matrix() const { return atoms_; }
  const std::vector<std::pair<int, int>>& labels() const { return labels_; }
  std::size_t count() const { return static_cast<std::size_t>(atoms_.cols()); }
  std::size_t dim() const { return static_cast<std::size_t>(atoms_.rows()); }

  /// <h_k, u> for every atom k.
  Eigen::VectorXcd analyze(const Eigen::VectorXcd& u) const;
  /// sum_k c_k h_k.
  Eigen::VectorXcd synthesize(const Eigen::VectorXcd& c) const;
  /// S u = sum_k <h_k, u> h_k.
  Eigen::VectorXcd apply_frame_operator(const Eigen::VectorXcd& u) const;
  /// ||u||^2 = dt sum |u_i|^2.
  double norm2(const Eigen::VectorXcd& u) const;

 private:
  Lattice lattice_;
  Eigen::MatrixXcd atoms_;
  std::vector<std::pair<int, int>> labels_;
};

struct BoundsOptions {
  double tol = 1e-8;
  int max_iter = 10000;
  /// Columns of the pivoted QR whose |R_ii| falls below rank_tol * |R_00|
  /// are treated as outside the span.
  double rank_tol = 1e-6;
  std::uint64_t seed = 42;
};

/// Extreme eigenvalues of S on span{h_k}.
struct FrameBounds {
  double A = 0.0;
  double B = 0.0;
  std::size_t rank = 0;
  int iterations_upper = 0;
  int iterations_lower = 0;
  /// Orthonormal (Euclidean) basis of the span, dim x rank.
  Eigen::MatrixXcd span_basis;

  double ratio() const { return B / A; }
  int iterations() const { return iterations_upper + iterations_lower; }
};

/// Block power iteration for B, block inverse iteration for A, on the operator reduced
/// to the span through a column-pivoted QR. Throws NumericalError when the
/// span is empty or an iteration does not reach tol within max_iter.
FrameBounds frame_bounds(const AtomSet& atoms, const BoundsOptions& opts = {});

/// `count` unit vectors drawn uniformly from the computed span.
std::vector<Eigen::VectorXcd> random_span_vectors(const FrameBounds& bounds,
                                                  std::size_t count,
                                                  std::uint64_t seed);

struct Certification {
  std::size_t samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool holds = false;
};

/// Checks A ||u||^2 - slack B ||u||^2 <= sum |<h_k,u>|^2 <= (B + slack B) ||u||^2
/// on random span vectors.
Certification certify(const AtomSet& atoms, const FrameBounds& bounds,
                      std::size_t count, std::uint64_t seed,
                      double slack = 1e-9);

/// Wavelet frame {h_mn} built from a sampled mother on a common lattice.
class WaveletFrame {
 public:
  /// Throws InvalidArgument when the lattice would exceed max_dim samples or
  /// dim * count exceeds max_entries.
  WaveletFrame(SampledSignal mother, FrameGrid grid,
               Interpolator interp = Interpolator::standard(),
               std::size_t max_dim = 4096, std::size_t max_entries = 1u << 24);

  const SampledSignal& mother() const { return mother_; }
  const FrameGrid& grid() const { return grid_; }
  const Lattice& lattice() const { return lattice_; }
  const Interpolator& interpolator() const { return interp_; }

  /// h_mn = gamma0^(-m/2) h(t / gamma0^m - n tau0) on the lattice,
  /// materialized once and cached.
  std::shared_ptr<const Eigen::VectorXcd> atom_samples(int m, int n) const;
  SampledSignal atom(int m, int n) const;

  AtomSet atoms(unsigned threads = 0) const;

 private:
  SampledSignal mother_;
  FrameGrid grid_;
  Interpolator interp_;
  Lattice lattice_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const Eigen::VectorXcd>> cache_;
};

struct CoefficientTable {
  FrameGrid grid;
  std::vector<cplx> values;

  cplx at(int m, int n) const { return values[grid.index(m, n)]; }
};

/// <h_mn, u> for every grid point.
CoefficientTable analyze(const WaveletFrame& frame, const SampledSignal& u,
                         unsigned threads = 0);

enum class DualMode {
  /// Series for h~_0n only, then h~_mn = D_(gamma0^m) h~_0n.
  dilation,
  /// Series for every atom.
  direct,
};

struct DualOptions {
  /// Relaxation constant; unset means A + B.
  std::optional<double> K;
  /// The series keeps P^0 ... P^iters.
  int iters = 20;
  DualMode mode = DualMode::dilation;
};

struct DualFrame {
  double K = 0.0;
  double convergence_factor = 0.0;
  int iters = 0;
  DualMode mode = DualMode::dilation;
  AtomSet duals;
};

/// r = max(|1 - 2A/K|, |1 - 2B/K|).
double convergence_factor(double A, double B, double K);

/// (2/K) sum_{k=0}^{iters} P^k h, P = I - (2/K) S.
Eigen::VectorXcd neumann_dual(const AtomSet& atoms, const Eigen::VectorXcd& h,
                              double K, int iters);

/// Throws NumericalError when r >= 1, InvalidArgument when K <= 0 or (for
/// dilation mode) m = 0 is not on the grid.
DualFrame dual_frame(const WaveletFrame& frame, const AtomSet& atoms,
                     const FrameBounds& bounds, const DualOptions& opts = {});
/// Same series for an arbitrary atom set (direct mode only).
DualFrame dual_frame(const AtomSet& atoms, const FrameBounds& bounds,
                     const DualOptions& opts = {});

struct Reconstruction {
  SampledSignal signal;
  /// ||u - u_rec|| / ||u|| when the original was supplied.
  std::optional<double> relative_error;
};

/// sum_mn c_mn h~_mn.
Reconstruction reconstruct(const DualFrame& dual, const Eigen::VectorXcd& coeffs,
                           const std::optional<Eigen::VectorXcd>& original = std::nullopt);

}  // namespace affwave::frame
