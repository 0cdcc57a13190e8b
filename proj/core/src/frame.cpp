// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "affwave/affine.hpp"
#include "affwave/error.hpp"
#include "affwave/parallel.hpp"

namespace affwave::frame {

namespace {

Eigen::VectorXcd random_vector(PortableRng& rng, Eigen::Index n) {
  Eigen::VectorXcd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

struct Eig {
  double value = 0.0;
  int iterations = 0;
};

// Block width of the subspace iteration. Extreme eigenvalues of frame
// operators come in tight clusters (near-symmetric atom pairs), where a
// single vector stalls at the ratio of two nearly equal eigenvalues.
constexpr Eigen::Index kBlock = 8;

// Shared driver for block power (step = M V) and block inverse
// (step = M^-1 V) iteration on Hermitian M, with Rayleigh-Ritz on the block.
// Ritz values and residuals always use M; `largest` picks the extreme pair.
template <typename Step>
Eig iterate(const Eigen::MatrixXcd& M, PortableRng& rng, const Step& step, bool largest,
            double tol, int max_iter, double residual_floor, const char* what) {
  const Eigen::Index n = M.rows();
  const Eigen::Index p = std::min(kBlock, n);
  Eigen::MatrixXcd V(n, p);
  for (Eigen::Index j = 0; j < p; ++j) V.col(j) = random_vector(rng, n);
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= max_iter; ++it) {
    const Eigen::MatrixXcd Y = step(V);
    if (!Y.allFinite() || !(Y.norm() > 0.0)) {
      throw NumericalError(std::string("frame_bounds: ") + what +
                           " iteration broke down");
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(Y);
    V = qr.householderQ() * Eigen::MatrixXcd::Identity(n, p);
    const Eigen::MatrixXcd W = M * V;
    Eigen::MatrixXcd H = V.adjoint() * W;
    H = 0.5 * (H + H.adjoint()).eval();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ritz(H);
    const Eigen::Index k = largest ? p - 1 : 0;
    const double lam = ritz.eigenvalues()(k);
    const Eigen::VectorXcd y = ritz.eigenvectors().col(k);
    const double res = (W * y - lam * (V * y)).norm();
    if (res <= std::max(tol * std::abs(lam), residual_floor)) return {lam, it};
    // Clusters wider than the block: the Ritz value stops moving long before
    // the residual drops; accept once it is flat to rounding.
    if (it >= 50 && std::abs(lam - prev) <= 8.0 * std::numeric_limits<double>::epsilon() * std::abs(lam)) {
      return {lam, it};
    }
    prev = lam;
  }
  throw NumericalError(std::string("frame_bounds: ") + what +
                       " iteration did not converge in " +
                       std::to_string(max_iter) + " iterations");
}

}  // namespace

std::string to_string(MotherShape s) {
  switch (s) {
    case MotherShape::gaussian: return "gaussian";
    case MotherShape::mexican_hat: return "mexican_hat";
    case MotherShape::morlet: return "morlet";
  }
  return "?";
}

MotherShape mother_shape_from_string(const std::string& name) {
  if (name == "gaussian") return MotherShape::gaussian;
  if (name == "mexican_hat") return MotherShape::mexican_hat;
  if (name == "morlet") return MotherShape::morlet;
  throw InvalidArgument("unknown mother shape '" + name + "'");
}

cplx mother_value(const MotherSpec& spec, double t) {
  const double g = std::exp(-0.5 * t * t);
  const double c = std::pow(kPi, -0.25);
  switch (spec.shape) {
    case MotherShape::gaussian: return c * g;
    case MotherShape::mexican_hat:
      return 2.0 / std::sqrt(3.0) * c * (1.0 - t * t) * g;
    case MotherShape::morlet: return c * g * std::polar(1.0, spec.omega0 * t);
  }
  return {};
}

SampledSignal make_mother(const MotherSpec& spec, double fs) {
  if (!(fs > 0.0)) throw InvalidArgument("mother: fs must be > 0");
  if (!(spec.half_width > 0.0)) throw InvalidArgument("mother: half_width must be > 0");
  const auto K = static_cast<long>(std::ceil(spec.half_width * fs - 1e-9));
  std::vector<cplx> s(static_cast<std::size_t>(2 * K + 1));
  for (long k = -K; k <= K; ++k) {
    s[static_cast<std::size_t>(k + K)] = mother_value(spec, static_cast<double>(k) / fs);
  }
  return SampledSignal(std::move(s), fs, -static_cast<double>(K) / fs);
}

// ---------------------------------------------------------------------------
// FrameGrid

void FrameGrid::validate() const {
  if (!(gamma0 > 0.0) || gamma0 == 1.0 || !std::isfinite(gamma0)) {
    throw InvalidArgument("frame grid: gamma0 must be > 0 and != 1");
  }
  if (!(tau0 > 0.0) || !std::isfinite(tau0)) {
    throw InvalidArgument("frame grid: tau0 must be > 0");
  }
  if (m_lo > m_hi || n_lo > n_hi) {
    throw InvalidArgument("frame grid: empty index range");
  }
}

std::size_t FrameGrid::index(int m, int n) const {
  if (!contains(m, n)) {
    throw InvalidArgument("frame grid: index (" + std::to_string(m) + ", " +
                          std::to_string(n) + ") out of range");
  }
  return static_cast<std::size_t>(m - m_lo) * n_count() +
         static_cast<std::size_t>(n - n_lo);
}

std::pair<int, int> FrameGrid::label(std::size_t index) const {
  return {m_lo + static_cast<int>(index / n_count()),
          n_lo + static_cast<int>(index % n_count())};
}

double FrameGrid::dilation(int m) const { return std::pow(gamma0, m); }

double FrameGrid::shift(int m, int n) const {
  return static_cast<double>(n) * tau0 * dilation(m);
}

// ---------------------------------------------------------------------------
// Lattice helpers

Eigen::VectorXcd to_lattice(const SampledSignal& u, const Lattice& lat,
                            const Interpolator& interp) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(lat.size));
  const std::span<const cplx> data(u.samples());
  for (std::size_t i = 0; i < lat.size; ++i) {
    v(static_cast<Eigen::Index>(i)) = interp.eval(data, (lat.time(i) - u.t0()) * u.fs());
  }
  return v;
}

SampledSignal from_lattice(const Eigen::VectorXcd& v, const Lattice& lat) {
  std::vector<cplx> s(v.data(), v.data() + v.size());
  return SampledSignal(std::move(s), lat.fs, lat.t0);
}

// ---------------------------------------------------------------------------
// AtomSet

AtomSet::AtomSet(Lattice lattice, Eigen::MatrixXcd atoms,
                 std::vector<std::pair<int, int>> labels)
    : lattice_(lattice), atoms_(std::move(atoms)), labels_(std::move(labels)) {
  if (static_cast<std::size_t>(atoms_.rows()) != lattice_.size) {
    throw InvalidArgument("AtomSet: row count differs from lattice size");
  }
  if (!(lattice_.fs > 0.0)) throw InvalidArgument("AtomSet: fs must be > 0");
  if (labels_.empty()) {
    for (Eigen::Index k = 0; k < atoms_.cols(); ++k) {
      labels_.emplace_back(0, static_cast<int>(k));
    }
  }
  if (labels_.size() != static_cast<std::size_t>(atoms_.cols())) {
    throw InvalidArgument("AtomSet: label count differs from atom count");
  }
}

AtomSet AtomSet::standard_basis(const Lattice& lattice) {
  const auto n = static_cast<Eigen::Index>(lattice.size);
  Eigen::MatrixXcd H = Eigen::MatrixXcd::Identity(n, n) * std::sqrt(lattice.fs);
  return AtomSet(lattice, std::move(H));
}

AtomSet AtomSet::repeated(std::size_t copies) const {
  Eigen::MatrixXcd H(atoms_.rows(), atoms_.cols() * static_cast<Eigen::Index>(copies));
  std::vector<std::pair<int, int>> labels;
  for (std::size_t c = 0; c < copies; ++c) {
    H.middleCols(static_cast<Eigen::Index>(c) * atoms_.cols(), atoms_.cols()) = atoms_;
    labels.insert(labels.end(), labels_.begin(), labels_.end());
  }
  return AtomSet(lattice_, std::move(H), std::move(labels));
}

Eigen::VectorXcd AtomSet::analyze(const Eigen::VectorXcd& u) const {
  return lattice_.dt() * (atoms_.adjoint() * u);
}

Eigen::VectorXcd AtomSet::synthesize(const Eigen::VectorXcd& c) const {
  return atoms_ * c;
}

Eigen::VectorXcd AtomSet::apply_frame_operator(const Eigen::VectorXcd& u) const {
  return synthesize(analyze(u));
}

double AtomSet::norm2(const Eigen::VectorXcd& u) const {
  return lattice_.dt() * u.squaredNorm();
}

// ---------------------------------------------------------------------------
// Bounds

FrameBounds frame_bounds(const AtomSet& atoms, const BoundsOptions& opts) {
  const Eigen::MatrixXcd& H = atoms.matrix();
  if (H.cols() == 0 || H.rows() == 0) throw NumericalError("frame_bounds: no atoms");
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(H);
  qr.setThreshold(opts.rank_tol);
  const Eigen::Index r = qr.rank();
  if (r == 0) throw NumericalError("frame_bounds: atoms span the zero space");

  FrameBounds out;
  out.rank = static_cast<std::size_t>(r);
  out.span_basis = qr.householderQ() * Eigen::MatrixXcd::Identity(H.rows(), r);
  const Eigen::MatrixXcd R =
      qr.matrixR().topRows(r).triangularView<Eigen::Upper>();
  const Eigen::MatrixXcd M = atoms.lattice().dt() * (R * R.adjoint());

  PortableRng rng(opts.seed);
  const Eig upper = iterate(
      M, rng, [&](const Eigen::MatrixXcd& V) { return Eigen::MatrixXcd(M * V); }, true,
      opts.tol, opts.max_iter, 0.0, "power");
  out.B = upper.value;
  out.iterations_upper = upper.iterations;

  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * out.B *
                       std::sqrt(static_cast<double>(r));
  Eigen::LLT<Eigen::MatrixXcd> llt(M);
  Eig lower;
  if (llt.info() == Eigen::Success) {
    lower = iterate(
        M, rng, [&](const Eigen::MatrixXcd& V) { return Eigen::MatrixXcd(llt.solve(V)); }, false,
        opts.tol, opts.max_iter, floor, "inverse");
  } else {
    Eigen::LDLT<Eigen::MatrixXcd> ldlt(M);
    lower = iterate(
        M, rng, [&](const Eigen::MatrixXcd& V) { return Eigen::MatrixXcd(ldlt.solve(V)); }, false,
        opts.tol, opts.max_iter, floor, "inverse");
  }
  out.A = lower.value;
  out.iterations_lower = lower.iterations;
  if (!(out.A > 0.0)) throw NumericalError("frame_bounds: lower bound is not positive");
  if (out.A > out.B) std::swap(out.A, out.B);
  return out;
}

std::vector<Eigen::VectorXcd> random_span_vectors(const FrameBounds& bounds,
                                                  std::size_t count,
                                                  std::uint64_t seed) {
  PortableRng rng(seed);
  std::vector<Eigen::VectorXcd> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Eigen::VectorXcd z = random_vector(rng, bounds.span_basis.cols());
    Eigen::VectorXcd u = bounds.span_basis * z;
    out.push_back(u / u.norm());
  }
  return out;
}

Certification certify(const AtomSet& atoms, const FrameBounds& bounds,
                      std::size_t count, std::uint64_t seed, double slack) {
  Certification c;
  c.samples = count;
  c.min_ratio = std::numeric_limits<double>::infinity();
  c.max_ratio = -std::numeric_limits<double>::infinity();
  for (const auto& u : random_span_vectors(bounds, count, seed)) {
    const double ratio = atoms.analyze(u).squaredNorm() / atoms.norm2(u);
    c.min_ratio = std::min(c.min_ratio, ratio);
    c.max_ratio = std::max(c.max_ratio, ratio);
  }
  const double pad = slack * bounds.B;
  c.holds = count > 0 && c.min_ratio >= bounds.A - pad && c.max_ratio <= bounds.B + pad;
  return c;
}

// ---------------------------------------------------------------------------
// WaveletFrame

WaveletFrame::WaveletFrame(SampledSignal mother, FrameGrid grid,
                           Interpolator interp, std::size_t max_dim,
                           std::size_t max_entries)
    : mother_(std::move(mother)), grid_(grid), interp_(std::move(interp)) {
  grid_.validate();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int m = grid_.m_lo; m <= grid_.m_hi; ++m) {
    for (int n = grid_.n_lo; n <= grid_.n_hi; ++n) {
      const auto [a, b] = affine_support(mother_, grid_.dilation(m), grid_.shift(m, n), interp_);
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
  }
  const double fs = mother_.fs();
  const double k_lo = std::floor(lo * fs + 1e-9);
  const double k_hi = std::ceil(hi * fs - 1e-9);
  const double size = k_hi - k_lo + 1.0;
  if (size > static_cast<double>(max_dim)) {
    throw InvalidArgument("frame: discretization needs " +
                          std::to_string(static_cast<long>(size)) +
                          " samples, above the cap of " + std::to_string(max_dim));
  }
  if (size * static_cast<double>(grid_.count()) > static_cast<double>(max_entries)) {
    throw InvalidArgument("frame: dim x atom count exceeds the memory cap");
  }
  lattice_ = Lattice{k_lo / fs, fs, static_cast<std::size_t>(size)};
}

std::shared_ptr<const Eigen::VectorXcd> WaveletFrame::atom_samples(int m, int n) const {
  grid_.index(m, n);  // range check
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = cache_.find({m, n}); it != cache_.end()) return it->second;
  }
  auto v = std::make_shared<Eigen::VectorXcd>(static_cast<Eigen::Index>(lattice_.size));
  sample_affine(mother_, grid_.dilation(m), grid_.shift(m, n), lattice_.t0,
                lattice_.fs, std::span<cplx>(v->data(), lattice_.size), interp_);
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(std::make_pair(m, n), std::move(v)).first->second;
}

SampledSignal WaveletFrame::atom(int m, int n) const {
  return from_lattice(*atom_samples(m, n), lattice_);
}

AtomSet WaveletFrame::atoms(unsigned threads) const {
  const std::size_t count = grid_.count();
  Eigen::MatrixXcd H(static_cast<Eigen::Index>(lattice_.size), static_cast<Eigen::Index>(count));
  std::vector<std::pair<int, int>> labels(count);
  parallel_for(count, resolve_threads(threads), [&](std::size_t k) {
    const auto [m, n] = grid_.label(k);
    labels[k] = {m, n};
    H.col(static_cast<Eigen::Index>(k)) = *atom_samples(m, n);
  });
  return AtomSet(lattice_, std::move(H), std::move(labels));
}

CoefficientTable analyze(const WaveletFrame& frame, const SampledSignal& u,
                         unsigned threads) {
  const AtomSet set = frame.atoms(threads);
  const Eigen::VectorXcd c = set.analyze(to_lattice(u, frame.lattice(), frame.interpolator()));
  CoefficientTable t;
  t.grid = frame.grid();
  t.values.assign(c.data(), c.data() + c.size());
  return t;
}

// ---------------------------------------------------------------------------
// Duals

double convergence_factor(double A, double B, double K) {
  return std::max(std::abs(1.0 - 2.0 * A / K), std::abs(1.0 - 2.0 * B / K));
}

Eigen::VectorXcd neumann_dual(const AtomSet& atoms, const Eigen::VectorXcd& h,
                              double K, int iters) {
  if (!(K > 0.0)) throw InvalidArgument("dual frame: K must be > 0");
  if (iters < 0) throw InvalidArgument("dual frame: iters must be >= 0");
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(h.size());
  Eigen::VectorXcd v = h;
  for (int k = 0; k <= iters; ++k) {
    acc += v;
    if (k < iters) v -= (2.0 / K) * atoms.apply_frame_operator(v);
  }
  return (2.0 / K) * acc;
}

namespace {

DualFrame prepare(const FrameBounds& bounds, const DualOptions& opts) {
  DualFrame d{0.0, 0.0, opts.iters, opts.mode, AtomSet(Lattice{0.0, 1.0, 0}, Eigen::MatrixXcd())};
  d.K = opts.K.value_or(bounds.A + bounds.B);
  if (!(d.K > 0.0)) throw InvalidArgument("dual frame: K must be > 0");
  if (opts.iters < 0) throw InvalidArgument("dual frame: iters must be >= 0");
  d.convergence_factor = convergence_factor(bounds.A, bounds.B, d.K);
  if (d.convergence_factor >= 1.0) {
    throw NumericalError("dual frame: Neumann series diverges (r = " +
                         std::to_string(d.convergence_factor) + " >= 1)");
  }
  return d;
}

}  // namespace

DualFrame dual_frame(const AtomSet& atoms, const FrameBounds& bounds,
                     const DualOptions& opts) {
  DualFrame d = prepare(bounds, opts);
  d.mode = DualMode::direct;
  Eigen::MatrixXcd D(atoms.matrix().rows(), atoms.matrix().cols());
  for (Eigen::Index k = 0; k < D.cols(); ++k) {
    D.col(k) = neumann_dual(atoms, atoms.matrix().col(k), d.K, d.iters);
  }
  d.duals = AtomSet(atoms.lattice(), std::move(D), atoms.labels());
  return d;
}

DualFrame dual_frame(const WaveletFrame& frame, const AtomSet& atoms,
                     const FrameBounds& bounds, const DualOptions& opts) {
  if (opts.mode == DualMode::direct) return dual_frame(atoms, bounds, opts);
  const FrameGrid& g = frame.grid();
  if (!g.contains(0, g.n_lo)) {
    throw InvalidArgument("dual frame: dilation mode needs m = 0 on the grid");
  }
  DualFrame d = prepare(bounds, opts);
  const Lattice& lat = atoms.lattice();
  Eigen::MatrixXcd D(atoms.matrix().rows(), atoms.matrix().cols());
  for (int n = g.n_lo; n <= g.n_hi; ++n) {
    const auto col0 = static_cast<Eigen::Index>(g.index(0, n));
    const Eigen::VectorXcd base = neumann_dual(atoms, atoms.matrix().col(col0), d.K, d.iters);
    const SampledSignal base_sig = from_lattice(base, lat);
    for (int m = g.m_lo; m <= g.m_hi; ++m) {
      const auto col = static_cast<Eigen::Index>(g.index(m, n));
      if (m == 0) {
        D.col(col) = base;
        continue;
      }
      Eigen::VectorXcd v(static_cast<Eigen::Index>(lat.size));
      sample_affine(base_sig, g.dilation(m), 0.0, lat.t0, lat.fs,
                    std::span<cplx>(v.data(), lat.size), frame.interpolator());
      D.col(col) = v;
    }
  }
  d.duals = AtomSet(lat, std::move(D), atoms.labels());
  return d;
}

Reconstruction reconstruct(const DualFrame& dual, const Eigen::VectorXcd& coeffs,
                           const std::optional<Eigen::VectorXcd>& original) {
  if (dual.duals.count() == 0) throw InvalidArgument("reconstruct: no dual atoms");
  if (static_cast<std::size_t>(coeffs.size()) != dual.duals.count()) {
    throw InvalidArgument("reconstruct: coefficient count differs from atom count");
  }
  const Eigen::VectorXcd u = dual.duals.synthesize(coeffs);
  Reconstruction r{from_lattice(u, dual.duals.lattice()), std::nullopt};
  if (original) {
    const double ref = dual.duals.norm2(*original);
    const double err = dual.duals.norm2(u - *original);
    r.relative_error = ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
  }
  return r;
}

}  // namespace affwave::frame
