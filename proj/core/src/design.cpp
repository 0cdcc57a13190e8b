// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/design.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "affwave/error.hpp"

namespace affwave::design {

namespace {

constexpr std::size_t kMaxPulses = std::size_t{1} << 24;

void check_structure(const diffset::DifferenceSet& ds) {
  if (ds.N == 0 || ds.N > kMaxPulses) {
    throw InvalidArgument("design: set modulus N must be in [1, 2^24]");
  }
  if (ds.k != ds.elements.size()) {
    throw InvalidArgument("design: k differs from the element count");
  }
  for (std::size_t i = 0; i < ds.elements.size(); ++i) {
    if (ds.elements[i] >= ds.N) throw InvalidArgument("design: element out of range");
    if (i > 0 && ds.elements[i] <= ds.elements[i - 1]) {
      throw InvalidArgument("design: elements must be sorted and distinct");
    }
  }
}

double to_db(double ratio, double scale) {
  return ratio > 0.0 ? scale * std::log10(ratio) : kFloorDb;
}

}  // namespace

void DesignedSequences::validate() const {
  check_structure(source_set);
  if (source_set.N != N) throw InvalidArgument("design: set modulus differs from N");
  if (p.size() != N || q.size() != N) {
    throw InvalidArgument("design: p and q must have length N");
  }
  auto binary = [](int v) { return v == 0 || v == 1; };
  if (!std::all_of(p.begin(), p.end(), binary) || !std::all_of(q.begin(), q.end(), binary)) {
    throw InvalidArgument("design: p and q entries must be 0 or 1");
  }
}

bool DesignedSequences::satisfies_product_rule() const {
  for (std::size_t n = 0; n < N; ++n) {
    if ((p[n] * q[n] == 1) != source_set.contains(n)) return false;
  }
  return true;
}

DesignedSequences assign(const diffset::DifferenceSet& ds) {
  check_structure(ds);
  DesignedSequences s;
  s.N = static_cast<std::size_t>(ds.N);
  s.source_set = ds;
  s.p.resize(s.N);
  s.q.resize(s.N);
  for (std::size_t n = 0; n < s.N; ++n) {
    if (ds.contains(n)) {
      s.p[n] = 1;
      s.q[n] = 1;
    } else {
      s.p[n] = static_cast<int>(n % 2);
      s.q[n] = static_cast<int>((n + 1) % 2);
    }
  }
  return s;
}

DesignedSequences baseline_all_ones(const diffset::DifferenceSet& ds) {
  check_structure(ds);
  DesignedSequences s;
  s.N = static_cast<std::size_t>(ds.N);
  s.source_set = ds;
  s.p.assign(s.N, 1);
  s.q.assign(s.N, 1);
  return s;
}

PulseTrainSpec make_train(const DesignedSequences& seqs, double T,
                          const PhaseCode& code, const ChipPulse& chip) {
  seqs.validate();
  std::vector<double> q(seqs.q.begin(), seqs.q.end());
  PulseTrainSpec spec = PulseTrainSpec::make(seqs.p, std::move(q), T, code, chip);
  spec.validate();
  return spec;
}

double design_bound(const DesignedSequences& seqs, double chi_x_peak,
                    double chi_xt_peak, double gamma) {
  if (!(chi_x_peak >= 0.0) || !(chi_xt_peak >= 0.0)) {
    throw InvalidArgument("design_bound: peaks must be >= 0");
  }
  if (!(gamma > 0.0)) throw InvalidArgument("design_bound: gamma must be > 0");
  double a = 0.0;
  double b = 0.0;
  for (std::size_t n = 0; n < seqs.N; ++n) {
    a += static_cast<double>(seqs.q[n] * seqs.p[n]);
    b += static_cast<double>(seqs.q[n] * (1 - seqs.p[n]));
  }
  return (a * chi_x_peak + b * chi_xt_peak) / std::sqrt(gamma);
}

std::vector<double> bound_surface(const DesignedSequences& seqs,
                                  const PulseTrainSpec& spec, double fs,
                                  const std::vector<double>& delays,
                                  const DopplerAxis& doppler,
                                  const EvalOptions& opts) {
  seqs.validate();
  EvalOptions inner = opts;
  inner.interp = opts.interp.value_or(Interpolator::standard());
  const AmbiguitySurface cx = waf(synth_coded(spec.code, spec.chip, fs), delays,
                                  doppler, WafDefinition::kelly_wishner, inner);
  const AmbiguitySurface cxt = waf(synth_coded(spec.companion, spec.chip, fs), delays,
                                   doppler, WafDefinition::kelly_wishner, inner);
  std::vector<double> out(cx.values.size());
  const std::size_t nd = delays.size();
  for (std::size_t i = 0; i < doppler.size(); ++i) {
    const double g = doppler.gamma(i);
    for (std::size_t k = 0; k < nd; ++k) {
      out[i * nd + k] = design_bound(seqs, std::abs(cx.at(i, k)), std::abs(cxt.at(i, k)), g);
    }
  }
  return out;
}

bool MainlobeMask::contains(double tau, const DopplerPoint& p) const {
  if (std::abs(tau) > tau_half_width) return false;
  if (gamma_half_width && std::abs(p.gamma - 1.0) > *gamma_half_width) return false;
  if (nu_half_width && std::abs(p.nu) > *nu_half_width) return false;
  return true;
}

MainlobeMask default_mask(double Tc, std::size_t N, double T, double f0) {
  if (!(Tc > 0.0) || N == 0 || !(T > 0.0) || !(f0 > 0.0)) {
    throw InvalidArgument("default_mask: Tc, N, T and f0 must be positive");
  }
  MainlobeMask m;
  m.tau_half_width = Tc;
  m.gamma_half_width = 1.0 / (static_cast<double>(N) * T * f0);
  return m;
}

SidelobeReport score(const AmbiguitySurface& surface, const MainlobeMask& mask) {
  const std::size_t nd = surface.delays.size();
  const std::size_t nv = surface.doppler.size();
  if (surface.values.size() != nd * nv || surface.values.empty()) {
    throw InvalidArgument("score: surface shape mismatch");
  }
  std::vector<DopplerPoint> pts(nv);
  for (std::size_t i = 0; i < nv; ++i) pts[i] = surface.doppler.point(i);

  SidelobeReport r;
  r.mask = mask;
  const auto pk = surface.peak();
  r.peak = pk.magnitude;
  r.peak_doppler_index = pk.doppler_index;
  r.peak_delay_index = pk.delay_index;
  if (!(r.peak > 0.0)) throw NumericalError("score: all-zero surface");

  std::vector<char> inside(surface.values.size());
  double side_max = 0.0;
  for (std::size_t i = 0; i < nv; ++i) {
    for (std::size_t k = 0; k < nd; ++k) {
      const std::size_t c = i * nd + k;
      inside[c] = mask.contains(surface.delays[k], pts[i]) ? 1 : 0;
      if (inside[c]) {
        ++r.mainlobe_cells;
      } else {
        ++r.sidelobe_cells;
        side_max = std::max(side_max, std::abs(surface.values[c]));
      }
    }
  }
  if (r.mainlobe_cells == 0) throw InvalidArgument("score: mask contains no grid cell");

  const double in_pow = pairwise_sum<double>(0, inside.size(), [&](std::size_t c) {
    return inside[c] ? std::norm(surface.values[c]) : 0.0;
  });
  const double out_pow = pairwise_sum<double>(0, inside.size(), [&](std::size_t c) {
    return inside[c] ? 0.0 : std::norm(surface.values[c]);
  });
  r.psl_db = to_db(side_max / r.peak, 20.0);
  r.isl_db = in_pow > 0.0 ? to_db(out_pow / in_pow, 10.0) : -kFloorDb;
  return r;
}

frame::AtomSet doppler_codebook(const diffset::DifferenceSet& ds) {
  check_structure(ds);
  if (ds.elements.empty()) throw InvalidArgument("doppler_codebook: empty set");
  const auto N = static_cast<Eigen::Index>(ds.N);
  const auto k = static_cast<Eigen::Index>(ds.elements.size());
  Eigen::MatrixXcd H(k, N);
  const double amp = 1.0 / std::sqrt(static_cast<double>(k));
  for (Eigen::Index col = 0; col < N; ++col) {
    for (Eigen::Index row = 0; row < k; ++row) {
      // Reduce k n mod N first so the phase argument stays exact.
      const auto e = static_cast<std::uint64_t>(col) * ds.elements[static_cast<std::size_t>(row)] % ds.N;
      H(row, col) = amp * std::polar(1.0, -2.0 * kPi * static_cast<double>(e) /
                                              static_cast<double>(ds.N));
    }
  }
  return frame::AtomSet(frame::Lattice{0.0, 1.0, static_cast<std::size_t>(k)}, std::move(H));
}

CodebookReport codebook_report(const diffset::DifferenceSet& ds,
                               const frame::BoundsOptions& opts) {
  const frame::AtomSet atoms = doppler_codebook(ds);
  CodebookReport r;
  r.N = static_cast<std::size_t>(ds.N);
  r.k = ds.elements.size();
  r.welch = diffset::welch_bound(ds.N, ds.elements.size());
  const Eigen::MatrixXcd G = atoms.matrix().adjoint() * atoms.matrix();
  for (Eigen::Index a = 0; a < G.rows(); ++a) {
    for (Eigen::Index b = 0; b < G.cols(); ++b) {
      if (a != b) r.coherence = std::max(r.coherence, std::abs(G(a, b)));
    }
  }
  const frame::FrameBounds fb = frame::frame_bounds(atoms, opts);
  r.A = fb.A;
  r.B = fb.B;
  return r;
}

void to_json(nlohmann::json& j, const DesignedSequences& s) {
  j = nlohmann::json{{"N", s.N}, {"p", s.p}, {"q", s.q}, {"set", s.source_set}};
}

void from_json(const nlohmann::json& j, DesignedSequences& s) {
  if (!j.is_object()) throw InvalidArgument("sequences: expected object");
  for (const auto& [key, _] : j.items()) {
    if (key != "N" && key != "p" && key != "q" && key != "set") {
      throw InvalidArgument("sequences: unknown key '" + key + "'");
    }
  }
  for (const char* key : {"N", "p", "q", "set"}) {
    if (!j.contains(key)) throw InvalidArgument(std::string("sequences: missing '") + key + "'");
  }
  const auto& n = j.at("N");
  if (!n.is_number_integer() || n.get<std::int64_t>() < 0) {
    throw InvalidArgument("sequences: 'N' must be a non-negative integer");
  }
  auto bits = [&](const char* key) {
    const auto& a = j.at(key);
    if (!a.is_array()) throw InvalidArgument(std::string("sequences: '") + key + "' must be an array");
    std::vector<int> out;
    out.reserve(a.size());
    for (const auto& v : a) {
      if (!v.is_number_integer()) {
        throw InvalidArgument(std::string("sequences: '") + key + "' entries must be integers");
      }
      const auto x = v.get<std::int64_t>();
      if (x != 0 && x != 1) {
        throw InvalidArgument(std::string("sequences: '") + key + "' entries must be 0 or 1");
      }
      out.push_back(static_cast<int>(x));
    }
    return out;
  };
  DesignedSequences out;
  out.N = n.get<std::size_t>();
  out.p = bits("p");
  out.q = bits("q");
  out.source_set = j.at("set").get<diffset::DifferenceSet>();
  out.validate();
  s = std::move(out);
}

}  // namespace affwave::design
