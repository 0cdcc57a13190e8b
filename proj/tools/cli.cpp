// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "affwave/ambiguity.hpp"
#include "affwave/design.hpp"
#include "affwave/diffset.hpp"
#include "affwave/error.hpp"
#include "affwave/frame.hpp"
#include "affwave/io.hpp"
#include "affwave/parallel.hpp"

namespace affwave::cli {

namespace {

using nlohmann::json;

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

template <typename T>
const T& need(const std::optional<T>& v, const char* what) {
  if (!v) throw InvalidArgument(std::string("config: '") + what + "' is required");
  return *v;
}

struct Common {
  std::string out;
  unsigned threads = 0;
};

// ---------------------------------------------------------------------------

int cmd_diffset(std::uint32_t q, std::uint32_t d, const std::string& verify_path,
                const std::string& out_path, std::ostream& out) {
  diffset::DifferenceSet ds;
  if (!verify_path.empty()) {
    ds = io::read_json_file(verify_path).get<diffset::DifferenceSet>();
  } else {
    const diffset::SingerParams params{q, d};
    params.validate();
    ds = diffset::singer_construct(params);
    out << "N=" << params.N() << " C1=" << params.C1() << " C2=" << params.C2()
        << " mu=" << fmt("%.6f", diffset::welch_bound(params)) << "\n";
  }
  const diffset::VerifyResult vr = diffset::verify(ds);
  if (!verify_path.empty()) {
    out << "N=" << ds.N << " k=" << ds.k << " lambda=" << ds.lambda << "\n";
  }
  if (!out_path.empty()) io::write_text_file(out_path, io::dump(json(ds)));
  if (vr.valid) {
    out << "VERIFIED\n";
    return kOk;
  }
  out << "FAILED: " << vr.reason << "\n";
  return kVerifyFailed;
}

int cmd_design(const std::string& set_path, bool baseline, const std::string& out_path,
               std::ostream& out) {
  const auto ds = io::read_json_file(set_path).get<diffset::DifferenceSet>();
  const design::DesignedSequences seqs =
      baseline ? design::baseline_all_ones(ds) : design::assign(ds);
  std::size_t both = 0;
  for (std::size_t n = 0; n < seqs.N; ++n) both += static_cast<std::size_t>(seqs.p[n] * seqs.q[n]);
  out << "N=" << seqs.N << " p_n=q_n=1 at " << both << " indices\n";
  const diffset::VerifyResult vr = diffset::verify(ds);
  out << "set " << (vr.valid ? "is" : "is not") << " a (" << ds.N << ", " << ds.k << ", "
      << ds.lambda << ") difference set\n";
  if (!out_path.empty()) io::write_text_file(out_path, io::dump(json(seqs)));
  return kOk;
}

EvalOptions eval_options(const io::RunConfig& c, unsigned threads) {
  EvalOptions o;
  o.interp = c.interp;
  o.threads = threads;
  return o;
}

void write_surface(const AmbiguitySurface& s, const std::string& out_path,
                   const io::RunConfig& c) {
  std::ostringstream csv;
  io::write_surface_csv(csv, s);
  io::write_text_file(out_path, csv.str());
  json side = io::surface_sidecar(s);
  side["config"] = io::to_json(c);
  io::write_text_file(sidecar_path(out_path), io::dump(side));
}

int cmd_waf(const std::string& config_path, const Common& common, std::ostream& out) {
  const io::RunConfig c = io::parse_config(io::read_json_file(config_path));
  const std::string out_path = common.out.empty() ? need(c.out, "out") : common.out;
  const double fs = need(c.fs, "fs");
  const ChipPulse chip = need(c.chip, "chip");
  const PhaseCode code = c.code ? c.code->build() : PhaseCode::from_real({1.0});
  const auto delays = need(c.delays, "delays").values();
  const DopplerAxis axis = io::build_doppler(
      need(c.doppler, "doppler"), c.train ? std::optional<double>(c.train->T) : std::nullopt);
  const WafDefinition def = c.definition.value_or(WafDefinition::kelly_wishner);
  const unsigned threads = effective_threads(common.threads, c.threads);
  const SampledSignal w = synth_coded(code, chip, fs);

  AmbiguitySurface s;
  if (def == WafDefinition::kelly_wishner_narrowband) {
    s = waf_narrowband(w, delays, axis, c.doppler->f0, eval_options(c, threads));
  } else if (def == WafDefinition::cross_pq) {
    throw InvalidArgument("config: definition cross_pq is evaluated by `xaf`");
  } else {
    s = waf(w, delays, axis, def, eval_options(c, threads));
  }
  if (c.normalization == Normalization::peak) s = normalize_peak(std::move(s));
  write_surface(s, out_path, c);
  const auto pk = s.peak();
  out << "definition=" << to_string(def) << " cells=" << s.values.size()
      << " peak=" << fmt("%.9g", pk.magnitude) << " at tau=" << fmt("%.9g", s.delays[pk.delay_index])
      << " doppler=" << fmt("%.12g", s.doppler.column_value(pk.doppler_index)) << "\n";
  return kOk;
}

design::MainlobeMask mask_for(const io::RunConfig& c, const ChipPulse& chip,
                              std::size_t N, double T) {
  design::MainlobeMask m;
  const double f0 = c.doppler ? c.doppler->f0 : 0.0;
  if (f0 > 0.0) {
    m = design::default_mask(chip.Tc, N, T, f0);
  } else {
    m.tau_half_width = chip.Tc;
    m.nu_half_width = 2.0 * kPi / (static_cast<double>(N) * T);
  }
  if (c.mask) {
    if (c.mask->tau_half_width) m.tau_half_width = *c.mask->tau_half_width;
    if (c.mask->gamma_half_width) m.gamma_half_width = c.mask->gamma_half_width;
    if (c.mask->nu_half_width) m.nu_half_width = c.mask->nu_half_width;
  }
  return m;
}

int cmd_xaf(const std::string& seq_path, const std::string& config_path,
            bool baseline, const Common& common, std::ostream& out) {
  const io::RunConfig c = io::parse_config(io::read_json_file(config_path));
  const auto seqs = io::read_json_file(seq_path).get<design::DesignedSequences>();
  const std::string out_path = common.out.empty() ? need(c.out, "out") : common.out;
  const double fs = need(c.fs, "fs");
  const ChipPulse chip = need(c.chip, "chip");
  const PhaseCode code = c.code ? c.code->build() : PhaseCode::from_real({1.0});
  const io::TrainSpec& train = need(c.train, "train");
  if (train.N != seqs.N) {
    throw InvalidArgument("config: train.N = " + std::to_string(train.N) +
                          " differs from the sequence length " + std::to_string(seqs.N));
  }
  const auto delays = need(c.delays, "delays").values();
  const DopplerAxis axis = io::build_doppler(need(c.doppler, "doppler"), train.T);
  const CrossMode mode = c.mode.value_or(CrossMode::slow_time);
  const unsigned threads = effective_threads(common.threads, c.threads);
  const EvalOptions opts = eval_options(c, threads);
  const design::MainlobeMask mask = mask_for(c, chip, seqs.N, train.T);

  const PulseTrainSpec spec = design::make_train(seqs, train.T, code, chip);
  AmbiguitySurface s = cross_af(spec, fs, delays, axis, mode, opts);

  json report;
  report["mode"] = to_string(mode);
  report["sidelobes"] = io::to_json(design::score(s, mask));
  if (mode == CrossMode::slow_time) {
    // Cell-wise triangle-inequality bound on the raw surface.
    const auto bound = design::bound_surface(seqs, spec, fs, delays, axis, opts);
    double worst = 0.0;
    for (std::size_t i = 0; i < bound.size(); ++i) {
      const double excess = std::abs(s.values[i]) - bound[i];
      worst = std::max(worst, excess / std::max(bound[i], 1e-300));
    }
    const double peak_bound = design::design_bound(seqs, 1.0, 1.0);
    report["design_bound"] = {{"max_relative_excess", worst},
                              {"holds", worst <= 1e-9},
                              {"unit_peak_bound", peak_bound}};
  }
  if (baseline) {
    const design::DesignedSequences base = design::baseline_all_ones(seqs.source_set);
    const PulseTrainSpec bspec = design::make_train(base, train.T, code, chip);
    const AmbiguitySurface bs = cross_af(bspec, fs, delays, axis, mode, opts);
    report["baseline"] = io::to_json(design::score(bs, mask));
  }
  if (c.normalization == Normalization::peak) s = normalize_peak(std::move(s));
  write_surface(s, out_path, c);
  io::write_text_file(sidecar_path(out_path, ".report.json"), io::dump(report));

  const auto pk = s.peak();
  out << "mode=" << to_string(mode) << " cells=" << s.values.size()
      << " peak at tau=" << fmt("%.9g", s.delays[pk.delay_index])
      << " doppler=" << fmt("%.12g", s.doppler.column_value(pk.doppler_index))
      << " psl_db=" << fmt("%.4f", report["sidelobes"]["psl_db"].get<double>());
  if (baseline) out << " baseline_psl_db=" << fmt("%.4f", report["baseline"]["psl_db"].get<double>());
  out << "\n";
  return kOk;
}

int cmd_frame(const std::string& config_path, const Common& common, std::ostream& out) {
  const io::RunConfig c = io::parse_config(io::read_json_file(config_path));
  const io::FrameSpec& f = need(c.frame, "frame");
  const std::string out_path = common.out.empty() ? need(c.out, "out") : common.out;
  const unsigned threads = effective_threads(common.threads, c.threads);

  frame::BoundsOptions bo;
  bo.tol = f.tol;
  bo.max_iter = f.max_iter;
  bo.rank_tol = f.rank_tol;
  bo.seed = c.seed;

  std::optional<frame::WaveletFrame> wf;
  std::optional<frame::AtomSet> atoms;
  io::BoundsReportInput rep;
  rep.gamma0 = f.gamma0;
  rep.tau0 = f.tau0;
  rep.m_range = f.m_range;
  rep.n_range = f.n_range;
  if (f.mother) {
    const frame::FrameGrid grid{f.gamma0, f.tau0, f.m_range[0], f.m_range[1],
                                f.n_range[0], f.n_range[1]};
    wf.emplace(frame::make_mother(*f.mother, f.fs), grid,
               c.interp.value_or(Interpolator::standard()), f.max_dim);
    atoms.emplace(wf->atoms(threads));
  } else {
    const frame::Lattice lat{0.0, f.fs, f.synthetic->dim};
    atoms.emplace(frame::AtomSet::standard_basis(lat).repeated(f.synthetic->copies));
  }

  rep.bounds = frame::frame_bounds(*atoms, bo);
  if (f.certify > 0) rep.certification = frame::certify(*atoms, rep.bounds, f.certify, c.seed);
  if (f.dual) {
    frame::DualOptions dopt;
    dopt.K = f.K;
    dopt.iters = f.iters;
    dopt.mode = wf ? f.dual_mode : frame::DualMode::direct;
    rep.dual = wf ? frame::dual_frame(*wf, *atoms, rep.bounds, dopt)
                  : frame::dual_frame(*atoms, rep.bounds, dopt);
    rep.dual_bounds = frame::frame_bounds(rep.dual->duals, bo);
    if (f.reconstruct) {
      const Eigen::VectorXcd u = frame::random_span_vectors(rep.bounds, 1, c.seed + 1).front();
      rep.reconstruction_error =
          frame::reconstruct(*rep.dual, atoms->analyze(u), u).relative_error;
    }
  }
  json j = io::bounds_report(rep);
  j["dim"] = atoms->dim();
  j["atoms"] = atoms->count();
  j["seed"] = c.seed;
  io::write_text_file(out_path, io::dump(j));

  out << "A=" << fmt("%.9g", rep.bounds.A) << " B=" << fmt("%.9g", rep.bounds.B)
      << " ratio=" << fmt("%.9g", rep.bounds.ratio());
  if (rep.dual) out << " K=" << fmt("%.9g", rep.dual->K) << " r=" << fmt("%.9g", rep.dual->convergence_factor);
  if (rep.certification) out << " certified=" << (rep.certification->holds ? "yes" : "no");
  if (rep.reconstruction_error) out << " reconstruction_error=" << fmt("%.3g", *rep.reconstruction_error);
  out << "\n";
  if (rep.certification && !rep.certification->holds) return kVerifyFailed;
  return kOk;
}

}  // namespace

unsigned effective_threads(unsigned flag, unsigned config) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv(kThreadsEnvVar); env != nullptr && *env != '\0') {
    return resolve_threads(0);
  }
  return resolve_threads(config);
}

std::string sidecar_path(const std::string& csv_path, const std::string& suffix) {
  std::filesystem::path p(csv_path);
  if (p.extension() == ".csv") return p.replace_extension().string() + suffix;
  return csv_path + suffix;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"affwave: wideband ambiguity, affine frames and difference-set design"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--threads", common.threads, "worker threads (overrides AFFWAVE_THREADS)")
      ->check(CLI::Range(0u, 1024u));

  std::uint32_t q = 0, d = 0;
  std::string verify_path, set_path, config_path, seq_path;
  bool baseline = false;

  auto* ds = app.add_subcommand("diffset", "construct and verify a Singer difference set");
  ds->add_option("--q", q, "prime q");
  ds->add_option("--d", d, "power constant d");
  ds->add_option("--verify", verify_path, "verify a difference-set JSON file instead");
  ds->add_option("--out", common.out, "output JSON path");

  auto* de = app.add_subcommand("design", "assign (p, q) sequences from a set");
  de->add_option("--set", set_path, "difference-set JSON")->required();
  de->add_flag("--baseline", baseline, "emit the all-ones comparator instead");
  de->add_option("--out", common.out, "output JSON path");

  auto* wa = app.add_subcommand("waf", "ambiguity surface of a coded pulse");
  wa->add_option("--config", config_path, "run config JSON")->required();
  wa->add_option("--out", common.out, "output CSV path (sidecar beside it)");

  auto* xa = app.add_subcommand("xaf", "cross-ambiguity surface of a designed train");
  xa->add_option("--seq", seq_path, "sequence JSON")->required();
  xa->add_option("--config", config_path, "run config JSON")->required();
  xa->add_flag("--baseline", baseline, "also score the all-ones comparator");
  xa->add_option("--out", common.out, "output CSV path (sidecar and report beside it)");

  auto* fr = app.add_subcommand("frame", "frame bounds, dual frame and certification");
  fr->add_option("--config", config_path, "run config JSON")->required();
  fr->add_option("--out", common.out, "bounds report JSON path");

  for (auto* sub : {ds, de, wa, xa, fr}) {
    sub->add_option("--threads", common.threads, "worker threads")->check(CLI::Range(0u, 1024u));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (ds->parsed()) {
      if (verify_path.empty() && (q == 0 || d == 0)) {
        throw InvalidArgument("diffset: give --q and --d, or --verify FILE");
      }
      return cmd_diffset(q, d, verify_path, common.out, out);
    }
    if (de->parsed()) return cmd_design(set_path, baseline, common.out, out);
    if (wa->parsed()) return cmd_waf(config_path, common, out);
    if (xa->parsed()) return cmd_xaf(seq_path, config_path, baseline, common, out);
    if (fr->parsed()) return cmd_frame(config_path, common, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> store;
  store.reserve(args.size() + 1);
  store.emplace_back("affwave");
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace affwave::cli
