// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "affwave/error.hpp"

namespace affwave::io {

using nlohmann::json;

namespace {

// Strict accessor for one JSON object: typed getters, and finish() rejects
// any key nobody asked for.
class Obj {
 public:
  Obj(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) fail("expected an object");
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const json& raw(const char* key) {
    if (!has(key)) fail(std::string("missing '") + key + "'");
    return j_.at(key);
  }

  double number(const char* key) {
    const json& v = raw(key);
    if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) fail(std::string("'") + key + "' must be finite");
    return d;
  }
  double number(const char* key, double dflt) { return has(key) ? number(key) : dflt; }

  double positive(const char* key) {
    const double d = number(key);
    if (!(d > 0.0)) fail(std::string("'") + key + "' must be > 0");
    return d;
  }
  double positive(const char* key, double dflt) { return has(key) ? positive(key) : dflt; }

  std::int64_t integer(const char* key) {
    const json& v = raw(key);
    if (!v.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t count(const char* key, std::uint64_t min) {
    const json& v = raw(key);
    if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() &&
                                   v.get<std::int64_t>() < 0)) {
      fail(std::string("'") + key + "' must be a non-negative integer");
    }
    const auto c = v.get<std::uint64_t>();
    if (c < min) fail(std::string("'") + key + "' must be >= " + std::to_string(min));
    return c;
  }
  std::uint64_t count(const char* key, std::uint64_t min, std::uint64_t dflt) {
    return has(key) ? count(key, min) : dflt;
  }

  std::string string(const char* key) {
    const json& v = raw(key);
    if (!v.is_string()) fail(std::string("'") + key + "' must be a string");
    return v.get<std::string>();
  }

  bool boolean(const char* key, bool dflt) {
    if (!has(key)) return dflt;
    const json& v = j_.at(key);
    if (!v.is_boolean()) fail(std::string("'") + key + "' must be true or false");
    return v.get<bool>();
  }

  std::array<int, 2> range(const char* key) {
    const json& v = raw(key);
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() ||
        !v[1].is_number_integer()) {
      fail(std::string("'") + key + "' must be [lo, hi] integers");
    }
    const auto lo = v[0].get<std::int64_t>();
    const auto hi = v[1].get<std::int64_t>();
    if (lo > hi || lo < -1000 || hi > 1000) fail(std::string("'") + key + "' must satisfy -1000 <= lo <= hi <= 1000");
    return {static_cast<int>(lo), static_cast<int>(hi)};
  }

  Obj child(const char* key) { return Obj(raw(key), where_ + "." + key); }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (!seen_.count(key)) fail("unknown key '" + key + "'");
    }
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw InvalidArgument("config " + where_ + ": " + msg);
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

template <typename F>
auto convert(Obj& o, const char* key, F&& f) {
  const std::string s = o.string(key);
  try {
    return f(s);
  } catch (const InvalidArgument& e) {
    o.fail(e.what());
  }
}

json grid_json(const GridSpec& g) {
  return {{"min", g.min}, {"max", g.max}, {"count", g.count}};
}

GridSpec parse_grid(Obj& o) {
  GridSpec g;
  g.min = o.number("min");
  g.max = o.number("max");
  g.count = o.count("count", 1);
  if (g.min > g.max) o.fail("min must be <= max");
  if (g.count == 1 && g.min != g.max) o.fail("count 1 needs min == max");
  if (g.count > 1000000) o.fail("count above 10^6");
  return g;
}

std::string default_param(DopplerKind k) {
  switch (k) {
    case DopplerKind::dilation_factor: return "gamma";
    case DopplerKind::shift_frequency: return "nu";
    case DopplerKind::velocity: return "velocity";
  }
  return "gamma";
}

json code_json(const CodeSpec& c) {
  if (c.barker > 0) return {{"barker", c.barker}};
  json vals = json::array();
  for (const cplx& v : c.values) {
    if (v.imag() == 0.0) {
      vals.push_back(v.real());
    } else {
      vals.push_back(json::array({v.real(), v.imag()}));
    }
  }
  return {{"values", vals}};
}

CodeSpec parse_code(Obj& o) {
  CodeSpec c;
  const bool b = o.has("barker");
  const bool v = o.has("values");
  if (b == v) o.fail("give exactly one of 'barker' or 'values'");
  if (b) {
    c.barker = o.count("barker", 2);
  } else {
    const json& arr = o.raw("values");
    if (!arr.is_array() || arr.empty()) o.fail("'values' must be a non-empty array");
    for (const json& e : arr) {
      if (e.is_number()) {
        c.values.emplace_back(e.get<double>(), 0.0);
      } else if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
        c.values.emplace_back(e[0].get<double>(), e[1].get<double>());
      } else {
        o.fail("code values must be numbers or [re, im] pairs");
      }
    }
  }
  try {
    (void)c.build();
  } catch (const InvalidArgument& e) {
    o.fail(e.what());
  }
  return c;
}

json interp_json(const Interpolator& in) {
  json j{{"method", to_string(in.method())}};
  if (in.method() == InterpMethod::windowed_sinc) {
    j["taps"] = in.taps();
    j["beta"] = in.beta();
  }
  return j;
}

Interpolator parse_interp(Obj& o) {
  const InterpMethod m = convert(o, "method", interp_method_from_string);
  if (m == InterpMethod::windowed_sinc) {
    const auto taps = o.count("taps", 0, 32);
    const double beta = o.positive("beta", 8.0);
    try {
      return Interpolator::windowed_sinc(static_cast<int>(std::min<std::uint64_t>(taps, 1u << 20)), beta);
    } catch (const InvalidArgument& e) {
      o.fail(e.what());
    }
  }
  return m == InterpMethod::linear ? Interpolator::linear() : Interpolator::cubic();
}

std::string dual_mode_name(frame::DualMode m) {
  return m == frame::DualMode::dilation ? "dilation" : "direct";
}

bool mother_eq(const std::optional<frame::MotherSpec>& a,
               const std::optional<frame::MotherSpec>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->shape == b->shape && a->omega0 == b->omega0 && a->half_width == b->half_width;
}

json frame_json(const FrameSpec& f) {
  json j;
  if (f.mother) {
    j["mother"] = {{"shape", frame::to_string(f.mother->shape)},
                   {"omega0", f.mother->omega0},
                   {"half_width", f.mother->half_width}};
  }
  if (f.synthetic) {
    j["synthetic"] = {{"kind", f.synthetic->kind},
                      {"dim", f.synthetic->dim},
                      {"copies", f.synthetic->copies}};
  }
  j["fs"] = f.fs;
  j["gamma0"] = f.gamma0;
  j["tau0"] = f.tau0;
  j["m_range"] = f.m_range;
  j["n_range"] = f.n_range;
  j["max_dim"] = f.max_dim;
  j["tol"] = f.tol;
  j["max_iter"] = f.max_iter;
  j["rank_tol"] = f.rank_tol;
  j["certify"] = f.certify;
  j["dual"] = f.dual;
  if (f.K) j["K"] = *f.K;
  j["iters"] = f.iters;
  j["dual_mode"] = dual_mode_name(f.dual_mode);
  j["reconstruct"] = f.reconstruct;
  return j;
}

FrameSpec parse_frame(Obj& o) {
  FrameSpec f;
  const bool m = o.has("mother");
  const bool s = o.has("synthetic");
  if (m == s) o.fail("give exactly one of 'mother' or 'synthetic'");
  if (m) {
    Obj mo = o.child("mother");
    frame::MotherSpec spec;
    spec.shape = convert(mo, "shape", frame::mother_shape_from_string);
    spec.omega0 = mo.number("omega0", spec.omega0);
    spec.half_width = mo.positive("half_width", spec.half_width);
    mo.finish();
    f.mother = spec;
  } else {
    Obj so = o.child("synthetic");
    SyntheticFrameSpec spec;
    spec.kind = so.string("kind");
    if (spec.kind != "orthonormal") so.fail("unknown synthetic frame '" + spec.kind + "'");
    spec.dim = so.count("dim", 1, spec.dim);
    spec.copies = so.count("copies", 1, spec.copies);
    if (spec.dim > 4096 || spec.copies > 64) so.fail("dim <= 4096 and copies <= 64 required");
    so.finish();
    f.synthetic = spec;
  }
  f.fs = o.positive("fs", f.fs);
  f.gamma0 = o.positive("gamma0", f.gamma0);
  if (f.gamma0 == 1.0) o.fail("gamma0 must differ from 1");
  f.tau0 = o.positive("tau0", f.tau0);
  if (o.has("m_range")) f.m_range = o.range("m_range");
  if (o.has("n_range")) f.n_range = o.range("n_range");
  f.max_dim = o.count("max_dim", 1, f.max_dim);
  f.tol = o.positive("tol", f.tol);
  f.max_iter = static_cast<int>(std::min<std::uint64_t>(o.count("max_iter", 1, 10000), 100000000));
  f.rank_tol = o.positive("rank_tol", f.rank_tol);
  f.certify = o.count("certify", 0, f.certify);
  f.dual = o.boolean("dual", f.dual);
  if (o.has("K")) f.K = o.positive("K");
  f.iters = static_cast<int>(std::min<std::uint64_t>(o.count("iters", 0, 20), 100000));
  if (o.has("dual_mode")) {
    const std::string dm = o.string("dual_mode");
    if (dm == "dilation") f.dual_mode = frame::DualMode::dilation;
    else if (dm == "direct") f.dual_mode = frame::DualMode::direct;
    else o.fail("dual_mode must be 'dilation' or 'direct'");
  }
  f.reconstruct = o.boolean("reconstruct", f.reconstruct);
  o.finish();
  return f;
}

}  // namespace

// ---------------------------------------------------------------------------
// Output formats

void write_surface_csv(std::ostream& os, const AmbiguitySurface& s) {
  os << "tau,doppler,re,im,mag\n";
  const std::size_t nd = s.delays.size();
  char buf[160];
  for (std::size_t i = 0; i < s.doppler.size(); ++i) {
    const double dv = s.doppler.column_value(i);
    for (std::size_t k = 0; k < nd; ++k) {
      const cplx v = s.values[i * nd + k];
      std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.delays[k],
                    dv, v.real(), v.imag(), std::abs(v));
      os << buf;
    }
  }
}

json surface_sidecar(const AmbiguitySurface& s) {
  const auto pk = s.peak();
  json j;
  j["definition"] = to_string(s.definition);
  j["normalization"] = s.normalization == Normalization::peak ? "peak" : "raw";
  j["scale"] = s.scale;
  j["leading_factor"] = s.leading_factor;
  j["doppler_kind"] = to_string(s.doppler.kind);
  j["doppler_column"] = s.doppler.kind == DopplerKind::shift_frequency ? "nu" : "gamma";
  j["carrier_hz"] = s.doppler.carrier_hz;
  j["n_delays"] = s.delays.size();
  j["n_doppler"] = s.doppler.size();
  j["peak"] = {{"tau", s.delays.empty() ? 0.0 : s.delays[pk.delay_index]},
               {"doppler", s.doppler.size() == 0 ? 0.0 : s.doppler.column_value(pk.doppler_index)},
               {"delay_index", pk.delay_index},
               {"doppler_index", pk.doppler_index},
               {"magnitude", pk.magnitude}};
  j["notes"] = s.notes;
  return j;
}

json to_json(const design::SidelobeReport& r) {
  json mask{{"tau_half_width", r.mask.tau_half_width}};
  if (r.mask.gamma_half_width) mask["gamma_half_width"] = *r.mask.gamma_half_width;
  if (r.mask.nu_half_width) mask["nu_half_width"] = *r.mask.nu_half_width;
  return {{"peak", r.peak},
          {"peak_delay_index", r.peak_delay_index},
          {"peak_doppler_index", r.peak_doppler_index},
          {"psl_db", r.psl_db},
          {"isl_db", r.isl_db},
          {"mainlobe_cells", r.mainlobe_cells},
          {"sidelobe_cells", r.sidelobe_cells},
          {"mainlobe_mask", mask}};
}

json bounds_report(const BoundsReportInput& in) {
  json j;
  j["gamma0"] = in.gamma0;
  j["tau0"] = in.tau0;
  j["m_range"] = in.m_range;
  j["n_range"] = in.n_range;
  j["A"] = in.bounds.A;
  j["B"] = in.bounds.B;
  j["ratio"] = in.bounds.ratio();
  j["rank"] = in.bounds.rank;
  j["K"] = in.dual ? json(in.dual->K) : json(nullptr);
  j["convergence_factor"] = in.dual ? json(in.dual->convergence_factor) : json(nullptr);
  j["iterations"] = {{"upper", in.bounds.iterations_upper},
                     {"lower", in.bounds.iterations_lower},
                     {"total", in.bounds.iterations()}};
  if (in.dual) {
    json d{{"iters", in.dual->iters}, {"mode", dual_mode_name(in.dual->mode)}};
    if (in.dual_bounds) {
      d["A"] = in.dual_bounds->A;
      d["B"] = in.dual_bounds->B;
      d["ratio"] = in.dual_bounds->ratio();
    }
    j["dual"] = d;
  }
  if (in.certification) {
    j["certification"] = {{"samples", in.certification->samples},
                          {"min_ratio", in.certification->min_ratio},
                          {"max_ratio", in.certification->max_ratio},
                          {"holds", in.certification->holds}};
  }
  if (in.reconstruction_error) j["reconstruction_error"] = *in.reconstruction_error;
  return j;
}

// ---------------------------------------------------------------------------
// Config

PhaseCode CodeSpec::build() const {
  if (barker > 0) return PhaseCode::barker(barker);
  return PhaseCode(values);
}

std::vector<double> GridSpec::values() const {
  if (count == 1) return {min};
  return linspace(min, max, count);
}

bool FrameSpec::operator==(const FrameSpec& o) const {
  return mother_eq(mother, o.mother) && synthetic == o.synthetic && fs == o.fs &&
         gamma0 == o.gamma0 && tau0 == o.tau0 && m_range == o.m_range &&
         n_range == o.n_range && max_dim == o.max_dim && tol == o.tol &&
         max_iter == o.max_iter && rank_tol == o.rank_tol && certify == o.certify &&
         dual == o.dual && K == o.K && iters == o.iters && dual_mode == o.dual_mode &&
         reconstruct == o.reconstruct;
}

bool RunConfig::operator==(const RunConfig& o) const {
  auto chip_eq = [](const std::optional<ChipPulse>& a, const std::optional<ChipPulse>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->shape == b->shape && a->Tc == b->Tc);
  };
  return version == o.version && fs == o.fs && chip_eq(chip, o.chip) && code == o.code &&
         train == o.train && delays == o.delays && doppler == o.doppler &&
         definition == o.definition && mode == o.mode &&
         normalization == o.normalization && interp == o.interp && mask == o.mask &&
         frame == o.frame && seed == o.seed && threads == o.threads && out == o.out;
}

RunConfig parse_config(const json& j) {
  Obj o(j, "root");
  RunConfig c;
  const std::int64_t version = o.integer("version");
  if (version != kConfigVersion) {
    o.fail("unsupported version " + std::to_string(version) + " (expected " +
           std::to_string(kConfigVersion) + ")");
  }
  if (o.has("fs")) c.fs = o.positive("fs");
  if (o.has("chip")) {
    Obj ch = o.child("chip");
    ChipPulse p;
    p.shape = convert(ch, "shape", chip_shape_from_string);
    p.Tc = ch.positive("Tc");
    ch.finish();
    c.chip = p;
  }
  if (o.has("code")) {
    Obj co = o.child("code");
    c.code = parse_code(co);
    co.finish();
  }
  if (o.has("train")) {
    Obj tr = o.child("train");
    TrainSpec t;
    t.N = tr.count("N", 1);
    if (t.N > 100000) tr.fail("N above 10^5");
    t.T = tr.positive("T");
    tr.finish();
    c.train = t;
  }
  if (o.has("delays")) {
    Obj d = o.child("delays");
    c.delays = parse_grid(d);
    d.finish();
  }
  if (o.has("doppler")) {
    Obj d = o.child("doppler");
    DopplerSpec s;
    s.kind = convert(d, "kind", doppler_kind_from_string);
    s.param = d.has("param") ? d.string("param") : default_param(s.kind);
    const bool ok = s.param == default_param(s.kind) ||
                    (s.kind == DopplerKind::dilation_factor && s.param == "nu_T");
    if (!ok) d.fail("param '" + s.param + "' does not fit kind " + to_string(s.kind));
    s.grid = parse_grid(d);
    s.f0 = d.number("f0", 0.0);
    if (s.f0 < 0.0) d.fail("f0 must be >= 0");
    if ((s.kind == DopplerKind::velocity || s.param == "nu_T") && !(s.f0 > 0.0)) {
      d.fail("f0 > 0 required for this axis");
    }
    if (s.param == "gamma" && !(s.grid.min > 0.0)) d.fail("gamma values must be > 0");
    d.finish();
    c.doppler = s;
  }
  if (o.has("definition")) c.definition = convert(o, "definition", waf_definition_from_string);
  if (o.has("mode")) c.mode = convert(o, "mode", cross_mode_from_string);
  if (o.has("normalization")) {
    const std::string n = o.string("normalization");
    if (n == "peak") c.normalization = Normalization::peak;
    else if (n == "raw") c.normalization = Normalization::raw;
    else o.fail("normalization must be 'peak' or 'raw'");
  }
  if (o.has("interpolator")) {
    Obj in = o.child("interpolator");
    c.interp = parse_interp(in);
    in.finish();
  }
  if (o.has("mask")) {
    Obj m = o.child("mask");
    MaskSpec s;
    if (m.has("tau_half_width")) s.tau_half_width = m.positive("tau_half_width");
    if (m.has("gamma_half_width")) s.gamma_half_width = m.positive("gamma_half_width");
    if (m.has("nu_half_width")) s.nu_half_width = m.positive("nu_half_width");
    m.finish();
    c.mask = s;
  }
  if (o.has("frame")) {
    Obj f = o.child("frame");
    c.frame = parse_frame(f);
  }
  if (o.has("seed")) c.seed = o.count("seed", 0);
  if (o.has("threads")) c.threads = static_cast<unsigned>(std::min<std::uint64_t>(o.count("threads", 0), 1024));
  if (o.has("out")) c.out = o.string("out");
  o.finish();
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["version"] = c.version;
  if (c.fs) j["fs"] = *c.fs;
  if (c.chip) j["chip"] = {{"shape", to_string(c.chip->shape)}, {"Tc", c.chip->Tc}};
  if (c.code) j["code"] = code_json(*c.code);
  if (c.train) j["train"] = {{"N", c.train->N}, {"T", c.train->T}};
  if (c.delays) j["delays"] = grid_json(*c.delays);
  if (c.doppler) {
    json d = grid_json(c.doppler->grid);
    d["kind"] = to_string(c.doppler->kind);
    d["param"] = c.doppler->param;
    d["f0"] = c.doppler->f0;
    j["doppler"] = d;
  }
  if (c.definition) j["definition"] = to_string(*c.definition);
  if (c.mode) j["mode"] = to_string(*c.mode);
  j["normalization"] = c.normalization == Normalization::peak ? "peak" : "raw";
  if (c.interp) j["interpolator"] = interp_json(*c.interp);
  if (c.mask) {
    json m = json::object();
    if (c.mask->tau_half_width) m["tau_half_width"] = *c.mask->tau_half_width;
    if (c.mask->gamma_half_width) m["gamma_half_width"] = *c.mask->gamma_half_width;
    if (c.mask->nu_half_width) m["nu_half_width"] = *c.mask->nu_half_width;
    j["mask"] = m;
  }
  if (c.frame) j["frame"] = frame_json(*c.frame);
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  if (c.out) j["out"] = *c.out;
  return j;
}

DopplerAxis build_doppler(const DopplerSpec& d, std::optional<double> T) {
  std::vector<double> v = d.grid.values();
  DopplerAxis axis;
  switch (d.kind) {
    case DopplerKind::dilation_factor:
      if (d.param == "nu_T") {
        if (!T || !(*T > 0.0)) throw InvalidArgument("doppler: param nu_T needs train.T");
        for (double& x : v) x = 1.0 + x / (2.0 * kPi * d.f0 * *T);
      }
      axis = DopplerAxis::dilation(std::move(v), d.f0);
      break;
    case DopplerKind::shift_frequency: axis = DopplerAxis::shift(std::move(v)); break;
    case DopplerKind::velocity: axis = DopplerAxis::velocity(std::move(v), d.f0); break;
  }
  axis.validate();
  return axis;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = fs::path(path + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidArgument("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out) throw InvalidArgument("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw InvalidArgument("cannot rename onto '" + path + "': " + ec.message());
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace affwave::io
