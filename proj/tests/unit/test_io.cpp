// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "affwave/error.hpp"
#include "affwave/io.hpp"

using namespace affwave;
using nlohmann::json;

namespace {

const char* kTrainConfig = R"({"version": 1, "fs": 16e6, "chip": {"shape": "rectangular", "Tc": 1e-6},
  "code": {"barker": 13}, "train": {"N": 133, "T": 26e-6},
  "delays": {"min": -13e-6, "max": 13e-6, "count": 201},
  "doppler": {"kind": "dilation_factor", "param": "nu_T", "min": -0.1, "max": 0.1, "count": 101, "f0": 1e10},
  "mode": "slow_time"})";

io::RunConfig parse(const std::string& s) { return io::parse_config(json::parse(s)); }

}  // namespace

TEST(SurfaceCsv, HeaderAndRows) {
  AmbiguitySurface s;
  s.delays = {-1.0, 0.5};
  s.doppler = DopplerAxis::dilation({1.0, 1.25});
  s.values = {cplx(1, 0), cplx(0, -1), cplx(0.1, 0), cplx(3, 4)};
  std::ostringstream os;
  io::write_surface_csv(os, s);
  EXPECT_EQ(os.str(),
            "tau,doppler,re,im,mag\n"
            "-1,1,1,0,1\n"
            "0.5,1,0,-1,1\n"
            "-1,1.25,0.10000000000000001,0,0.10000000000000001\n"
            "0.5,1.25,3,4,5\n");
}

TEST(SurfaceCsv, ShiftAxisWritesNu) {
  AmbiguitySurface s;
  s.delays = {0.0};
  s.doppler = DopplerAxis::shift({-2.5});
  s.values = {cplx(1, 0)};
  std::ostringstream os;
  io::write_surface_csv(os, s);
  EXPECT_EQ(os.str(), "tau,doppler,re,im,mag\n0,-2.5,1,0,1\n");
}

TEST(Sidecar, DescribesSurface) {
  AmbiguitySurface s;
  s.delays = {0.0, 1.0};
  s.doppler = DopplerAxis::dilation({1.0}, 5.0);
  s.values = {cplx(2, 0), cplx(1, 0)};
  s.leading_factor = "sqrt(gamma)";
  const json j = io::surface_sidecar(normalize_peak(s));
  EXPECT_EQ(j.at("definition"), "kelly_wishner");
  EXPECT_EQ(j.at("normalization"), "peak");
  EXPECT_EQ(j.at("scale"), 2.0);
  EXPECT_EQ(j.at("n_delays"), 2);
  EXPECT_EQ(j.at("carrier_hz"), 5.0);
  EXPECT_EQ(j.at("leading_factor"), "sqrt(gamma)");
}

TEST(Config, TrainConfigParsesAndRoundTrips) {
  const io::RunConfig c = parse(kTrainConfig);
  ASSERT_TRUE(c.code.has_value());
  EXPECT_EQ(c.code->barker, 13u);
  EXPECT_EQ(c.train->N, 133u);
  EXPECT_EQ(c.mode, CrossMode::slow_time);
  EXPECT_EQ(c.normalization, Normalization::peak);
  EXPECT_EQ(c.seed, 42u);
  const json j = io::to_json(c);
  EXPECT_EQ(io::parse_config(j), c);
  EXPECT_EQ(io::parse_config(json::parse(io::dump(j))), c);
}

TEST(Config, FullRoundTrip) {
  const char* text = R"({"version": 1, "fs": 64, "chip": {"shape": "gaussian", "Tc": 1},
    "code": {"values": [1, [0, 1], -1]}, "delays": {"min": -2, "max": 2, "count": 5},
    "doppler": {"kind": "velocity", "min": -300, "max": 300, "count": 3, "f0": 1e9},
    "definition": "speiser_form", "normalization": "raw",
    "interpolator": {"method": "windowed_sinc", "taps": 16, "beta": 6},
    "mask": {"tau_half_width": 1, "nu_half_width": 3},
    "frame": {"mother": {"shape": "mexican_hat"}, "fs": 16, "gamma0": 2, "tau0": 1,
              "m_range": [-1, 1], "n_range": [-3, 3], "K": 3.5, "dual_mode": "direct", "certify": 10},
    "seed": 7, "threads": 2, "out": "x.csv"})";
  const io::RunConfig c = parse(text);
  EXPECT_EQ(c.interp, Interpolator::windowed_sinc(16, 6.0));
  EXPECT_EQ(c.code->values.size(), 3u);
  EXPECT_EQ(c.code->values[1], cplx(0, 1));
  EXPECT_EQ(c.frame->dual_mode, frame::DualMode::direct);
  EXPECT_EQ(c.frame->K, 3.5);
  EXPECT_EQ(c.mask->nu_half_width, 3.0);
  EXPECT_FALSE(c.mask->gamma_half_width.has_value());
  EXPECT_EQ(io::parse_config(io::to_json(c)), c);
}

TEST(Config, RejectsUnknownKeysAtEveryLevel) {
  EXPECT_THROW(parse(R"({"version": 1, "colour": 1})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "chip": {"shape": "rectangular", "Tc": 1, "x": 0}})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "delays": {"min": 0, "max": 1, "count": 2, "step": 1}})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "frame": {"mother": {"shape": "morlet", "sigma": 1}}})"), InvalidArgument);
}

TEST(Config, RejectsBadValues) {
  EXPECT_THROW(parse(R"({})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 2})"), InvalidArgument);
  EXPECT_THROW(parse(R"([1])"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "fs": -1})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "fs": "fast"})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "code": {"barker": 6}})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "code": {"barker": 13, "values": [1]}})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "code": {"values": [2]}})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "definition": "chi9"})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "normalization": "energy"})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "interpolator": {"method": "windowed_sinc", "taps": 7}})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "doppler": {"kind": "velocity", "min": 0, "max": 1, "count": 2}})"),
               InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "doppler": {"kind": "shift_frequency", "param": "nu_T",
                          "min": 0, "max": 1, "count": 2, "f0": 1}})"),
               InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "frame": {"m_range": [2, 1]}})"), InvalidArgument);
  EXPECT_THROW(parse(R"({"version": 1, "train": {"N": 0, "T": 1}})"), InvalidArgument);
}

TEST(Doppler, NuTAxisIsExactAtCentre) {
  const io::RunConfig c = parse(kTrainConfig);
  const DopplerAxis axis = io::build_doppler(*c.doppler, c.train->T);
  ASSERT_EQ(axis.size(), 101u);
  EXPECT_EQ(axis.gamma(50), 1.0);
  EXPECT_NEAR(axis.nu(100) * 26e-6, 0.1, 1e-9);
  EXPECT_NEAR(axis.nu(0) * 26e-6, -0.1, 1e-9);
  EXPECT_THROW(io::build_doppler(*c.doppler, std::nullopt), InvalidArgument);
}

TEST(Doppler, ShiftAndVelocityAxes) {
  io::DopplerSpec s;
  s.kind = DopplerKind::shift_frequency;
  s.param = "nu";
  s.grid = {-1.0, 1.0, 3};
  EXPECT_EQ(io::build_doppler(s, std::nullopt).values, (std::vector<double>{-1.0, 0.0, 1.0}));
  s.kind = DopplerKind::velocity;
  s.param = "velocity";
  s.f0 = 1e9;
  EXPECT_NEAR(io::build_doppler(s, std::nullopt).gamma(2), 1.0 + 2.0 / kSpeedOfLight, 1e-16);
}

TEST(Files, AtomicWriteAndRead) {
  const auto dir = std::filesystem::temp_directory_path() / "affwave_io_test";
  std::filesystem::remove_all(dir);
  const std::string path = (dir / "sub" / "a.json").string();
  io::write_text_file(path, "{\"a\": 1}\n");
  EXPECT_EQ(io::read_json_file(path).at("a"), 1);
  EXPECT_FALSE(std::filesystem::exists(path + ".tmp"));
  io::write_text_file(path, "not json");
  EXPECT_THROW(io::read_json_file(path), InvalidArgument);
  EXPECT_THROW(io::read_json_file((dir / "missing.json").string()), InvalidArgument);
  std::filesystem::remove_all(dir);
}

TEST(Reports, SidelobeAndBoundsJson) {
  design::SidelobeReport r;
  r.peak = 1.0;
  r.psl_db = -13.5;
  r.mask.tau_half_width = 1e-6;
  const json j = io::to_json(r);
  EXPECT_EQ(j.at("psl_db"), -13.5);
  EXPECT_EQ(j.at("isl_db"), design::kFloorDb);

  io::BoundsReportInput in;
  in.gamma0 = 2.0;
  in.tau0 = 1.0;
  in.bounds.A = 1.0;
  in.bounds.B = 2.0;
  in.bounds.rank = 3;
  in.bounds.iterations_upper = 4;
  in.bounds.iterations_lower = 5;
  const json b = io::bounds_report(in);
  EXPECT_EQ(b.at("ratio"), 2.0);
  EXPECT_EQ(b.at("iterations").at("total"), 9);
  EXPECT_FALSE(b.contains("dual"));
  EXPECT_FALSE(b.contains("certification"));
}
