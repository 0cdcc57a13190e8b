// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/interpolate.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "affwave/error.hpp"

namespace affwave {

namespace {

constexpr double kSnapTol = 1e-9;
constexpr std::size_t kTableSize = 65537;

cplx sample_or_zero(std::span<const cplx> data, long i) {
  if (i < 0 || i >= static_cast<long>(data.size())) return {};
  return data[static_cast<std::size_t>(i)];
}

std::shared_ptr<const std::vector<double>> make_kaiser_table(double beta) {
  static std::mutex mu;
  static std::map<double, std::shared_ptr<const std::vector<double>>> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (auto it = cache.find(beta); it != cache.end()) return it->second;
  auto table = std::make_shared<std::vector<double>>(kTableSize);
  const double norm = std::cyl_bessel_i(0.0, beta);
  for (std::size_t k = 0; k < kTableSize; ++k) {
    const double v = static_cast<double>(k) / static_cast<double>(kTableSize - 1);
    (*table)[k] = std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - v)) / norm;
  }
  cache.emplace(beta, table);
  return table;
}

double keys(double s) {
  s = std::abs(s);
  if (s < 1.0) return (1.5 * s - 2.5) * s * s + 1.0;
  if (s < 2.0) return ((-0.5 * s + 2.5) * s - 4.0) * s + 2.0;
  return 0.0;
}

}  // namespace

Interpolator::Interpolator(InterpMethod method, int taps, double beta)
    : method_(method), taps_(taps), beta_(beta) {
  if (method_ == InterpMethod::windowed_sinc) table_ = make_kaiser_table(beta_);
}

Interpolator Interpolator::linear() { return {InterpMethod::linear, 2, 0.0}; }

Interpolator Interpolator::cubic() { return {InterpMethod::cubic, 4, 0.0}; }

Interpolator Interpolator::windowed_sinc(int taps, double beta) {
  if (taps < 8 || taps > 256 || taps % 2 != 0) {
    throw InvalidArgument("windowed_sinc: taps must be even, in [8, 256]");
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw InvalidArgument("windowed_sinc: beta must be finite and >= 0");
  }
  return {InterpMethod::windowed_sinc, taps, beta};
}

int Interpolator::half_width() const { return taps_ / 2; }

std::string Interpolator::describe() const {
  switch (method_) {
    case InterpMethod::linear: return "linear";
    case InterpMethod::cubic: return "cubic";
    case InterpMethod::windowed_sinc:
      return "windowed_sinc(taps=" + std::to_string(taps_) +
             ", beta=" + std::to_string(beta_) + ")";
  }
  return "?";
}

double Interpolator::kaiser(double u) const {
  const double v = u * u;
  if (v >= 1.0) return 0.0;
  const double pos = v * static_cast<double>(kTableSize - 1);
  const auto k = static_cast<std::size_t>(pos);
  const double f = pos - static_cast<double>(k);
  const auto& t = *table_;
  return k + 1 < kTableSize ? t[k] + f * (t[k + 1] - t[k]) : t[k];
}

cplx Interpolator::eval_sinc(std::span<const cplx> data, long i0,
                             double frac) const {
  const int h = taps_ / 2;
  const long first = i0 - h + 1;
  const long last = i0 + h;
  if (last < 0 || first >= static_cast<long>(data.size())) return {};

  double w[256];
  double d_of[256];
  const double s = std::sin(kPi * frac);
  double m0 = 0, m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (int k = 0; k < taps_; ++k) {
    const long j = first + k;
    const double d = frac + static_cast<double>(i0 - j);
    const double sign = ((i0 - j) % 2 == 0) ? 1.0 : -1.0;
    const double wk = sign * s / (kPi * d) * kaiser(d / h);
    w[k] = wk;
    d_of[k] = d;
    const double d2 = d * d;
    m0 += wk;
    m1 += wk * d;
    m2 += wk * d2;
    m3 += wk * d2 * d;
    m4 += wk * d2 * d2;
  }
  // Quadratic c0 + c1 d + c2 d^2 with sum w' d^p = [p == 0] for p = 0, 1, 2.
  const double a = m2 * m4 - m3 * m3;
  const double b = m1 * m4 - m2 * m3;
  const double c = m1 * m3 - m2 * m2;
  const double det = m0 * a - m1 * b + m2 * c;
  const double c0 = a / det;
  const double c1 = -b / det;
  const double c2 = c / det;

  cplx acc{};
  for (int k = 0; k < taps_; ++k) {
    const long j = first + k;
    if (j < 0 || j >= static_cast<long>(data.size())) continue;
    const double d = d_of[k];
    acc += data[static_cast<std::size_t>(j)] * (w[k] * (c0 + d * (c1 + d * c2)));
  }
  return acc;
}

cplx Interpolator::eval(std::span<const cplx> data, double x) const {
  const double r = std::round(x);
  if (std::abs(x - r) <= kSnapTol) return sample_or_zero(data, static_cast<long>(r));
  const double fl = std::floor(x);
  const auto i0 = static_cast<long>(fl);
  const double frac = x - fl;
  switch (method_) {
    case InterpMethod::linear:
      return sample_or_zero(data, i0) * (1.0 - frac) +
             sample_or_zero(data, i0 + 1) * frac;
    case InterpMethod::cubic: {
      cplx acc{};
      for (long j = i0 - 1; j <= i0 + 2; ++j) {
        acc += sample_or_zero(data, j) * keys(x - static_cast<double>(j));
      }
      return acc;
    }
    case InterpMethod::windowed_sinc:
      return eval_sinc(data, i0, frac);
  }
  return {};
}

std::string to_string(InterpMethod m) {
  switch (m) {
    case InterpMethod::linear: return "linear";
    case InterpMethod::cubic: return "cubic";
    case InterpMethod::windowed_sinc: return "windowed_sinc";
  }
  return "?";
}

InterpMethod interp_method_from_string(const std::string& name) {
  if (name == "linear") return InterpMethod::linear;
  if (name == "cubic") return InterpMethod::cubic;
  if (name == "windowed_sinc") return InterpMethod::windowed_sinc;
  throw InvalidArgument("unknown interpolator '" + name + "'");
}

}  // namespace affwave
