// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/diffset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <nlohmann/json.hpp>

#include "affwave/error.hpp"
#include "affwave/galois.hpp"

namespace affwave::diffset {

namespace {

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

void SingerParams::validate() const {
  if (!galois::is_prime(q)) {
    throw InvalidArgument("singer: q = " + std::to_string(q) + " is not prime");
  }
  if (d < 1) throw InvalidArgument("singer: d must be >= 1");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i <= d; ++i) {
    size *= q;
    if (size > (std::uint64_t{1} << 32)) {
      throw InvalidArgument("singer: q^(d+1) - 1 must be < 2^32");
    }
  }
  if (size - 1 >= (std::uint64_t{1} << 32)) {
    throw InvalidArgument("singer: q^(d+1) - 1 must be < 2^32");
  }
}

std::uint64_t SingerParams::N() const { return (ipow(q, d + 1) - 1) / (q - 1); }
std::uint64_t SingerParams::C1() const { return (ipow(q, d) - 1) / (q - 1); }
std::uint64_t SingerParams::C2() const { return (ipow(q, d - 1) - 1) / (q - 1); }

bool DifferenceSet::contains(std::uint64_t x) const {
  return std::binary_search(elements.begin(), elements.end(), x);
}

DifferenceSet singer_construct(const SingerParams& params) {
  params.validate();
  const auto field = galois::ExtField::build(params.q, params.d + 1);
  const auto g = galois::find_primitive(*field);
  DifferenceSet ds;
  ds.N = params.N();
  ds.k = params.C1();
  ds.lambda = params.C2();
  auto power = field->one();
  for (std::uint64_t i = 0; i < ds.N; ++i) {
    if (galois::trace_to_base(power) == 0) ds.elements.push_back(i);
    power = power * g;
  }
  if (ds.elements.size() != ds.k) {
    throw NumericalError("singer_construct: trace kernel has " +
                         std::to_string(ds.elements.size()) +
                         " elements, expected " + std::to_string(ds.k));
  }
  return ds;
}

VerifyResult verify(const DifferenceSet& ds) {
  VerifyResult out;
  if (ds.N < 2) {
    out.reason = "N must be >= 2";
    return out;
  }
  if (ds.elements.size() != ds.k) {
    out.reason = "element count " + std::to_string(ds.elements.size()) +
                 " differs from k = " + std::to_string(ds.k);
    return out;
  }
  for (std::size_t i = 0; i < ds.elements.size(); ++i) {
    if (ds.elements[i] >= ds.N) {
      out.reason = "element " + std::to_string(ds.elements[i]) + " out of range";
      return out;
    }
    if (i > 0 && ds.elements[i] <= ds.elements[i - 1]) {
      out.reason = "elements must be sorted and distinct";
      return out;
    }
  }
  out.histogram.assign(ds.N, 0);
  for (std::uint64_t a : ds.elements) {
    for (std::uint64_t b : ds.elements) {
      if (a != b) ++out.histogram[(a + ds.N - b) % ds.N];
    }
  }
  for (std::uint64_t r = 1; r < ds.N; ++r) {
    if (out.histogram[r] != ds.lambda) {
      out.reason = "difference " + std::to_string(r) + " occurs " +
                   std::to_string(out.histogram[r]) + " times, expected " +
                   std::to_string(ds.lambda);
      return out;
    }
  }
  out.valid = true;
  return out;
}

double welch_bound(std::uint64_t N, std::uint64_t k) {
  if (N < 2 || k == 0 || k > N) {
    throw InvalidArgument("welch_bound: need N >= 2 and 0 < k <= N");
  }
  return std::sqrt(static_cast<double>(N - k) /
                   (static_cast<double>(k) * static_cast<double>(N - 1)));
}

double welch_bound(const SingerParams& params) {
  params.validate();
  return welch_bound(params.N(), params.C1());
}

DifferenceSet affine_image(const DifferenceSet& ds, std::uint64_t t,
                           std::uint64_t s) {
  if (ds.N == 0) throw InvalidArgument("affine_image: N = 0");
  if (std::gcd(t % ds.N, ds.N) != 1) {
    throw InvalidArgument("affine_image: multiplier must be coprime to N");
  }
  DifferenceSet out = ds;
  for (auto& x : out.elements) x = ((t % ds.N) * (x % ds.N) + s) % ds.N;
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

DifferenceSet translate(const DifferenceSet& ds, std::uint64_t s) {
  return affine_image(ds, 1, s);
}

std::optional<Equivalence> find_equivalence(const DifferenceSet& from,
                                            const DifferenceSet& to) {
  if (from.N != to.N || from.elements.size() != to.elements.size() ||
      from.elements.empty()) {
    return std::nullopt;
  }
  const std::uint64_t N = from.N;
  for (std::uint64_t t = 1; t < N; ++t) {
    if (std::gcd(t, N) != 1) continue;
    for (std::uint64_t s = 0; s < N; ++s) {
      // Cheap filter: the image of the first element must land in `to`.
      if (!to.contains((t * from.elements.front() + s) % N)) continue;
      if (affine_image(from, t, s).elements == to.elements) {
        return Equivalence{t, s};
      }
    }
  }
  return std::nullopt;
}

void to_json(nlohmann::json& j, const DifferenceSet& ds) {
  j = nlohmann::json{{"N", ds.N},
                     {"k", ds.k},
                     {"lambda", ds.lambda},
                     {"elements", ds.elements}};
}

void from_json(const nlohmann::json& j, DifferenceSet& ds) {
  if (!j.is_object()) throw InvalidArgument("difference set: expected object");
  for (const auto& [key, _] : j.items()) {
    if (key != "N" && key != "k" && key != "lambda" && key != "elements") {
      throw InvalidArgument("difference set: unknown key '" + key + "'");
    }
  }
  auto uint_field = [&](const char* key) -> std::uint64_t {
    if (!j.contains(key)) {
      throw InvalidArgument(std::string("difference set: missing '") + key + "'");
    }
    const auto& v = j.at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw InvalidArgument(std::string("difference set: '") + key +
                            "' must be a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  ds.N = uint_field("N");
  ds.k = uint_field("k");
  ds.lambda = uint_field("lambda");
  if (!j.contains("elements") || !j.at("elements").is_array()) {
    throw InvalidArgument("difference set: 'elements' must be an array");
  }
  ds.elements.clear();
  for (const auto& v : j.at("elements")) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw InvalidArgument("difference set: elements must be non-negative integers");
    }
    ds.elements.push_back(v.get<std::uint64_t>());
  }
}

}  // namespace affwave::diffset
