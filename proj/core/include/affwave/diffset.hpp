// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace affwave::diffset {

/// Singer parameters: prime q and power constant d >= 1.
struct SingerParams {
  std::uint32_t q = 0;
  std::uint32_t d = 0;

  /// Throws InvalidArgument unless q is prime, d >= 1 and q^(d+1) - 1 < 2^32.
  void validate() const;

  /// (q^(d+1) - 1) / (q - 1).
  std::uint64_t N() const;
  /// (q^d - 1) / (q - 1); the set size k.
  std::uint64_t C1() const;
  /// (q^(d-1) - 1) / (q - 1); the replication count lambda.
  std::uint64_t C2() const;
};

/// Cyclic (N, k, lambda) difference set.
struct DifferenceSet {
  std::uint64_t N = 0;
  std::uint64_t k = 0;
  std::uint64_t lambda = 0;
  std::vector<std::uint64_t> elements;

  bool contains(std::uint64_t x) const;
  bool operator==(const DifferenceSet&) const = default;
};

struct VerifyResult {
  bool valid = false;
  /// histogram[r] = number of ordered pairs (a, b), a != b, with a - b = r
  /// (mod N). Empty when the input is structurally malformed.
  std::vector<std::uint64_t> histogram;
  std::string reason;
};

/// {i : Tr(g^i) = 0, 0 <= i < N} for the deterministic primitive element g of
/// GF(q^(d+1)).
DifferenceSet singer_construct(const SingerParams& params);

/// Exact brute-force check over all k(k-1) ordered differences. Never throws;
/// malformed sets (out of range, unsorted, duplicates, wrong k, N < 2) come
/// back invalid with a reason.
VerifyResult verify(const DifferenceSet& ds);

/// mu = sqrt((N - C1) / (C1 (N - 1))).
double welch_bound(const SingerParams& params);
double welch_bound(std::uint64_t N, std::uint64_t k);

/// {(x + s) mod N}, re-sorted.
DifferenceSet translate(const DifferenceSet& ds, std::uint64_t s);

/// {(t x + s) mod N}, re-sorted; t must be coprime to N.
DifferenceSet affine_image(const DifferenceSet& ds, std::uint64_t t,
                           std::uint64_t s);

struct Equivalence {
  std::uint64_t multiplier = 1;
  std::uint64_t shift = 0;
};

/// Smallest (t, s) in lexicographic order with t coprime to N such that
/// affine_image(from, t, s) == to, or nullopt when the sets are not
/// multiplier-equivalent.
std::optional<Equivalence> find_equivalence(const DifferenceSet& from,
                                            const DifferenceSet& to);

/// JSON object {"N", "k", "lambda", "elements"}.
void to_json(nlohmann::json& j, const DifferenceSet& ds);
/// Strict parse: exactly the four keys, non-negative integers only.
/// Throws InvalidArgument on malformed input.
void from_json(const nlohmann::json& j, DifferenceSet& ds);

}  // namespace affwave::diffset
