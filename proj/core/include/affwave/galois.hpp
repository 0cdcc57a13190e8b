// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace affwave::galois {

bool is_prime(std::uint64_t n);

/// Distinct prime factors of n in increasing order (trial division).
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Integer arithmetic modulo a prime q.
class PrimeField {
 public:
  explicit PrimeField(std::uint32_t q);

  std::uint32_t modulus() const { return q_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// Multiplicative inverse; throws InvalidArgument for a == 0.
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t q_;
};

/// True iff the monic polynomial with coefficients `poly` (lowest degree
/// first, poly.back() == 1) has no monic factor of degree 1..deg/2 over GF(q).
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t q);

class ExtFieldElement;

/// GF(q^m) realised as GF(q)[t] / (f(t)) for a monic irreducible f of
/// degree m. Immutable once built; share through ExtFieldPtr.
class ExtField : public std::enable_shared_from_this<ExtField> {
 public:
  /// Builds GF(q^m) with the first monic irreducible polynomial of degree m,
  /// where candidates are ordered by the integer sum(c_i * q^i) of their
  /// lower coefficients. Throws InvalidArgument when q is not prime, m == 0,
  /// or q^m - 1 >= 2^32.
  static std::shared_ptr<const ExtField> build(std::uint32_t q,
                                               std::uint32_t m);

  std::uint32_t characteristic() const { return base_.modulus(); }
  std::uint32_t degree() const { return m_; }
  /// q^m.
  std::uint64_t size() const { return size_; }
  const PrimeField& base() const { return base_; }
  /// Defining polynomial, lowest degree first, m + 1 entries, leading 1.
  const std::vector<std::uint32_t>& modulus_poly() const { return poly_; }

  ExtFieldElement zero() const;
  ExtFieldElement one() const;
  /// Element whose coefficients are the base-q digits of `index`
  /// (coefficient of t^i is digit i). index < size().
  ExtFieldElement element(std::uint64_t index) const;
  ExtFieldElement element(std::vector<std::uint32_t> coeffs) const;
  /// Embedding of the base field.
  ExtFieldElement scalar(std::uint32_t c) const;

  bool same_as(const ExtField& other) const;
  std::string describe() const;

 private:
  ExtField(std::uint32_t q, std::uint32_t m, std::vector<std::uint32_t> poly);

  PrimeField base_;
  std::uint32_t m_;
  std::uint64_t size_;
  std::vector<std::uint32_t> poly_;
};

using ExtFieldPtr = std::shared_ptr<const ExtField>;

/// Element of GF(q^m): m coordinates over GF(q) in the polynomial basis.
class ExtFieldElement {
 public:
  ExtFieldElement(ExtFieldPtr field, std::vector<std::uint32_t> coeffs);

  const ExtField& field() const { return *field_; }
  const ExtFieldPtr& field_ptr() const { return field_; }
  const std::vector<std::uint32_t>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_one() const;
  /// Inverse of ExtField::element(index).
  std::uint64_t index() const;

  ExtFieldElement operator+(const ExtFieldElement& rhs) const;
  ExtFieldElement operator-(const ExtFieldElement& rhs) const;
  ExtFieldElement operator-() const;
  ExtFieldElement operator*(const ExtFieldElement& rhs) const;
  /// Multiplication by a base-field scalar.
  ExtFieldElement scaled(std::uint32_t c) const;
  ExtFieldElement pow(std::uint64_t e) const;
  /// Throws InvalidArgument for zero.
  ExtFieldElement inverse() const;

  bool operator==(const ExtFieldElement& rhs) const;

 private:
  void require_same_field(const ExtFieldElement& rhs) const;

  ExtFieldPtr field_;
  std::vector<std::uint32_t> coeffs_;
};

ExtFieldElement mul(const ExtFieldElement& x, const ExtFieldElement& y);

/// Multiplicative order of a nonzero element.
std::uint64_t multiplicative_order(const ExtFieldElement& x);

/// First element, in ExtField::element(index) order, whose multiplicative
/// order is q^m - 1. Throws InvalidArgument for fields with fewer than
/// 3 elements.
ExtFieldElement find_primitive(const ExtField& field);

/// Tr(x) = x + x^q + ... + x^(q^(m-1)), returned as its representative in
/// [0, q).
std::uint32_t trace_to_base(const ExtFieldElement& x);

}  // namespace affwave::galois
