// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The affwave Authors

#include "affwave/galois.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "affwave/error.hpp"

namespace affwave::galois {

namespace {

constexpr std::uint64_t kSizeCap = std::uint64_t{1} << 32;

// Reduces `r` (lowest degree first) modulo the monic polynomial `divisor`
// in place; only the low deg(divisor) coefficients are meaningful afterwards.
void reduce_monic(std::vector<std::uint64_t>& r,
                  std::span<const std::uint32_t> divisor, std::uint32_t q) {
  const std::size_t d = divisor.size() - 1;
  for (std::size_t k = r.size(); k-- > d;) {
    const std::uint64_t c = r[k] % q;
    r[k] = 0;
    if (c == 0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      // r[k - d + i] -= c * divisor[i]
      const std::uint64_t sub = (c * divisor[i]) % q;
      r[k - d + i] = (r[k - d + i] % q + q - sub) % q;
    }
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t p = 3; p * p <= n; p += 2) {
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

// ---------------------------------------------------------------------------
// PrimeField

PrimeField::PrimeField(std::uint32_t q) : q_(q) {
  if (!is_prime(q)) {
    throw InvalidArgument("PrimeField: modulus " + std::to_string(q) +
                          " is not prime");
  }
}

std::uint32_t PrimeField::add(std::uint32_t a, std::uint32_t b) const {
  return static_cast<std::uint32_t>((std::uint64_t{a} + b) % q_);
}

std::uint32_t PrimeField::sub(std::uint32_t a, std::uint32_t b) const {
  return static_cast<std::uint32_t>((std::uint64_t{a} + q_ - b % q_) % q_);
}

std::uint32_t PrimeField::mul(std::uint32_t a, std::uint32_t b) const {
  return static_cast<std::uint32_t>((std::uint64_t{a} * b) % q_);
}

std::uint32_t PrimeField::neg(std::uint32_t a) const {
  return a % q_ == 0 ? 0 : q_ - a % q_;
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  std::uint64_t result = 1 % q_;
  std::uint64_t base = a % q_;
  while (e > 0) {
    if (e & 1) result = result * base % q_;
    base = base * base % q_;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a % q_ == 0) throw InvalidArgument("PrimeField: zero has no inverse");
  return pow(a, q_ - 2);
}

// ---------------------------------------------------------------------------
// Irreducibility

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t q) {
  if (poly.size() < 2 || poly.back() != 1) {
    throw InvalidArgument("is_irreducible: polynomial must be monic, degree >= 1");
  }
  const std::size_t m = poly.size() - 1;
  if (m == 1) return true;
  // Degree-1 factors are roots; test them first since it is cheap.
  const PrimeField f(q);
  for (std::uint32_t x = 0; x < q; ++x) {
    std::uint32_t acc = 0;
    for (std::size_t i = m + 1; i-- > 0;) acc = f.add(f.mul(acc, x), poly[i]);
    if (acc == 0) return false;
  }
  std::vector<std::uint32_t> divisor;
  std::vector<std::uint64_t> rem;
  for (std::size_t d = 2; d <= m / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= q;
    divisor.assign(d + 1, 0);
    divisor[d] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        divisor[i] = static_cast<std::uint32_t>(c % q);
        c /= q;
      }
      rem.assign(poly.begin(), poly.end());
      reduce_monic(rem, divisor, q);
      if (std::all_of(rem.begin(), rem.begin() + d,
                      [](std::uint64_t v) { return v == 0; })) {
        return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// ExtField

ExtField::ExtField(std::uint32_t q, std::uint32_t m,
                   std::vector<std::uint32_t> poly)
    : base_(q), m_(m), size_(1), poly_(std::move(poly)) {
  for (std::uint32_t i = 0; i < m; ++i) size_ *= q;
}

std::shared_ptr<const ExtField> ExtField::build(std::uint32_t q,
                                                std::uint32_t m) {
  if (!is_prime(q)) {
    throw InvalidArgument("ext_field_build: q = " + std::to_string(q) +
                          " is not prime");
  }
  if (m == 0) throw InvalidArgument("ext_field_build: degree m must be >= 1");
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    size *= q;
    if (size > kSizeCap) break;
  }
  if (size - 1 >= kSizeCap) {
    throw InvalidArgument("ext_field_build: q^m - 1 must be < 2^32");
  }

  std::vector<std::uint32_t> poly(m + 1, 0);
  poly[m] = 1;
  const std::uint64_t candidates = size;  // q^m choices of lower coefficients
  for (std::uint64_t code = 0; code < candidates; ++code) {
    std::uint64_t c = code;
    for (std::uint32_t i = 0; i < m; ++i) {
      poly[i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    if (is_irreducible(poly, q)) {
      return std::shared_ptr<const ExtField>(new ExtField(q, m, poly));
    }
  }
  // An irreducible polynomial of every degree exists over every GF(q).
  throw NumericalError("ext_field_build: no irreducible polynomial found");
}

ExtFieldElement ExtField::zero() const {
  return ExtFieldElement(shared_from_this(), std::vector<std::uint32_t>(m_, 0));
}

ExtFieldElement ExtField::one() const { return scalar(1); }

ExtFieldElement ExtField::scalar(std::uint32_t c) const {
  std::vector<std::uint32_t> coeffs(m_, 0);
  coeffs[0] = c % base_.modulus();
  return ExtFieldElement(shared_from_this(), std::move(coeffs));
}

ExtFieldElement ExtField::element(std::uint64_t index) const {
  if (index >= size_) {
    throw InvalidArgument("ExtField::element: index out of range");
  }
  std::vector<std::uint32_t> coeffs(m_);
  const std::uint32_t q = base_.modulus();
  for (std::uint32_t i = 0; i < m_; ++i) {
    coeffs[i] = static_cast<std::uint32_t>(index % q);
    index /= q;
  }
  return ExtFieldElement(shared_from_this(), std::move(coeffs));
}

ExtFieldElement ExtField::element(std::vector<std::uint32_t> coeffs) const {
  return ExtFieldElement(shared_from_this(), std::move(coeffs));
}

bool ExtField::same_as(const ExtField& other) const {
  return this == &other ||
         (base_.modulus() == other.base_.modulus() && m_ == other.m_ &&
          poly_ == other.poly_);
}

std::string ExtField::describe() const {
  std::ostringstream os;
  os << "GF(" << base_.modulus() << "^" << m_ << ") mod ";
  bool first = true;
  for (std::size_t i = poly_.size(); i-- > 0;) {
    if (poly_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0 || poly_[i] != 1) os << poly_[i];
    if (i >= 1) os << "t";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// ExtFieldElement

ExtFieldElement::ExtFieldElement(ExtFieldPtr field,
                                 std::vector<std::uint32_t> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (!field_) throw InvalidArgument("ExtFieldElement: null field");
  if (coeffs_.size() != field_->degree()) {
    throw InvalidArgument("ExtFieldElement: expected " +
                          std::to_string(field_->degree()) + " coefficients");
  }
  const std::uint32_t q = field_->characteristic();
  for (auto& c : coeffs_) c %= q;
}

void ExtFieldElement::require_same_field(const ExtFieldElement& rhs) const {
  if (!field_->same_as(*rhs.field_)) {
    throw InvalidArgument("ExtFieldElement: operands from different fields (" +
                          field_->describe() + " vs " +
                          rhs.field_->describe() + ")");
  }
}

bool ExtFieldElement::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [](std::uint32_t c) { return c == 0; });
}

bool ExtFieldElement::is_one() const {
  return coeffs_[0] == 1 &&
         std::all_of(coeffs_.begin() + 1, coeffs_.end(),
                     [](std::uint32_t c) { return c == 0; });
}

std::uint64_t ExtFieldElement::index() const {
  std::uint64_t idx = 0;
  const std::uint64_t q = field_->characteristic();
  for (std::size_t i = coeffs_.size(); i-- > 0;) idx = idx * q + coeffs_[i];
  return idx;
}

ExtFieldElement ExtFieldElement::operator+(const ExtFieldElement& rhs) const {
  require_same_field(rhs);
  std::vector<std::uint32_t> out(coeffs_.size());
  const auto& f = field_->base();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(coeffs_[i], rhs.coeffs_[i]);
  return ExtFieldElement(field_, std::move(out));
}

ExtFieldElement ExtFieldElement::operator-(const ExtFieldElement& rhs) const {
  require_same_field(rhs);
  std::vector<std::uint32_t> out(coeffs_.size());
  const auto& f = field_->base();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.sub(coeffs_[i], rhs.coeffs_[i]);
  return ExtFieldElement(field_, std::move(out));
}

ExtFieldElement ExtFieldElement::operator-() const {
  std::vector<std::uint32_t> out(coeffs_.size());
  const auto& f = field_->base();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.neg(coeffs_[i]);
  return ExtFieldElement(field_, std::move(out));
}

ExtFieldElement ExtFieldElement::operator*(const ExtFieldElement& rhs) const {
  require_same_field(rhs);
  const std::size_t m = coeffs_.size();
  const std::uint64_t q = field_->characteristic();
  std::vector<std::uint64_t> prod(2 * m - 1, 0);
  for (std::size_t i = 0; i < m; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < m; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{coeffs_[i]} * rhs.coeffs_[j]) % q;
    }
  }
  if (m > 1) reduce_monic(prod, field_->modulus_poly(), static_cast<std::uint32_t>(q));
  std::vector<std::uint32_t> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = static_cast<std::uint32_t>(prod[i] % q);
  return ExtFieldElement(field_, std::move(out));
}

ExtFieldElement ExtFieldElement::scaled(std::uint32_t c) const {
  std::vector<std::uint32_t> out(coeffs_.size());
  const auto& f = field_->base();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.mul(coeffs_[i], c % f.modulus());
  return ExtFieldElement(field_, std::move(out));
}

ExtFieldElement ExtFieldElement::pow(std::uint64_t e) const {
  ExtFieldElement result = field_->one();
  ExtFieldElement base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

ExtFieldElement ExtFieldElement::inverse() const {
  if (is_zero()) throw InvalidArgument("ExtFieldElement: zero has no inverse");
  return pow(field_->size() - 2);
}

bool ExtFieldElement::operator==(const ExtFieldElement& rhs) const {
  return field_->same_as(*rhs.field_) && coeffs_ == rhs.coeffs_;
}

ExtFieldElement mul(const ExtFieldElement& x, const ExtFieldElement& y) {
  return x * y;
}

// ---------------------------------------------------------------------------

std::uint64_t multiplicative_order(const ExtFieldElement& x) {
  if (x.is_zero()) throw InvalidArgument("multiplicative_order: zero element");
  std::uint64_t order = x.field().size() - 1;
  for (std::uint64_t p : prime_factors(order)) {
    while (order % p == 0 && x.pow(order / p).is_one()) order /= p;
  }
  return order;
}

ExtFieldElement find_primitive(const ExtField& field) {
  if (field.size() < 3) {
    throw InvalidArgument("find_primitive: field must have at least 3 elements");
  }
  const std::uint64_t group_order = field.size() - 1;
  const auto factors = prime_factors(group_order);
  for (std::uint64_t idx = 1; idx < field.size(); ++idx) {
    const ExtFieldElement g = field.element(idx);
    const bool primitive = std::none_of(
        factors.begin(), factors.end(),
        [&](std::uint64_t p) { return g.pow(group_order / p).is_one(); });
    if (primitive) return g;
  }
  throw NumericalError("find_primitive: no primitive element found");
}

std::uint32_t trace_to_base(const ExtFieldElement& x) {
  const ExtField& field = x.field();
  const std::uint32_t q = field.characteristic();
  ExtFieldElement acc = field.zero();
  ExtFieldElement conj = x;
  for (std::uint32_t i = 0; i < field.degree(); ++i) {
    acc = acc + conj;
    conj = conj.pow(q);
  }
  for (std::size_t i = 1; i < acc.coeffs().size(); ++i) {
    if (acc.coeffs()[i] != 0) {
      throw NumericalError("trace_to_base: trace left the base field");
    }
  }
  return acc.coeffs()[0];
}

}  // namespace affwave::galois
