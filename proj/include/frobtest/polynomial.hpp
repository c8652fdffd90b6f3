#pragma once

#include <cstdint>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "frobtest/field.hpp"
#include "frobtest/monomial.hpp"

namespace frobtest {

/// Ambient polynomial ring F_p[x_1..x_n] with a monomial order.
class PolyRing {
 public:
  PolyRing(std::uint32_t p, std::vector<std::string> names, MonomialOrder order);

  std::uint32_t characteristic() const { return field_.characteristic(); }
  const PrimeField& field() const { return field_; }
  std::size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const MonomialOrder& order() const { return order_; }

  /// Index of a variable name, or -1.
  int index_of(const std::string& name) const;

  Monomial one() const { return Monomial(nvars()); }
  Monomial var(std::size_t i, std::uint32_t exponent = 1) const;

  bool same_as(const PolyRing& other) const;

 private:
  PrimeField field_;
  std::vector<std::string> names_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

/// Builds a ring; the default order is grevlex with declaration-order priority.
RingPtr make_ring(std::uint32_t p, std::vector<std::string> names,
                  OrderKind kind = OrderKind::Grevlex);

struct Term {
  Monomial mono;
  std::uint32_t coeff;
  bool operator==(const Term&) const = default;
};

/// Polynomial over F_p in canonical form: terms strictly descending in the
/// ring order, no zero coefficients. The zero polynomial has no terms.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}
  /// Builds from arbitrary terms: sorts, combines and drops zeros.
  Polynomial(RingPtr ring, std::vector<Term> terms);

  /// Adopts terms that are already canonical (no sorting, no checks).
  static Polynomial from_canonical(RingPtr ring, std::vector<Term> terms);
  static Polynomial constant(RingPtr ring, std::int64_t c);
  static Polynomial monomial(RingPtr ring, const Monomial& m, std::uint32_t c = 1);
  static Polynomial variable(RingPtr ring, std::size_t i, std::uint32_t exponent = 1);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Monomial& leading_monomial() const { return terms_.front().mono; }
  std::uint32_t leading_coefficient() const { return terms_.front().coeff; }
  /// Max total degree over terms; 0 for the zero polynomial.
  std::uint32_t degree() const;
  bool is_homogeneous() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(std::uint32_t c) const;
  Polynomial mul_term(const Monomial& m, std::uint32_t c) const;
  Polynomial pow(std::uint64_t k) const;
  Polynomial monic() const;

  /// f^(p^e), computed termwise: the Frobenius is a ring endomorphism and
  /// c^p = c on F_p.
  Polynomial frobenius_power(unsigned e) const;

  /// Exact division by a nonzero polynomial; throws if not divisible.
  Polynomial exact_div(const Polynomial& d) const;

  std::string to_string() const;

  /// Canonical-form check used by tests.
  bool is_canonical() const;

  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

  /// Strictly in terms of raw term sequence, for deterministic sorting.
  bool canonical_less(const Polynomial& o) const;

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << f.to_string(); }

/// p^e with overflow check.
std::uint64_t checked_prime_power(std::uint32_t p, unsigned e);

}  // namespace frobtest
