#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace frobtest {

/// Hard limit on ambient variables. User rings are limited to 8; the rest is
/// headroom for elimination rings built internally (a copy of every variable
/// plus a tag variable).
inline constexpr std::size_t kMaxVars = 17;

/// Dense exponent vector with cached total degree. Unused slots stay zero so
/// that equality and hashing can look at the whole array.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<std::uint32_t> exps);
  explicit Monomial(std::span<const std::uint32_t> exps);

  std::size_t nvars() const { return n_; }
  std::uint32_t degree() const { return degree_; }
  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }
  std::span<const std::uint32_t> exponents() const { return {exp_.data(), n_}; }

  /// Checked setter; keeps degree in sync.
  void set(std::size_t i, std::uint32_t value);

  bool is_one() const { return degree_ == 0; }
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  /// Checked product; throws Error(Overflow) instead of wrapping.
  Monomial operator*(const Monomial& other) const;
  /// Exact quotient; caller guarantees divisibility.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;
  /// Checked power m^k.
  Monomial pow(std::uint64_t k) const;

  /// Recomputes the degree from scratch (invariant check).
  bool degree_consistent() const;

  bool operator==(const Monomial& other) const {
    return n_ == other.n_ && exp_ == other.exp_;
  }
  /// Lexicographic comparison on raw exponents; only for use as a map key.
  bool raw_less(const Monomial& other) const { return exp_ < other.exp_; }

  std::size_t hash() const;

 private:
  std::array<std::uint32_t, kMaxVars> exp_{};
  std::uint32_t degree_ = 0;
  std::uint8_t n_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct MonomialRawLess {
  bool operator()(const Monomial& a, const Monomial& b) const { return a.raw_less(b); }
};

enum class OrderKind { Grevlex, Lex, GradedLex };

const char* to_string(OrderKind kind);
OrderKind order_kind_from_string(const std::string& name);

/// A monomial order: kind plus variable priority (priority[0] is the most
/// significant variable). When `block` > 0 the first `block` priority entries
/// form an elimination block compared by grevlex before anything else.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  MonomialOrder(OrderKind kind, std::vector<int> priority, int block = 0);

  static MonomialOrder standard(OrderKind kind, std::size_t nvars);

  OrderKind kind() const { return kind_; }
  const std::vector<int>& priority() const { return priority_; }
  int block() const { return block_; }

  /// Negative, zero or positive as a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;

  bool operator==(const MonomialOrder&) const = default;

 private:
  int compare_range(const Monomial& a, const Monomial& b, OrderKind kind, std::size_t from,
                    std::size_t to) const;

  OrderKind kind_ = OrderKind::Grevlex;
  std::vector<int> priority_;
  int block_ = 0;
};

}  // namespace frobtest
