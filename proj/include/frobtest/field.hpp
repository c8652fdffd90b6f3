#pragma once

#include <cstdint>

namespace frobtest {

/// Arithmetic in F_p on machine residues. All inputs must already be reduced.
class PrimeField {
 public:
  /// Throws InvalidArgument unless p is a prime below 2^31.
  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }

  std::uint32_t reduce(std::uint64_t v) const { return static_cast<std::uint32_t>(v % p_); }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint64_t n);

}  // namespace frobtest
