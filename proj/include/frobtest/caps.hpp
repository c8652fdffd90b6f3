#pragma once

#include <cstdint>

namespace frobtest {

/// Resource caps. Hitting any of them raises Error(CapExceeded), which the
/// certificate-producing layers turn into a TRUNCATED status.
struct Caps {
  std::uint64_t gb_steps = 1'000'000;  // reduction steps per Groebner basis
  std::uint32_t gb_degree = 64;        // max degree of any pair lcm / input
  unsigned max_e = 4;                  // Frobenius exponent search bound
  unsigned window = 2;                 // repeats required to call a chain stationary
  unsigned max_stage = 4;              // Koszul tower length T
  unsigned max_s = 6;                  // limit-closure chain bound
  unsigned degree_cap = 8;             // graded Koszul linear algebra bound
  std::uint64_t max_basis = 2'000'000; // standard monomials enumerated per quotient
  std::uint64_t max_matrix = 1ull << 26; // coefficients stored by one linear elimination
};

}  // namespace frobtest
