#pragma once

#include <vector>

#include "frobtest/certified.hpp"
#include "frobtest/presented_ring.hpp"

namespace frobtest {

/// I^[p^e]: generated by the p^e-th powers of the given generators.
Ideal frobenius_power(const Ideal& ideal, unsigned e);

/// Smallest J with K contained in J^[p^e]. Each generator is expanded over the
/// basis {monomials with all exponents < p^e} of S as a module over S^(p^e);
/// the p^e-th roots of the coefficient polynomials generate the root.
Ideal frobenius_root(const Ideal& ideal, unsigned e);

/// {f in S : f^(p^e) in K}. Uses linear algebra on standard monomials when K
/// is zero-dimensional and elimination in S[y] (y_i - x_i^(p^e)) otherwise.
Ideal frobenius_preimage(const Ideal& ideal, unsigned e, const Caps& caps = {});
Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Caps& caps = {});
/// {f in S : f^(p^e) * multiplier in K} for zero-dimensional K. With e = 0
/// this is the colon (K : multiplier).
Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Polynomial& multiplier,
                                const Caps& caps = {});
/// Same preimage given an m-primary ideal `known` already inside it: only the
/// standard monomials of `known` are examined, so the linear system has at
/// most length(S/known) columns. Throws InvalidArgument if `known` is not
/// contained in the preimage.
Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Ideal& known, const Caps& caps = {});
/// {f in S : f^(p^e) * multiplier in K}, given `known` inside it as above.
Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Polynomial& multiplier, const Ideal& known,
                                const Caps& caps = {});
Ideal frobenius_preimage_elimination(const Ideal& ideal, unsigned e, const Caps& caps = {});

struct ClosureWitness {
  Polynomial generator;  // element of I^F outside I + a
  unsigned exponent;     // least e with generator^(p^e) in I^[p^e] + a
};

struct ClosureResult {
  Ideal closure;  // pulled back to S, contains I + a
  CertifiedValue fte;
  std::vector<ClosureWitness> witnesses;
  /// chain[e] = {x : x^(p^e) in I^[p^e] + a}, for every e computed.
  std::vector<Ideal> chain;
};

/// Frobenius closure of I (given by ambient generators) in R. The chain
/// above is computed until it repeats `caps.window` times in a row or
/// `caps.max_e` is reached (TRUNCATED).
ClosureResult frobenius_closure(const Ideal& ideal, const PresentedRing& ring, const Caps& caps = {});

CertifiedValue frobenius_test_exponent(const Ideal& ideal, const PresentedRing& ring,
                                       const Caps& caps = {});

}  // namespace frobtest
