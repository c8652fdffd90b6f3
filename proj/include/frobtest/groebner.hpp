#pragma once

#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "frobtest/caps.hpp"
#include "frobtest/linalg.hpp"
#include "frobtest/polynomial.hpp"

namespace frobtest {

/// Reduced Groebner basis: monic, pairwise reduced, ascending by leading
/// monomial. Unique for a given ideal and order.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> elements);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& elements() const;
  bool is_unit() const;
  bool is_zero() const { return elements().empty(); }

  /// Remainder of f; zero iff f is in the ideal.
  Polynomial reduce(const Polynomial& f, const Caps& caps = {}) const;
  bool contains(const Polynomial& f, const Caps& caps = {}) const;
  /// True when some leading monomial divides m (m is in the initial ideal).
  bool in_initial_ideal(const Monomial& m) const;
  std::vector<Monomial> leading_monomials() const;

  bool operator==(const GroebnerBasis& o) const { return elements() == o.elements(); }

 private:
  struct Impl;
  RingPtr ring_;
  std::shared_ptr<const Impl> impl_;  // shared: copies are cheap
};

/// Finite generator list in an ambient ring, with a lazily computed and
/// shared reduced Groebner basis. Zero generators are dropped and the rest are
/// put in a deterministic order (leading monomial, then term count).
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  static Ideal zero(RingPtr ring) { return Ideal(std::move(ring), {}); }
  static Ideal unit(const RingPtr& ring);
  /// The ideal of all variables.
  static Ideal maximal(const RingPtr& ring);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  GroebnerBasis groebner(const Caps& caps = {}) const;

  Ideal operator+(const Ideal& o) const;
  Ideal with(const Polynomial& f) const;

  bool contains(const Polynomial& f, const Caps& caps = {}) const;
  bool contains(const Ideal& o, const Caps& caps = {}) const;
  bool equals(const Ideal& o, const Caps& caps = {}) const;
  bool is_unit(const Caps& caps = {}) const { return groebner(caps).is_unit(); }
  bool is_homogeneous() const;

  /// Ideal generated by the reduced Groebner basis.
  Ideal reduced(const Caps& caps = {}) const;

  std::string to_string() const;

 private:
  struct Cache;
  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

/// Buchberger's algorithm with the Gebauer-Moeller pair criteria and the
/// normal selection strategy. Throws Error(CapExceeded) on the step or
/// degree budget.
GroebnerBasis groebner_basis(const Ideal& ideal, const Caps& caps = {});

/// Checks that every S-polynomial of `gb` reduces to zero.
bool buchberger_certificate(const GroebnerBasis& gb, const Caps& caps = {});

Polynomial normal_form(const Polynomial& f, const Ideal& ideal, const Caps& caps = {});

/// (I : f). Zero-dimensional I uses linear algebra on standard monomials,
/// otherwise the elimination route (I cap (f)) / f.
Ideal colon_ideal(const Ideal& ideal, const Polynomial& f, const Caps& caps = {});
Ideal colon_ideal_elimination(const Ideal& ideal, const Polynomial& f, const Caps& caps = {});
Ideal colon_ideal_linear(const Ideal& ideal, const Polynomial& f, const Caps& caps = {});
/// (I : J) as the intersection of the colons by J's generators.
Ideal colon_ideal(const Ideal& ideal, const Ideal& by, const Caps& caps = {});

Ideal intersect(const Ideal& a, const Ideal& b, const Caps& caps = {});

/// (I : J^infinity) by iterating I_k = (I_{k-1} : J) until I_k = I_{k-1}.
/// Returns the stable ideal and the number of colon steps taken.
std::pair<Ideal, int> saturate(const Ideal& ideal, const Ideal& by, const Caps& caps = {});

/// Krull dimension of S/I from the initial ideal; -1 for the unit ideal.
int dimension(const Ideal& ideal, const Caps& caps = {});

/// True when the radical of I is (x_1..x_n): I is zero-dimensional and every
/// variable is nilpotent modulo I.
bool is_maximal_primary(const Ideal& ideal, const Caps& caps = {});

/// dim_{F_p} S/I; throws NotArtinian when dimension(I) > 0.
std::uint64_t length_artinian(const Ideal& ideal, const Caps& caps = {});

/// Monomials outside the initial ideal of a zero-dimensional GB, ascending.
std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, const Caps& caps = {});
/// Standard monomials of exactly the given degree (any dimension), ascending.
std::vector<Monomial> standard_monomials_of_degree(const GroebnerBasis& gb, std::uint32_t degree);

/// Coefficient relations among polynomials: basis of {c : sum c_k f_k = 0}.
/// Throws CapExceeded when the elimination would store more than
/// caps.max_matrix coefficients.
std::vector<FpVector> linear_relations(const std::vector<Polynomial>& polys, const RingPtr& ring,
                                       const Caps& caps = {});

/// Embeds a polynomial into a ring whose variables are a superset, mapping
/// variable i of the source to `index_map[i]` of the target.
Polynomial map_variables(const Polynomial& f, const RingPtr& target,
                         const std::vector<int>& index_map);

/// Drops all memoised Groebner bases (tests use this to time cold runs).
void clear_groebner_cache();

}  // namespace frobtest
