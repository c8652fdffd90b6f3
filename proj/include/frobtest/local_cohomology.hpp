#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "frobtest/certified.hpp"
#include "frobtest/linalg.hpp"
#include "frobtest/presented_ring.hpp"

namespace frobtest {

/// Element of the Koszul cochain module K^i(x^t; R): one polynomial (reduced
/// modulo the relations) per symbol e_S, |S| = i, in the order of
/// KoszulComplex::subsets(i). `degree` is the internal degree, where e_S has
/// degree -t * deg(x_S). Representatives of H^0 modules use index 0, stage 0
/// and a single part.
struct Cochain {
  int index = 0;
  std::uint64_t stage = 0;
  std::int64_t degree = 0;
  std::vector<Polynomial> parts;
};

/// Finite-length module with an explicit coset basis.
struct CohomologyModule {
  int index = 0;
  std::uint64_t stage = 0;
  /// H^0 modules: the pair N in M with module M / N.
  std::optional<Ideal> sub, super;
  /// Basis representatives, ascending (by leading monomial for H^0 modules,
  /// by degree then echelon order for Koszul modules).
  std::vector<Cochain> basis;
  /// Koszul modules: highest degree with a nonzero piece (or lowest - 1).
  std::int64_t top_degree = 0;
  std::size_t length() const { return basis.size(); }
};

struct FrobeniusMapData {
  CohomologyModule source, target;
  FpMatrix matrix{0, 0};  // target length x source length
  bool relative = false;
  unsigned e = 1;
};

struct HSLReport {
  int degree = 0;  // cohomological index i
  CertifiedValue value;
  /// kernel_chain[e] = length of ker(F^e); kernel_chain[0] = 0.
  std::vector<std::size_t> kernel_chain;
  std::size_t length = 0;  // module length (for H^d: at the last sampled stage)
  bool nilpotent = false;
};

/// Homogeneous pieces R_k of a standard-graded presented ring, spanned by the
/// standard monomials of degree k.
class GradedPieces {
 public:
  explicit GradedPieces(PresentedRing ring, Caps caps = {});
  const PresentedRing& ring() const { return ring_; }
  const std::vector<Monomial>& basis(std::int64_t k) const;
  Polynomial reduce(const Polynomial& f) const;
  /// Coordinates of a reduced polynomial that is homogeneous of degree k.
  FpVector coordinates(const Polynomial& f, std::int64_t k) const;
  Polynomial polynomial(const FpVector& v, std::int64_t k) const;

 private:
  struct Piece {
    std::vector<Monomial> monomials;
    std::map<Monomial, std::size_t, MonomialRawLess> index;
  };
  const Piece& piece(std::int64_t k) const;
  PresentedRing ring_;
  Caps caps_;
  GroebnerBasis gb_;
  mutable std::map<std::int64_t, Piece> pieces_;
};

/// Koszul cochain complex K^*(x_1^t, ..., x_d^t; R) of a graded ring and a
/// homogeneous sequence, handled one internal degree at a time.
class KoszulComplex {
 public:
  KoszulComplex(std::shared_ptr<const GradedPieces> pieces, std::vector<Polynomial> x, std::uint64_t t);

  std::size_t length() const { return x_.size(); }
  const std::shared_ptr<const GradedPieces>& pieces_ptr() const { return pieces_; }
  std::uint64_t stage() const { return t_; }
  const GradedPieces& pieces() const { return *pieces_; }
  const std::vector<Polynomial>& sequence() const { return x_; }
  /// Subsets S of {0..d-1} with |S| = i as bit masks, ascending.
  const std::vector<std::uint32_t>& subsets(int i) const;
  /// Sum of deg(x_j) over j in S.
  std::int64_t weight(std::uint32_t mask) const;

  std::size_t dim(int i, std::int64_t n) const;
  /// Differential K^i_n -> K^(i+1)_n.
  FpMatrix differential(int i, std::int64_t n) const;

  FpVector coordinates(const Cochain& c) const;
  Cochain cochain(int i, std::int64_t n, const FpVector& v) const;
  Cochain zero(int i, std::int64_t n) const;

  bool is_cocycle(const Cochain& c) const;
  bool is_coboundary(const Cochain& c) const;
  /// Representatives of a basis of H^i_n, reduced against coboundaries.
  const std::vector<FpVector>& cohomology(int i, std::int64_t n) const;

  /// Multiplication of component S by x_S^(t' - t): the tower map to stage t'.
  Cochain tower(const Cochain& c, std::uint64_t target_stage) const;
  /// Componentwise p^e-th power; lands at stage p^e t and degree p^e n.
  Cochain frobenius(const Cochain& c, unsigned e) const;
  /// Multiplication by a homogeneous ring element.
  Cochain multiply(const Cochain& c, const Polynomial& f) const;
  /// Lowest internal degree with a nonzero component in K^i.
  std::int64_t min_degree(int i) const;

 private:
  struct Echelon;
  const Echelon& boundaries(int i, std::int64_t n) const;
  std::shared_ptr<const GradedPieces> pieces_;
  std::vector<Polynomial> x_;
  std::vector<Polynomial> xt_;  // x_j^t
  std::uint64_t t_;
  std::vector<std::vector<std::uint32_t>> subsets_;
  mutable std::map<std::pair<int, std::int64_t>, std::shared_ptr<Echelon>> boundaries_;
  mutable std::map<std::pair<int, std::int64_t>, std::vector<FpVector>> cohomology_;
};

/// The complexes K^*(x^t; R) for all stages t, built on demand.
class KoszulTower {
 public:
  KoszulTower(const PresentedRing& ring, std::vector<Polynomial> x, const Caps& caps = {});
  const KoszulComplex& at(std::uint64_t t) const;
  const GradedPieces& pieces() const { return *pieces_; }
  std::size_t length() const { return x_.size(); }
  /// True when the class of the cocycle c is zero in the direct limit,
  /// tested by mapping it to stage 2t.
  bool vanishes_in_limit(const Cochain& c) const;

 private:
  std::shared_ptr<const GradedPieces> pieces_;
  std::vector<Polynomial> x_;
  mutable std::map<std::uint64_t, std::unique_ptr<KoszulComplex>> stages_;
};

/// H^0_m(R/K) = (K + a : m^infinity) / (K + a).
CohomologyModule h0_module(const PresentedRing& ring, const Ideal& k, const Caps& caps = {});

/// Coordinates of an element of M in the basis of the H^0 module M / N.
FpVector h0_coordinates(const CohomologyModule& module, const Polynomial& f, const Caps& caps = {});

/// Relative Frobenius H^0_m(R/K) -> H^0_m(R/K^[p^e]), a + K -> a^(p^e) + K^[p^e].
FrobeniusMapData relative_frobenius_h0(const PresentedRing& ring, const Ideal& k, unsigned e,
                                       const Caps& caps = {});

/// HSL_R(H^0_m(R/q)): least e with ker(F_R^e) equal to the F_R-nilpotent part.
/// The nilpotent part is read off the Frobenius closure of q; for m-primary q
/// the result is checked against the Frobenius test exponent.
HSLReport hsl_relative_h0(const PresentedRing& ring, const Ideal& q, const Caps& caps = {});

/// Throws NotSystemOfParameters unless x is a system of parameters of R.
void require_system_of_parameters(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                  const Caps& caps = {});

/// Union over s of ((x^(t+s)) + a : (x_1...x_d)^s), computed until the chain
/// repeats caps.window times (CERTIFIED-WINDOW) or s reaches caps.max_s.
std::pair<Ideal, CertifiedValue> limit_closure(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                               std::uint64_t t, const Caps& caps = {});

/// HSL of the top local cohomology H^d_m(R), sampled at the given stages.
HSLReport hsl_top(const PresentedRing& ring, const std::vector<Polynomial>& x, const Caps& caps = {},
                  const std::vector<std::uint64_t>& stages = {1, 2});

/// H^i(x^t; R) in internal degrees up to caps.degree_cap. Throws
/// UnboundedSupport when the top degrees below the cap are not all zero.
CohomologyModule koszul_cohomology(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                   std::uint64_t t, int i, const Caps& caps = {});

/// Snapshot of H^i_m(R): the image of stage T-1 in stage T (T = max_stage),
/// accepted when the ranks of the tower maps t -> t+1 agree over the last
/// caps.window pairs.
std::pair<CohomologyModule, CertifiedValue> stable_cohomology(const PresentedRing& ring,
                                                              const std::vector<Polynomial>& x, int i,
                                                              const Caps& caps = {});

/// HSL(H^i_m(R)) for i < d. Degree 0 is computed exactly from h0_module.
HSLReport hsl_local_cohomology(const PresentedRing& ring, const std::vector<Polynomial>& x, int i,
                               const Caps& caps = {});

struct RingHSL {
  std::vector<HSLReport> degrees;  // i = 0..d
  CertifiedValue hsl;               // max over degrees
  CertifiedValue bound;             // sum_k C(d,k) HSL(H^k)
};

RingHSL hsl_ring(const PresentedRing& ring, const std::vector<Polynomial>& x, const Caps& caps = {});

}  // namespace frobtest
