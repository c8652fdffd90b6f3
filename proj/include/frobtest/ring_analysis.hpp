#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "frobtest/certified.hpp"
#include "frobtest/presented_ring.hpp"

namespace frobtest {

/// Candidate x_1..x_d with its validation results. Boolean flags are stored as
/// CertifiedValue with value 0 or 1.
struct ParameterSequence {
  std::vector<Polynomial> elements;
  CertifiedValue is_sop;
  CertifiedValue is_filter_regular;
  CertifiedValue is_standard;
  Ideal ideal() const;
  std::string to_string() const;
};

/// |x| = dim R and R / (x) has finite length.
CertifiedValue is_system_of_parameters(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                       const Caps& caps = {});

/// For each i, ((x_1..x_{i-1}) + a : x_i) lies in ((x_1..x_{i-1}) + a : m^infinity),
/// i.e. every colon quotient is m-torsion. This is equivalent to x_i avoiding
/// the associated primes of R / (x_1..x_{i-1}) other than m.
CertifiedValue is_filter_regular(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                 const Caps& caps = {});

/// Deterministic generator of F_p-combinations. Uses mt19937_64, whose output
/// sequence is fixed by the standard, and reduces modulo p directly so results
/// do not depend on the standard library's distributions.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

/// Replaces the generators of a parameter ideal by invertible combinations
/// until the sequence is filter-regular, trying the identity first. Within a
/// degree the combination matrix is an invertible constant matrix; lower-degree
/// generators may be added with homogeneous multipliers, so the ideal and the
/// homogeneity of the generators are preserved. Throws FailedAfterTries.
ParameterSequence make_filter_regular(const PresentedRing& ring, const std::vector<Polynomial>& q,
                                      std::uint64_t seed, unsigned tries = 64, const Caps& caps = {});

/// Checks q H^j_m(R / q_i) = 0 for i + j < d, with q_i = (x_1..x_i). H^0 is
/// exact; higher j use stable Koszul snapshots. Retries with x^n for
/// n = 1, 2, 4 and reports the first passing n in the evidence.
CertifiedValue standardness_probe(const PresentedRing& ring, const ParameterSequence& x, const Caps& caps = {});

/// `count` validated sequences built from random combinations of monomials of
/// degree 1..`degree`. The coordinate sequence (first d variables) is tried
/// first. Throws SamplingExhausted when the attempt budget runs out.
std::vector<ParameterSequence> sample_parameter_ideals(const PresentedRing& ring, unsigned count, unsigned degree,
                                                       std::uint64_t seed, const Caps& caps = {});

/// A homogeneous linear system of parameters: the coordinate sequence if it
/// works, else sampled linear forms made filter-regular.
ParameterSequence linear_parameters(const PresentedRing& ring, std::uint64_t seed, const Caps& caps = {});

}  // namespace frobtest
