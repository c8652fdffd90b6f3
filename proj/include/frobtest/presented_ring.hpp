#pragma once

#include <string>

#include "frobtest/groebner.hpp"

namespace frobtest {

/// Maximum number of variables accepted for a user-facing ring.
inline constexpr std::size_t kMaxUserVars = 8;

/// R = S / a, with S = F_p[x_1..x_n] under a fixed monomial order.
class PresentedRing {
 public:
  PresentedRing(RingPtr ambient, Ideal relations, std::string label = {});

  const RingPtr& ambient() const { return ambient_; }
  const Ideal& relations() const { return relations_; }
  const std::string& label() const { return label_; }
  std::uint32_t characteristic() const { return ambient_->characteristic(); }

  /// Pull-back of an ideal of R: I + a.
  Ideal lift(const Ideal& ideal) const { return ideal + relations_; }
  Ideal maximal_ideal() const { return Ideal::maximal(ambient_); }

  /// Krull dimension of R.
  int dimension(const Caps& caps = {}) const;
  /// True when a is generated by homogeneous polynomials (standard grading).
  bool is_graded() const { return relations_.is_homogeneous(); }

 private:
  RingPtr ambient_;
  Ideal relations_;
  std::string label_;
};

}  // namespace frobtest
