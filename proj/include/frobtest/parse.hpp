#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "frobtest/polynomial.hpp"

namespace frobtest {

/// Parses `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
/// `factor := integer | variable ['^' integer] | '(' expr ')' ['^' integer]`.
/// Integer literals are reduced mod p. A leading sign is accepted.
Polynomial parse_polynomial(std::string_view source, const RingPtr& ring);

/// Splits "g1, g2, ..." at top-level commas and parses each piece.
std::vector<Polynomial> parse_polynomial_list(std::string_view source, const RingPtr& ring);

}  // namespace frobtest
