#include "frobtest/frobenius.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "frobtest/error.hpp"

namespace frobtest {

Ideal frobenius_power(const Ideal& ideal, unsigned e) {
  if (e == 0) return ideal;
  std::vector<Polynomial> gens;
  gens.reserve(ideal.generators().size());
  for (const auto& g : ideal.generators()) gens.push_back(g.frobenius_power(e));
  return Ideal(ideal.ring(), std::move(gens));
}

Ideal frobenius_root(const Ideal& ideal, unsigned e) {
  if (e == 0) return ideal;
  const auto& ring = ideal.ring();
  const auto q = checked_prime_power(ring->characteristic(), e);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    // basis monomial -> coefficient terms (already divided down by q)
    std::map<Monomial, std::vector<Term>, MonomialRawLess> parts;
    for (const auto& t : g.terms()) {
      Monomial rem(ring->nvars()), root(ring->nvars());
      for (std::size_t i = 0; i < ring->nvars(); ++i) {
        rem.set(i, static_cast<std::uint32_t>(t.mono[i] % q));
        root.set(i, static_cast<std::uint32_t>(t.mono[i] / q));
      }
      parts[rem].push_back({root, t.coeff});  // c^(1/q) = c on F_p
    }
    for (auto& [basis, terms] : parts) gens.emplace_back(ring, std::move(terms));
  }
  return Ideal(ring, std::move(gens));
}

Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Caps& caps) {
  if (e == 0) return ideal;
  return frobenius_preimage_linear(ideal, e, Polynomial::constant(ideal.ring(), 1), caps);
}

Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Polynomial& multiplier,
                                const Caps& caps) {
  const auto& ring = ideal.ring();
  if (multiplier.is_zero()) return Ideal::unit(ring);
  auto gb = ideal.groebner(caps);
  if (gb.is_unit()) return Ideal::unit(ring);
  if (!is_maximal_primary(ideal, caps))
    throw Error(ErrorCode::NotArtinian, "linear preimage route needs an m-primary ideal");
  const auto q = checked_prime_power(ring->characteristic(), e);

  auto image = [&](const Monomial& m) {
    return gb.reduce(multiplier.mul_term(m.pow(q), 1), caps);
  };

  // Monomials whose q-th power survives form an order ideal; walk it.
  std::vector<Monomial> survivors;
  std::vector<Polynomial> images;
  std::vector<Polynomial> gens;
  std::unordered_set<Monomial, MonomialHash> seen{ring->one()};
  std::vector<Monomial> frontier{ring->one()};
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    auto img = image(m);
    if (img.is_zero()) {
      gens.push_back(Polynomial::monomial(ring, m));
      continue;
    }
    survivors.push_back(m);
    images.push_back(std::move(img));
    if (survivors.size() > caps.max_basis)
      throw Error(ErrorCode::CapExceeded, "preimage enumeration exceeded max_basis");
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      Monomial next = m * ring->var(i);
      if (seen.insert(next).second) frontier.push_back(next);
    }
  }
  for (const auto& rel : linear_relations(images, ring, caps)) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < rel.size(); ++k)
      if (rel[k] != 0) terms.push_back({survivors[k], rel[k]});
    gens.emplace_back(ring, std::move(terms));
  }
  return Ideal(ring, std::move(gens)).reduced(caps);
}

Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Ideal& known, const Caps& caps) {
  return frobenius_preimage_linear(ideal, e, Polynomial::constant(ideal.ring(), 1), known, caps);
}

Ideal frobenius_preimage_linear(const Ideal& ideal, unsigned e, const Polynomial& multiplier, const Ideal& known,
                                const Caps& caps) {
  const auto& ring = ideal.ring();
  if (multiplier.is_zero()) return Ideal::unit(ring);
  auto gb = ideal.groebner(caps);
  if (gb.is_unit()) return Ideal::unit(ring);
  const auto q = checked_prime_power(ring->characteristic(), e);
  auto kgb = known.groebner(caps);
  for (const auto& g : kgb.elements())
    if (!gb.contains(g.frobenius_power(e) * multiplier, caps))
      throw Error(ErrorCode::InvalidArgument, "known ideal is not inside the preimage");
  if (kgb.is_unit()) return Ideal::unit(ring);
  if (!is_maximal_primary(known, caps))
    throw Error(ErrorCode::NotArtinian, "linear preimage route needs an m-primary ideal");

  // f = NF(f) + k with k in known, and k^q * multiplier lies in the ideal, so
  // only the span of the standard monomials of known needs to be searched.
  auto basis = standard_monomials(kgb, caps);
  std::vector<Polynomial> images;
  images.reserve(basis.size());
  for (const auto& m : basis) images.push_back(gb.reduce(multiplier.mul_term(m.pow(q), 1), caps));
  std::vector<Polynomial> gens = kgb.elements();
  for (const auto& rel : linear_relations(images, ring, caps)) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < rel.size(); ++k)
      if (rel[k] != 0) terms.push_back({basis[k], rel[k]});
    gens.emplace_back(ring, std::move(terms));
  }
  return Ideal(ring, std::move(gens)).reduced(caps);
}

Ideal frobenius_preimage_elimination(const Ideal& ideal, unsigned e, const Caps& caps) {
  if (e == 0) return ideal;
  const auto& ring = ideal.ring();
  const std::size_t n = ring->nvars();
  const auto q = checked_prime_power(ring->characteristic(), e);
  if (q > UINT32_MAX) throw Error(ErrorCode::Overflow, "p^e exceeds 32 bits");

  // Variables 0..n-1 are the x's (eliminated), n..2n-1 are the y's.
  auto names = ring->names();
  for (std::size_t i = 0; i < n; ++i) names.push_back("_y" + std::to_string(i));
  std::vector<int> prio;
  for (std::size_t i = 0; i < n; ++i) prio.push_back(static_cast<int>(i));
  for (auto v : ring->order().priority()) prio.push_back(v + static_cast<int>(n));
  auto big = std::make_shared<const PolyRing>(ring->characteristic(), std::move(names),
                                              MonomialOrder(ring->order().kind(), std::move(prio),
                                                            static_cast<int>(n)));
  std::vector<int> up(n);
  for (std::size_t i = 0; i < n; ++i) up[i] = static_cast<int>(i);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.push_back(map_variables(g, big, up));
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back(Polynomial::variable(big, n + i) -
                   Polynomial::variable(big, i, static_cast<std::uint32_t>(q)));
  auto gb = Ideal(big, std::move(gens)).groebner(caps);

  std::vector<int> down(2 * n, -1);
  for (std::size_t i = 0; i < n; ++i) down[n + i] = static_cast<int>(i);
  std::vector<Polynomial> out;
  for (const auto& g : gb.elements()) {
    bool y_only = std::all_of(g.terms().begin(), g.terms().end(), [&](const Term& t) {
      for (std::size_t i = 0; i < n; ++i)
        if (t.mono[i] != 0) return false;
      return true;
    });
    if (y_only) out.push_back(map_variables(g, ring, down));
  }
  return Ideal(ring, std::move(out)).reduced(caps);
}

Ideal frobenius_preimage(const Ideal& ideal, unsigned e, const Caps& caps) {
  if (e == 0) return ideal;
  if (ideal.is_unit(caps) || is_maximal_primary(ideal, caps)) return frobenius_preimage_linear(ideal, e, caps);
  return frobenius_preimage_elimination(ideal, e, caps);
}

namespace {

// I^[p^e] + a
Ideal frobenius_target(const Ideal& ideal, const PresentedRing& ring, unsigned e) {
  return ring.lift(frobenius_power(ideal, e));
}

bool powers_contained(const Ideal& closure, const Ideal& target, unsigned e, const Caps& caps) {
  auto gb = target.groebner(caps);
  return std::all_of(closure.generators().begin(), closure.generators().end(),
                     [&](const Polynomial& g) { return gb.contains(g.frobenius_power(e), caps); });
}

}  // namespace

ClosureResult frobenius_closure(const Ideal& ideal, const PresentedRing& ring, const Caps& caps) {
  ClosureResult result;
  auto& fte = result.fte;
  Ideal base = ring.lift(ideal).reduced(caps);
  result.chain.push_back(base);
  fte.evidence.push_back("e=0: " + base.to_string());

  unsigned repeats = 0;
  unsigned e_stop = 0;
  bool stationary = base.is_unit();
  if (stationary) fte.evidence.push_back("unit ideal: closure is (1)");
  try {
    // J_(e-1) lies in J_e, which keeps the linear systems small.
    const bool primary = !stationary && is_maximal_primary(base, caps);
    for (unsigned e = 1; !stationary && e <= caps.max_e; ++e) {
      auto target = frobenius_target(ideal, ring, e);
      Ideal next = primary ? frobenius_preimage_linear(target, e, result.chain.back(), caps)
                           : frobenius_preimage(target, e, caps);
      if (!next.contains(result.chain.back(), caps))
        throw Error(ErrorCode::InvariantViolation, "Frobenius closure chain is not ascending");
      bool same = next.equals(result.chain.back(), caps);
      repeats = same ? repeats + 1 : 0;
      result.chain.push_back(next);
      e_stop = e;
      fte.evidence.push_back("e=" + std::to_string(e) + ": " + (same ? "unchanged" : next.to_string()));
      if (repeats >= caps.window) stationary = true;
    }
    if (!stationary) {
      fte.status = Status::Truncated;
      fte.cap = "max_e";
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::CapExceeded) throw;
    fte.status = Status::Truncated;
    fte.cap = err.what();
  }

  result.closure = result.chain.back();
  const Ideal& closure = result.closure;

  // Frobenius test exponent: least e with (I^F)^[p^e] inside I^[p^e] + a.
  try {
    fte.value = -1;
    for (unsigned e = 0; e <= e_stop; ++e) {
      if (powers_contained(closure, frobenius_target(ideal, ring, e), e, caps)) {
        fte.value = e;
        break;
      }
    }
    if (fte.value < 0) throw Error(ErrorCode::InvariantViolation, "closure fails its own soundness check");
    if (fte.status == Status::Certified) {
      fte.evidence.push_back("soundness: closure^[p^" + std::to_string(e_stop) + "] in I^[p^" +
                             std::to_string(e_stop) + "] + a");
      fte.evidence.push_back("stationary for " + std::to_string(caps.window) + " steps from e=" +
                             std::to_string(e_stop - caps.window));
    }
    for (const auto& g : closure.generators()) {
      if (base.contains(g, caps)) continue;
      for (unsigned e = 1; e <= e_stop; ++e) {
        if (frobenius_target(ideal, ring, e).contains(g.frobenius_power(e), caps)) {
          result.witnesses.push_back({g, e});
          break;
        }
      }
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::CapExceeded) throw;
    fte.status = Status::Truncated;
    fte.cap = err.what();
  }
  return result;
}

CertifiedValue frobenius_test_exponent(const Ideal& ideal, const PresentedRing& ring, const Caps& caps) {
  return frobenius_closure(ideal, ring, caps).fte;
}

}  // namespace frobtest
