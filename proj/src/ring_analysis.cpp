#include "frobtest/ring_analysis.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "frobtest/error.hpp"
#include "frobtest/local_cohomology.hpp"

namespace frobtest {

Ideal ParameterSequence::ideal() const {
  if (elements.empty()) throw Error(ErrorCode::InvalidArgument, "empty parameter sequence");
  return Ideal(elements.front().ring(), elements);
}

std::string ParameterSequence::to_string() const {
  std::string s = "(";
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (k) s += ", ";
    s += elements[k].to_string();
  }
  return s + ")";
}

namespace {

CertifiedValue boolean(bool v, std::string evidence) {
  CertifiedValue c;
  c.value = v ? 1 : 0;
  c.evidence.push_back(std::move(evidence));
  return c;
}

CertifiedValue truncated(const std::string& cap) {
  CertifiedValue c;
  c.value = 0;
  c.status = Status::Truncated;
  c.cap = cap;
  return c;
}

bool is_cap_error(const Error& err) {
  return err.code() == ErrorCode::CapExceeded || err.code() == ErrorCode::Overflow ||
         err.code() == ErrorCode::UnboundedSupport || err.code() == ErrorCode::NotGraded;
}

Ideal prefix_ideal(const PresentedRing& ring, const std::vector<Polynomial>& x, std::size_t i) {
  return ring.lift(Ideal(ring.ambient(), std::vector<Polynomial>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(i))));
}

Monomial random_monomial(const RingPtr& r, SeededRng& rng, std::uint32_t degree) {
  Monomial m(r->nvars());
  for (std::uint32_t k = 0; k < degree; ++k) {
    auto v = rng.below(r->nvars());
    m.set(v, m[v] + 1);
  }
  return m;
}

std::uint32_t nonzero_coefficient(const RingPtr& r, SeededRng& rng) {
  return static_cast<std::uint32_t>(1 + rng.below(r->characteristic() - 1));
}

}  // namespace

CertifiedValue is_system_of_parameters(const PresentedRing& ring, const std::vector<Polynomial>& x, const Caps& caps) {
  try {
    const int d = ring.dimension(caps);
    if (static_cast<int>(x.size()) != d)
      return boolean(false, std::to_string(x.size()) + " elements but dim R = " + std::to_string(d));
    const auto q = ring.lift(Ideal(ring.ambient(), x));
    const int rest = dimension(q, caps);
    if (rest != 0) return boolean(false, "dim R/(x) = " + std::to_string(rest));
    if (!is_maximal_primary(q, caps)) return boolean(false, "(x) + a has zeros away from the origin");
    return boolean(true, "dim R = " + std::to_string(d) + " and (x) + a is m-primary");
  } catch (const Error& err) {
    if (!is_cap_error(err)) throw;
    return truncated(err.what());
  }
}

CertifiedValue is_filter_regular(const PresentedRing& ring, const std::vector<Polynomial>& x, const Caps& caps) {
  try {
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto base = prefix_ideal(ring, x, i);
      if (base.is_unit(caps)) break;
      auto colon = colon_ideal(base, x[i], caps);
      auto sat = saturate(base, ring.maximal_ideal(), caps).first;
      if (!sat.contains(colon, caps))
        return boolean(false, "fails at i = " + std::to_string(i + 1) + ": (q_" + std::to_string(i) + " : " +
                                  x[i].to_string() + ") is not m-torsion");
    }
    return boolean(true, "every colon quotient is m-torsion");
  } catch (const Error& err) {
    if (!is_cap_error(err)) throw;
    return truncated(err.what());
  }
}

ParameterSequence make_filter_regular(const PresentedRing& ring, const std::vector<Polynomial>& q, std::uint64_t seed,
                                      unsigned tries, const Caps& caps) {
  const auto& r = ring.ambient();
  ParameterSequence out;
  out.is_sop = is_system_of_parameters(ring, q, caps);
  if (out.is_sop.value != 1)
    throw Error(ErrorCode::NotSystemOfParameters, "make_filter_regular needs a system of parameters");
  out.elements = q;
  out.is_filter_regular = is_filter_regular(ring, q, caps);
  if (out.is_filter_regular.value == 1) return out;

  // Order by degree; combine within degree blocks and add lower-degree terms.
  std::vector<std::size_t> order(q.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return q[a].degree() < q[b].degree(); });
  std::vector<Polynomial> sorted;
  for (auto k : order) sorted.push_back(q[k]);

  SeededRng rng(seed);
  const auto& F = r->field();
  std::vector<std::string> tried;
  for (unsigned attempt = 0; attempt < tries; ++attempt) {
    std::vector<Polynomial> y;
    std::size_t start = 0;
    while (start < sorted.size()) {
      std::size_t end = start;
      while (end < sorted.size() && sorted[end].degree() == sorted[start].degree()) ++end;
      const std::size_t b = end - start;
      FpMatrix c(b, b);
      do {
        for (std::size_t i = 0; i < b; ++i)
          for (std::size_t j = 0; j < b; ++j) c(i, j) = static_cast<std::uint32_t>(rng.below(F.characteristic()));
      } while (rank(F, c) != b);
      for (std::size_t i = 0; i < b; ++i) {
        Polynomial f(r);
        for (std::size_t j = 0; j < b; ++j) f = f + sorted[start + j].scaled(c(i, j));
        for (std::size_t j = 0; j < start; ++j) {
          if (rng.below(2) == 0) continue;
          auto m = random_monomial(r, rng, sorted[start].degree() - sorted[j].degree());
          f = f + sorted[j].mul_term(m, static_cast<std::uint32_t>(rng.below(F.characteristic())));
        }
        y.push_back(std::move(f));
      }
      start = end;
    }
    auto fr = is_filter_regular(ring, y, caps);
    ParameterSequence cand{y, {}, fr, {}};
    if (fr.value == 1) {
      cand.is_sop = is_system_of_parameters(ring, y, caps);
      cand.is_filter_regular.evidence.push_back("found after " + std::to_string(attempt + 1) + " random combinations");
      return cand;
    }
    if (tried.size() < 8) tried.push_back(cand.to_string());
  }
  std::string list;
  for (const auto& t : tried) list += " " + t;
  throw Error(ErrorCode::FailedAfterTries,
              "no filter-regular combination after " + std::to_string(tries) + " tries; tried:" + list);
}

CertifiedValue standardness_probe(const PresentedRing& ring, const ParameterSequence& seq, const Caps& caps) {
  const auto& x = seq.elements;
  const auto d = x.size();
  auto sop = is_system_of_parameters(ring, x, caps);
  if (sop.value != 1) throw Error(ErrorCode::NotSystemOfParameters, "standardness_probe needs a system of parameters");
  CertifiedValue result;
  result.value = 0;
  try {
    for (std::uint64_t n : {1u, 2u, 4u}) {
      std::vector<Polynomial> y;
      for (const auto& f : x) y.push_back(f.pow(n));
      Status status = Status::Certified;
      bool pass = true;
      std::string failure;
      for (std::size_t i = 0; i < d && pass; ++i) {
        PresentedRing quotient(ring.ambient(), prefix_ideal(ring, y, i), ring.label());
        const std::vector<Polynomial> rest(y.begin() + static_cast<std::ptrdiff_t>(i), y.end());
        for (std::size_t j = 0; i + j < d && pass; ++j) {
          if (j == 0) {
            auto h0 = h0_module(quotient, Ideal::zero(ring.ambient()), caps);
            auto gb = h0.sub->groebner(caps);
            for (const auto& b : h0.basis)
              for (const auto& g : y)
                if (!gb.contains(b.parts[0] * g, caps)) {
                  pass = false;
                  failure = "q H^0(R/q_" + std::to_string(i) + ") != 0";
                }
            continue;
          }
          auto [snap, cert] = stable_cohomology(quotient, rest, static_cast<int>(j), caps);
          if (cert.status == Status::Truncated) {
            result.status = Status::Truncated;
            result.cap = cert.cap;
            return result;
          }
          status = weakest(status, Status::Uncertified);
          KoszulTower tower(quotient, rest, caps);
          for (const auto& b : snap.basis)
            for (const auto& g : y) {
              auto prod = tower.at(b.stage).multiply(b, quotient.relations().groebner(caps).reduce(g, caps));
              if (!tower.vanishes_in_limit(prod)) {
                pass = false;
                failure = "q H^" + std::to_string(j) + "(R/q_" + std::to_string(i) + ") != 0";
              }
            }
        }
      }
      result.status = weakest(result.status, status);
      if (pass) {
        result.value = 1;
        result.evidence.push_back("standard at n = " + std::to_string(n));
        return result;
      }
      result.evidence.push_back("n = " + std::to_string(n) + ": " + failure);
    }
  } catch (const Error& err) {
    if (!is_cap_error(err)) throw;
    return truncated(err.what());
  }
  return result;
}

namespace {

std::vector<Polynomial> random_sequence(const RingPtr& r, SeededRng& rng, std::size_t d, unsigned degree) {
  std::vector<Polynomial> seq;
  for (std::size_t k = 0; k < d; ++k) {
    std::vector<Term> terms;
    const auto count = 1 + rng.below(3);
    for (std::uint64_t t = 0; t < count; ++t) {
      auto deg = static_cast<std::uint32_t>(1 + rng.below(degree));
      terms.push_back({random_monomial(r, rng, deg), nonzero_coefficient(r, rng)});
    }
    seq.emplace_back(r, std::move(terms));
  }
  return seq;
}

std::vector<Polynomial> coordinate_sequence(const RingPtr& r, std::size_t d) {
  std::vector<Polynomial> seq;
  for (std::size_t k = 0; k < d && k < r->nvars(); ++k) seq.push_back(Polynomial::variable(r, k));
  return seq;
}

// Validates a candidate, repairing filter-regularity when needed.
std::optional<ParameterSequence> validate(const PresentedRing& ring, const std::vector<Polynomial>& cand,
                                          SeededRng& rng, const Caps& caps) {
  if (std::any_of(cand.begin(), cand.end(), [](const Polynomial& f) { return f.is_zero(); })) return std::nullopt;
  auto sop = is_system_of_parameters(ring, cand, caps);
  if (sop.value != 1 || sop.status != Status::Certified) return std::nullopt;
  try {
    auto seq = make_filter_regular(ring, cand, rng.next(), 32, caps);
    if (seq.is_filter_regular.value != 1 || seq.is_filter_regular.status != Status::Certified) return std::nullopt;
    return seq;
  } catch (const Error& err) {
    if (err.code() != ErrorCode::FailedAfterTries) throw;
    return std::nullopt;
  }
}

}  // namespace

std::vector<ParameterSequence> sample_parameter_ideals(const PresentedRing& ring, unsigned count, unsigned degree,
                                                       std::uint64_t seed, const Caps& caps) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "sample count must be at least 1");
  if (degree == 0) throw Error(ErrorCode::InvalidArgument, "sample degree must be at least 1");
  const auto& r = ring.ambient();
  const auto d = static_cast<std::size_t>(ring.dimension(caps));
  SeededRng rng(seed);
  std::vector<ParameterSequence> out;
  auto fresh = [&](const std::vector<Polynomial>& s) {
    return std::none_of(out.begin(), out.end(), [&](const ParameterSequence& p) { return p.elements == s; });
  };
  const unsigned budget = 200 * count;
  for (unsigned attempt = 0; attempt < budget && out.size() < count; ++attempt) {
    auto cand = attempt == 0 ? coordinate_sequence(r, d) : random_sequence(r, rng, d, degree);
    if (!fresh(cand)) continue;
    auto seq = validate(ring, cand, rng, caps);
    if (seq && fresh(seq->elements)) out.push_back(std::move(*seq));
  }
  if (out.size() < count)
    throw Error(ErrorCode::SamplingExhausted, "found " + std::to_string(out.size()) + " of " + std::to_string(count) +
                                                  " parameter sequences in " + std::to_string(budget) + " attempts");
  return out;
}

ParameterSequence linear_parameters(const PresentedRing& ring, std::uint64_t seed, const Caps& caps) {
  const auto& r = ring.ambient();
  const auto d = static_cast<std::size_t>(ring.dimension(caps));
  SeededRng rng(seed);
  for (unsigned attempt = 0; attempt < 200; ++attempt) {
    std::vector<Polynomial> cand;
    if (attempt == 0) {
      cand = coordinate_sequence(r, d);
    } else {
      for (std::size_t k = 0; k < d; ++k) {
        std::vector<Term> terms;
        for (std::size_t v = 0; v < r->nvars(); ++v)
          terms.push_back({r->var(v), static_cast<std::uint32_t>(rng.below(r->characteristic()))});
        cand.emplace_back(r, std::move(terms));
      }
    }
    if (auto seq = validate(ring, cand, rng, caps)) return *seq;
  }
  throw Error(ErrorCode::SamplingExhausted, "no linear system of parameters found in 200 attempts");
}

}  // namespace frobtest
