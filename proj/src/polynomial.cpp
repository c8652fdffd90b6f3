#include "frobtest/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "frobtest/error.hpp"

namespace frobtest {

PolyRing::PolyRing(std::uint32_t p, std::vector<std::string> names, MonomialOrder order)
    : field_(p), names_(std::move(names)), order_(std::move(order)) {
  if (names_.size() > kMaxVars) throw Error(ErrorCode::InvalidArgument, "too many variables");
  if (order_.priority().size() != names_.size())
    throw Error(ErrorCode::DimensionMismatch, "order and variable list disagree");
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j])
        throw Error(ErrorCode::InvalidArgument, "duplicate variable '" + names_[i] + "'");
}

int PolyRing::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<int>(i);
  return -1;
}

Monomial PolyRing::var(std::size_t i, std::uint32_t exponent) const {
  Monomial m(nvars());
  m.set(i, exponent);
  return m;
}

bool PolyRing::same_as(const PolyRing& other) const {
  return this == &other || (characteristic() == other.characteristic() &&
                            names_ == other.names_ && order_ == other.order_);
}

RingPtr make_ring(std::uint32_t p, std::vector<std::string> names, OrderKind kind) {
  auto order = MonomialOrder::standard(kind, names.size());
  return std::make_shared<const PolyRing>(p, std::move(names), std::move(order));
}

std::uint64_t checked_prime_power(std::uint32_t p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (q > (std::uint64_t{1} << 32) / p) throw Error(ErrorCode::Overflow, "p^e exceeds 32 bits");
    q *= p;
  }
  return q;
}

namespace {

void check_same(const Polynomial& a, const Polynomial& b) {
  if (a.ring() && b.ring() && !a.ring()->same_as(*b.ring()))
    throw Error(ErrorCode::DimensionMismatch, "polynomials from different rings");
}

const RingPtr& pick_ring(const Polynomial& a, const Polynomial& b) {
  return a.ring() ? a.ring() : b.ring();
}

// Merge a + c*b where both are canonical.
std::vector<Term> merge_scaled(const PolyRing& ring, const std::vector<Term>& a,
                               const std::vector<Term>& b, std::uint32_t c) {
  const auto& F = ring.field();
  const auto& ord = ring.order();
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int cmp = ord.compare(a[i].mono, b[j].mono);
    if (cmp > 0) {
      out.push_back(a[i++]);
    } else if (cmp < 0) {
      out.push_back({b[j].mono, F.mul(b[j].coeff, c)});
      ++j;
    } else {
      auto s = F.add(a[i].coeff, F.mul(b[j].coeff, c));
      if (s != 0) out.push_back({a[i].mono, s});
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back({b[j].mono, F.mul(b[j].coeff, c)});
  return out;
}

}  // namespace

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const auto& ord = ring_->order();
  const auto& F = ring_->field();
  for (auto& t : terms) t.coeff = F.reduce(t.coeff);
  std::sort(terms.begin(), terms.end(),
            [&](const Term& x, const Term& y) { return ord.compare(x.mono, y.mono) > 0; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().mono == t.mono) {
      terms_.back().coeff = F.add(terms_.back().coeff, t.coeff);
      if (terms_.back().coeff == 0) terms_.pop_back();
    } else if (t.coeff != 0) {
      terms_.push_back(t);
    }
  }
}

Polynomial Polynomial::from_canonical(RingPtr ring, std::vector<Term> terms) {
  Polynomial f(std::move(ring));
  f.terms_ = std::move(terms);
  return f;
}

Polynomial Polynomial::constant(RingPtr ring, std::int64_t c) {
  auto p = static_cast<std::int64_t>(ring->characteristic());
  auto r = static_cast<std::uint32_t>(((c % p) + p) % p);
  Polynomial f(ring);
  if (r != 0) f.terms_.push_back({ring->one(), r});
  return f;
}

Polynomial Polynomial::monomial(RingPtr ring, const Monomial& m, std::uint32_t c) {
  Polynomial f(ring);
  c = ring->field().reduce(c);
  if (c != 0) f.terms_.push_back({m, c});
  return f;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i, std::uint32_t exponent) {
  auto m = ring->var(i, exponent);
  return monomial(std::move(ring), m, 1);
}

std::uint32_t Polynomial::degree() const {
  std::uint32_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Polynomial::is_homogeneous() const {
  for (const auto& t : terms_)
    if (t.mono.degree() != terms_.front().mono.degree()) return false;
  return true;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  check_same(*this, o);
  const auto& r = pick_ring(*this, o);
  if (!r) return {};
  return from_canonical(r, merge_scaled(*r, terms_, o.terms_, 1));
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
  check_same(*this, o);
  const auto& r = pick_ring(*this, o);
  if (!r) return {};
  return from_canonical(r, merge_scaled(*r, terms_, o.terms_, r->characteristic() - 1));
}

Polynomial Polynomial::operator-() const { return scaled(ring_ ? ring_->characteristic() - 1 : 0); }

Polynomial Polynomial::scaled(std::uint32_t c) const {
  if (!ring_) return {};
  c = ring_->field().reduce(c);
  Polynomial f(ring_);
  if (c == 0) return f;
  f.terms_ = terms_;
  for (auto& t : f.terms_) t.coeff = ring_->field().mul(t.coeff, c);
  return f;
}

Polynomial Polynomial::mul_term(const Monomial& m, std::uint32_t c) const {
  if (!ring_) return {};
  Polynomial f(ring_);
  c = ring_->field().reduce(c);
  if (c == 0) return f;
  f.terms_.reserve(terms_.size());
  for (const auto& t : terms_) f.terms_.push_back({t.mono * m, ring_->field().mul(t.coeff, c)});
  return f;  // multiplicativity of the order keeps the sequence sorted
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  check_same(*this, o);
  const auto& r = pick_ring(*this, o);
  if (!r) return {};
  if (is_zero() || o.is_zero()) return Polynomial(r);
  const Polynomial& small = size() <= o.size() ? *this : o;
  const Polynomial& big = size() <= o.size() ? o : *this;
  if (small.size() == 1) return big.mul_term(small.terms_[0].mono, small.terms_[0].coeff);
  std::vector<Term> all;
  all.reserve(size() * o.size());
  const auto& F = r->field();
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) all.push_back({a.mono * b.mono, F.mul(a.coeff, b.coeff)});
  return Polynomial(r, std::move(all));
}

Polynomial Polynomial::pow(std::uint64_t k) const {
  if (!ring_) return {};
  Polynomial result = constant(ring_, 1);
  Polynomial base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero() || leading_coefficient() == 1) return *this;
  return scaled(ring_->field().inv(leading_coefficient()));
}

Polynomial Polynomial::frobenius_power(unsigned e) const {
  if (e == 0 || !ring_) return *this;
  auto q = checked_prime_power(ring_->characteristic(), e);
  Polynomial f(ring_);
  f.terms_.reserve(terms_.size());
  for (const auto& t : terms_) f.terms_.push_back({t.mono.pow(q), t.coeff});
  return f;
}

Polynomial Polynomial::exact_div(const Polynomial& d) const {
  if (d.is_zero()) throw Error(ErrorCode::InvalidArgument, "division by zero polynomial");
  check_same(*this, d);
  const auto& F = ring_->field();
  auto inv = F.inv(d.leading_coefficient());
  std::vector<Term> rem = terms_;
  std::vector<Term> quot;
  while (!rem.empty()) {
    const auto& lt = rem.front();
    if (!d.leading_monomial().divides(lt.mono))
      throw Error(ErrorCode::InvariantViolation, "exact division failed");
    Monomial m = lt.mono / d.leading_monomial();
    auto c = F.mul(lt.coeff, inv);
    quot.push_back({m, c});
    auto sub = d.mul_term(m, F.neg(c));
    rem = merge_scaled(*ring_, rem, sub.terms_, 1);
  }
  return from_canonical(ring_, std::move(quot));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    bool need_star = false;
    if (t.coeff != 1 || t.mono.is_one()) {
      os << t.coeff;
      need_star = true;
    }
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (need_star) os << '*';
      os << ring_->names()[i];
      if (t.mono[i] > 1) os << '^' << t.mono[i];
      need_star = true;
    }
  }
  return os.str();
}

bool Polynomial::is_canonical() const {
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].coeff == 0 || terms_[i].coeff >= ring_->characteristic()) return false;
    if (!terms_[i].mono.degree_consistent()) return false;
    if (i > 0 && ring_->order().compare(terms_[i - 1].mono, terms_[i].mono) <= 0) return false;
  }
  return true;
}

bool Polynomial::canonical_less(const Polynomial& o) const {
  const auto& ord = ring_->order();
  std::size_t n = std::min(size(), o.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = ord.compare(terms_[i].mono, o.terms_[i].mono);
    if (c != 0) return c < 0;
    if (terms_[i].coeff != o.terms_[i].coeff) return terms_[i].coeff < o.terms_[i].coeff;
  }
  return size() < o.size();
}

}  // namespace frobtest
