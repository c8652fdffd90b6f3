#include "frobtest/monomial.hpp"

#include <algorithm>
#include <limits>

#include "frobtest/error.hpp"

namespace frobtest {

namespace {

std::uint32_t checked(std::uint64_t v) {
  if (v > std::numeric_limits<std::uint32_t>::max())
    throw Error(ErrorCode::Overflow, "monomial exponent exceeds 32 bits");
  return static_cast<std::uint32_t>(v);
}

}  // namespace

Monomial::Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)) {
  if (nvars > kMaxVars) throw Error(ErrorCode::InvalidArgument, "too many variables");
}

Monomial::Monomial(std::initializer_list<std::uint32_t> exps)
    : Monomial(std::span<const std::uint32_t>(exps.begin(), exps.size())) {}

Monomial::Monomial(std::span<const std::uint32_t> exps) : Monomial(exps.size()) {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    exp_[i] = exps[i];
    d += exps[i];
  }
  degree_ = checked(d);
}

void Monomial::set(std::size_t i, std::uint32_t value) {
  std::uint64_t d = std::uint64_t{degree_} - exp_[i] + value;
  degree_ = checked(d);
  exp_[i] = value;
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < n_; ++i)
    if (exp_[i] > other.exp_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (exp_[i] != 0 && other.exp_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.exp_[i] = checked(std::uint64_t{exp_[i]} + other.exp_[i]);
  r.degree_ = checked(std::uint64_t{degree_} + other.degree_);
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(n_);
  for (std::size_t i = 0; i < n_; ++i) r.exp_[i] = exp_[i] - other.exp_[i];
  r.degree_ = degree_ - other.degree_;
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(n_);
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    r.exp_[i] = std::max(exp_[i], other.exp_[i]);
    d += r.exp_[i];
  }
  r.degree_ = checked(d);
  return r;
}

Monomial Monomial::pow(std::uint64_t k) const {
  Monomial r(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (exp_[i] != 0 && k > std::numeric_limits<std::uint32_t>::max() / exp_[i])
      throw Error(ErrorCode::Overflow, "monomial exponent exceeds 32 bits");
    r.exp_[i] = checked(exp_[i] * k);
  }
  if (degree_ != 0 && k > std::numeric_limits<std::uint32_t>::max() / degree_)
    throw Error(ErrorCode::Overflow, "monomial degree exceeds 32 bits");
  r.degree_ = checked(degree_ * k);
  return r;
}

bool Monomial::degree_consistent() const {
  std::uint64_t d = 0;
  for (std::size_t i = 0; i < n_; ++i) d += exp_[i];
  return d == degree_;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < n_; ++i) {
    h ^= exp_[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

const char* to_string(OrderKind kind) {
  switch (kind) {
    case OrderKind::Grevlex: return "grevlex";
    case OrderKind::Lex: return "lex";
    case OrderKind::GradedLex: return "gradedlex";
  }
  return "grevlex";
}

OrderKind order_kind_from_string(const std::string& name) {
  if (name == "grevlex") return OrderKind::Grevlex;
  if (name == "lex") return OrderKind::Lex;
  if (name == "gradedlex" || name == "graded-lex" || name == "glex") return OrderKind::GradedLex;
  throw Error(ErrorCode::InvalidArgument, "unknown monomial order '" + name + "'");
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<int> priority, int block)
    : kind_(kind), priority_(std::move(priority)), block_(block) {
  std::vector<int> sorted = priority_;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != static_cast<int>(i))
      throw Error(ErrorCode::InvalidArgument, "variable priority is not a permutation");
  if (block_ < 0 || block_ > static_cast<int>(priority_.size()))
    throw Error(ErrorCode::InvalidArgument, "bad elimination block size");
}

MonomialOrder MonomialOrder::standard(OrderKind kind, std::size_t nvars) {
  std::vector<int> prio(nvars);
  for (std::size_t i = 0; i < nvars; ++i) prio[i] = static_cast<int>(i);
  return MonomialOrder(kind, std::move(prio));
}

int MonomialOrder::compare_range(const Monomial& a, const Monomial& b, OrderKind kind,
                                 std::size_t from, std::size_t to) const {
  if (kind != OrderKind::Lex) {
    std::uint64_t da = 0, db = 0;
    if (from == 0 && to == priority_.size()) {
      da = a.degree();
      db = b.degree();
    } else {
      for (std::size_t k = from; k < to; ++k) {
        da += a[priority_[k]];
        db += b[priority_[k]];
      }
    }
    if (da != db) return da < db ? -1 : 1;
  }
  if (kind == OrderKind::Grevlex) {
    for (std::size_t k = to; k-- > from;) {
      auto v = priority_[k];
      if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t k = from; k < to; ++k) {
    auto v = priority_[k];
    if (a[v] != b[v]) return a[v] < b[v] ? -1 : 1;
  }
  return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
  if (a.nvars() != b.nvars() || a.nvars() != priority_.size())
    throw Error(ErrorCode::DimensionMismatch, "monomials from different ambient rings");
  if (block_ > 0) {
    int c = compare_range(a, b, OrderKind::Grevlex, 0, block_);
    if (c != 0) return c;
    return compare_range(a, b, kind_, block_, priority_.size());
  }
  return compare_range(a, b, kind_, 0, priority_.size());
}

}  // namespace frobtest
