#include "frobtest/local_cohomology.hpp"

#include <algorithm>
#include <bit>
#include <unordered_set>

#include "frobtest/error.hpp"
#include "frobtest/frobenius.hpp"

namespace frobtest {

// ---------------------------------------------------------------------------
// Graded pieces

GradedPieces::GradedPieces(PresentedRing ring, Caps caps)
    : ring_(std::move(ring)), caps_(caps), gb_(ring_.relations().groebner(caps_)) {
  if (!ring_.is_graded()) throw Error(ErrorCode::NotGraded, "relations are not homogeneous");
}

const GradedPieces::Piece& GradedPieces::piece(std::int64_t k) const {
  auto it = pieces_.find(k);
  if (it != pieces_.end()) return it->second;
  Piece p;
  if (k >= 0) p.monomials = standard_monomials_of_degree(gb_, static_cast<std::uint32_t>(k));
  if (p.monomials.size() > caps_.max_basis)
    throw Error(ErrorCode::CapExceeded, "graded piece exceeded max_basis");
  for (std::size_t i = 0; i < p.monomials.size(); ++i) p.index.emplace(p.monomials[i], i);
  return pieces_.emplace(k, std::move(p)).first->second;
}

const std::vector<Monomial>& GradedPieces::basis(std::int64_t k) const { return piece(k).monomials; }

Polynomial GradedPieces::reduce(const Polynomial& f) const { return gb_.reduce(f, caps_); }

FpVector GradedPieces::coordinates(const Polynomial& f, std::int64_t k) const {
  const auto& p = piece(k);
  FpVector v(p.monomials.size(), 0);
  for (const auto& t : f.terms()) {
    auto it = p.index.find(t.mono);
    if (it == p.index.end())
      throw Error(ErrorCode::InvariantViolation,
                  "polynomial is not reduced and homogeneous of degree " + std::to_string(k));
    v[it->second] = t.coeff;
  }
  return v;
}

Polynomial GradedPieces::polynomial(const FpVector& v, std::int64_t k) const {
  const auto& p = piece(k);
  std::vector<Term> terms;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) terms.push_back({p.monomials[i], v[i]});
  return Polynomial(ring_.ambient(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Koszul complex

struct KoszulComplex::Echelon {
  EchelonBasis basis;
};

KoszulComplex::KoszulComplex(std::shared_ptr<const GradedPieces> pieces, std::vector<Polynomial> x,
                             std::uint64_t t)
    : pieces_(std::move(pieces)), x_(std::move(x)), t_(t) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "Koszul stage must be positive");
  if (x_.size() > 16) throw Error(ErrorCode::InvalidArgument, "sequence too long");
  for (const auto& f : x_) {
    if (f.is_zero() || !f.is_homogeneous() || f.degree() == 0)
      throw Error(ErrorCode::NotGraded, "sequence element " + f.to_string() + " is not homogeneous of positive degree");
    xt_.push_back(pieces_->reduce(f.pow(t)));
  }
  const std::size_t d = x_.size();
  subsets_.resize(d + 1);
  for (std::uint32_t mask = 0; mask < (1u << d); ++mask) subsets_[std::popcount(mask)].push_back(mask);
}

const std::vector<std::uint32_t>& KoszulComplex::subsets(int i) const {
  static const std::vector<std::uint32_t> empty;
  if (i < 0 || i > static_cast<int>(x_.size())) return empty;
  return subsets_[i];
}

std::int64_t KoszulComplex::weight(std::uint32_t mask) const {
  std::int64_t w = 0;
  for (std::size_t j = 0; j < x_.size(); ++j)
    if (mask >> j & 1) w += x_[j].degree();
  return w;
}

std::size_t KoszulComplex::dim(int i, std::int64_t n) const {
  std::size_t total = 0;
  for (auto s : subsets(i)) total += pieces_->basis(n + static_cast<std::int64_t>(t_) * weight(s)).size();
  return total;
}

std::int64_t KoszulComplex::min_degree(int i) const {
  std::int64_t w = 0;
  for (auto s : subsets(i)) w = std::max(w, weight(s));
  return -static_cast<std::int64_t>(t_) * w;
}

FpMatrix KoszulComplex::differential(int i, std::int64_t n) const {
  FpMatrix m(dim(i + 1, n), dim(i, n));
  if (m.rows() == 0 || m.cols() == 0) return m;
  const auto& F = pieces_->ring().ambient()->field();
  const auto& targets = subsets(i + 1);
  std::vector<std::size_t> row_offset(targets.size() + 1, 0);
  for (std::size_t k = 0; k < targets.size(); ++k)
    row_offset[k + 1] = row_offset[k] + pieces_->basis(n + static_cast<std::int64_t>(t_) * weight(targets[k])).size();
  auto target_index = [&](std::uint32_t mask) {
    return static_cast<std::size_t>(std::lower_bound(targets.begin(), targets.end(), mask) - targets.begin());
  };
  std::size_t col = 0;
  for (auto s : subsets(i)) {
    const auto deg = n + static_cast<std::int64_t>(t_) * weight(s);
    for (const auto& mono : pieces_->basis(deg)) {
      for (std::size_t j = 0; j < x_.size(); ++j) {
        if (s >> j & 1) continue;
        const std::uint32_t tgt = s | (1u << j);
        const bool negative = std::popcount(s & ((1u << j) - 1)) % 2 == 1;
        auto img = pieces_->reduce(xt_[j].mul_term(mono, 1));
        auto tdeg = n + static_cast<std::int64_t>(t_) * weight(tgt);
        auto v = pieces_->coordinates(img, tdeg);
        const auto off = row_offset[target_index(tgt)];
        for (std::size_t r = 0; r < v.size(); ++r) {
          if (v[r] == 0) continue;
          auto c = negative ? F.neg(v[r]) : v[r];
          m(off + r, col) = F.add(m(off + r, col), c);
        }
      }
      ++col;
    }
  }
  return m;
}

FpVector KoszulComplex::coordinates(const Cochain& c) const {
  if (c.stage != t_) throw Error(ErrorCode::InvalidArgument, "cochain belongs to another stage");
  const auto& subs = subsets(c.index);
  if (c.parts.size() != subs.size()) throw Error(ErrorCode::DimensionMismatch, "cochain has the wrong rank");
  FpVector out;
  for (std::size_t k = 0; k < subs.size(); ++k) {
    auto v = pieces_->coordinates(c.parts[k], c.degree + static_cast<std::int64_t>(t_) * weight(subs[k]));
    out.insert(out.end(), v.begin(), v.end());
  }
  return out;
}

Cochain KoszulComplex::cochain(int i, std::int64_t n, const FpVector& v) const {
  Cochain c{i, t_, n, {}};
  std::size_t off = 0;
  for (auto s : subsets(i)) {
    const auto deg = n + static_cast<std::int64_t>(t_) * weight(s);
    const auto size = pieces_->basis(deg).size();
    FpVector part(v.begin() + static_cast<std::ptrdiff_t>(off), v.begin() + static_cast<std::ptrdiff_t>(off + size));
    c.parts.push_back(pieces_->polynomial(part, deg));
    off += size;
  }
  if (off != v.size()) throw Error(ErrorCode::DimensionMismatch, "coordinate vector has the wrong length");
  return c;
}

Cochain KoszulComplex::zero(int i, std::int64_t n) const {
  return cochain(i, n, FpVector(dim(i, n), 0));
}

const KoszulComplex::Echelon& KoszulComplex::boundaries(int i, std::int64_t n) const {
  auto key = std::make_pair(i, n);
  auto it = boundaries_.find(key);
  if (it != boundaries_.end()) return *it->second;
  const auto& F = pieces_->ring().ambient()->field();
  auto e = std::make_shared<Echelon>(Echelon{EchelonBasis(F, dim(i, n))});
  auto d = differential(i - 1, n);
  for (std::size_t c = 0; c < d.cols(); ++c) e->basis.insert(d.column(c));
  return *boundaries_.emplace(key, std::move(e)).first->second;
}

bool KoszulComplex::is_cocycle(const Cochain& c) const {
  return is_zero(differential(c.index, c.degree).apply(pieces_->ring().ambient()->field(), coordinates(c)));
}

bool KoszulComplex::is_coboundary(const Cochain& c) const {
  return boundaries(c.index, c.degree).basis.contains(coordinates(c));
}

const std::vector<FpVector>& KoszulComplex::cohomology(int i, std::int64_t n) const {
  auto key = std::make_pair(i, n);
  auto it = cohomology_.find(key);
  if (it != cohomology_.end()) return it->second;
  const auto& F = pieces_->ring().ambient()->field();
  std::vector<FpVector> reps;
  if (dim(i, n) > 0) {
    EchelonBasis span = boundaries(i, n).basis;
    for (auto& z : kernel(F, differential(i, n))) {
      auto r = span.reduce(z);
      if (is_zero(r)) continue;
      span.insert(r);
      reps.push_back(std::move(r));
    }
  }
  return cohomology_.emplace(key, std::move(reps)).first->second;
}

Cochain KoszulComplex::tower(const Cochain& c, std::uint64_t target_stage) const {
  if (c.stage != t_ || target_stage < t_) throw Error(ErrorCode::InvalidArgument, "tower maps go up in stage");
  const auto& subs = subsets(c.index);
  Cochain out{c.index, target_stage, c.degree, {}};
  for (std::size_t k = 0; k < subs.size(); ++k) {
    Polynomial f = c.parts[k];
    for (std::size_t j = 0; j < x_.size(); ++j)
      if (subs[k] >> j & 1) f = pieces_->reduce(f * x_[j].pow(target_stage - t_));
    out.parts.push_back(std::move(f));
  }
  return out;
}

Cochain KoszulComplex::frobenius(const Cochain& c, unsigned e) const {
  const auto q = checked_prime_power(pieces_->ring().characteristic(), e);
  Cochain out{c.index, c.stage * q, c.degree * static_cast<std::int64_t>(q), {}};
  for (const auto& f : c.parts) out.parts.push_back(pieces_->reduce(f.frobenius_power(e)));
  return out;
}

Cochain KoszulComplex::multiply(const Cochain& c, const Polynomial& f) const {
  if (!f.is_homogeneous()) throw Error(ErrorCode::NotGraded, "multiplier is not homogeneous");
  Cochain out{c.index, c.stage, c.degree + (f.is_zero() ? 0 : f.degree()), {}};
  for (const auto& g : c.parts) out.parts.push_back(pieces_->reduce(g * f));
  return out;
}

KoszulTower::KoszulTower(const PresentedRing& ring, std::vector<Polynomial> x, const Caps& caps)
    : pieces_(std::make_shared<const GradedPieces>(ring, caps)), x_(std::move(x)) {}

const KoszulComplex& KoszulTower::at(std::uint64_t t) const {
  auto& slot = stages_[t];
  if (!slot) slot = std::make_unique<KoszulComplex>(pieces_, x_, t);
  return *slot;
}

bool KoszulTower::vanishes_in_limit(const Cochain& c) const {
  const auto& here = at(c.stage);
  return at(2 * c.stage).is_coboundary(here.tower(c, 2 * c.stage));
}

// ---------------------------------------------------------------------------
// H^0

namespace {

bool monomial_less(const RingPtr& ring, const Monomial& a, const Monomial& b) {
  return ring->order().compare(a, b) < 0;
}

}  // namespace

CohomologyModule h0_module(const PresentedRing& ring, const Ideal& k, const Caps& caps) {
  CohomologyModule mod;
  Ideal n = ring.lift(k).reduced(caps);
  mod.sub = n;
  if (n.is_unit(caps)) {
    mod.super = n;
    return mod;
  }
  Ideal m = is_maximal_primary(n, caps) ? Ideal::unit(ring.ambient())
                                    : saturate(n, ring.maximal_ideal(), caps).first.reduced(caps);
  mod.super = m;
  const auto& r = ring.ambient();
  auto gn = n.groebner(caps);
  auto gm = m.groebner(caps);

  std::vector<Monomial> frontier;
  std::unordered_set<Monomial, MonomialHash> seen;
  for (const auto& lead : gm.leading_monomials())
    if (!gn.in_initial_ideal(lead) && seen.insert(lead).second) frontier.push_back(lead);
  std::vector<Monomial> basis;
  while (!frontier.empty()) {
    Monomial cur = frontier.back();
    frontier.pop_back();
    basis.push_back(cur);
    if (basis.size() > caps.max_basis) throw Error(ErrorCode::CapExceeded, "H^0 basis exceeded max_basis");
    for (std::size_t i = 0; i < r->nvars(); ++i) {
      Monomial next = cur * r->var(i);
      if (!gn.in_initial_ideal(next) && seen.insert(next).second) frontier.push_back(next);
    }
  }
  std::sort(basis.begin(), basis.end(), [&](const Monomial& a, const Monomial& b) { return monomial_less(r, a, b); });
  for (const auto& b : basis) {
    auto mono = Polynomial::monomial(r, b);
    auto rep = gn.reduce(mono - gm.reduce(mono, caps), caps);
    if (rep.is_zero() || rep.leading_monomial() != b)
      throw Error(ErrorCode::InvariantViolation, "H^0 representative lost its leading monomial");
    mod.basis.push_back(Cochain{0, 0, static_cast<std::int64_t>(b.degree()), {rep}});
  }
  return mod;
}

FpVector h0_coordinates(const CohomologyModule& module, const Polynomial& f, const Caps& caps) {
  if (!module.sub) throw Error(ErrorCode::InvalidArgument, "not an H^0 module");
  FpVector v(module.length(), 0);
  std::map<Monomial, std::size_t, MonomialRawLess> index;
  for (std::size_t k = 0; k < module.length(); ++k) index.emplace(module.basis[k].parts[0].leading_monomial(), k);
  Polynomial rest = module.sub->groebner(caps).reduce(f, caps);
  while (!rest.is_zero()) {
    auto it = index.find(rest.leading_monomial());
    if (it == index.end()) throw Error(ErrorCode::InvariantViolation, "element lies outside the H^0 module");
    auto c = rest.leading_coefficient();
    v[it->second] = c;
    rest = rest - module.basis[it->second].parts[0].scaled(c);
  }
  return v;
}

FrobeniusMapData relative_frobenius_h0(const PresentedRing& ring, const Ideal& k, unsigned e, const Caps& caps) {
  if (e == 0) throw Error(ErrorCode::InvalidArgument, "relative Frobenius needs e >= 1");
  FrobeniusMapData out;
  out.relative = true;
  out.e = e;
  out.source = h0_module(ring, k, caps);
  out.target = h0_module(ring, frobenius_power(k, e), caps);
  out.matrix = FpMatrix(out.target.length(), out.source.length());
  auto super = out.target.super->groebner(caps);
  for (std::size_t c = 0; c < out.source.length(); ++c) {
    auto img = out.source.basis[c].parts[0].frobenius_power(e);
    if (!super.contains(img, caps))
      throw Error(ErrorCode::InvariantViolation, "relative Frobenius is not well defined on " +
                                                     out.source.basis[c].parts[0].to_string());
    auto col = h0_coordinates(out.target, img, caps);
    for (std::size_t r = 0; r < col.size(); ++r) out.matrix(r, c) = col[r];
  }
  return out;
}

namespace {

// dim ker of the linear map sending basis element k to the class of images[k]
// modulo the ideal.
std::size_t kernel_dimension(const std::vector<Polynomial>& images, const Ideal& modulo, const RingPtr& ring,
                             const Caps& caps) {
  auto gb = modulo.groebner(caps);
  std::vector<Polynomial> reduced;
  reduced.reserve(images.size());
  for (const auto& f : images) reduced.push_back(gb.reduce(f, caps));
  return linear_relations(reduced, ring, caps).size();
}

HSLReport truncated_report(int degree, const std::string& cap) {
  HSLReport r;
  r.degree = degree;
  r.value.value = -1;
  r.value.status = Status::Truncated;
  r.value.cap = cap;
  return r;
}

bool is_cap_error(const Error& err) {
  return err.code() == ErrorCode::CapExceeded || err.code() == ErrorCode::UnboundedSupport ||
         err.code() == ErrorCode::Overflow;
}

}  // namespace

HSLReport hsl_relative_h0(const PresentedRing& ring, const Ideal& q, const Caps& caps) {
  HSLReport report;
  report.degree = 0;
  try {
    auto module = h0_module(ring, q, caps);
    report.length = module.length();
    if (module.length() == 0) {
      report.kernel_chain.push_back(0);
      report.nilpotent = true;
      report.value.evidence.push_back("H^0 is zero");
      if (!is_maximal_primary(ring.lift(q), caps)) return report;
      // q + a is m-primary only when R has dimension 0, where H^0(R/q) = R/q
      throw Error(ErrorCode::InvariantViolation, "zero H^0 for an m-primary ideal " + q.to_string());
    }
    auto closure = frobenius_closure(q, ring, caps);
    if (!closure.fte.usable()) return truncated_report(0, closure.fte.cap);

    std::vector<Polynomial> reps;
    for (const auto& b : module.basis) reps.push_back(b.parts[0]);
    const std::size_t nil = kernel_dimension(reps, closure.closure, ring.ambient(), caps);

    report.kernel_chain.push_back(0);
    const unsigned e_limit = static_cast<unsigned>(closure.chain.size() - 1);
    unsigned e = 0;
    while (report.kernel_chain.back() != nil) {
      if (++e > e_limit)
        throw Error(ErrorCode::InvariantViolation, "kernel chain of F_R did not reach the nilpotent part");
      std::vector<Polynomial> images;
      for (const auto& r : reps) images.push_back(r.frobenius_power(e));
      auto k = kernel_dimension(images, ring.lift(frobenius_power(q, e)), ring.ambient(), caps);
      if (k < report.kernel_chain.back() || k > nil)
        throw Error(ErrorCode::InvariantViolation, "kernel chain of F_R is not monotone");
      report.kernel_chain.push_back(k);
    }
    report.value.value = e;
    report.value.status = closure.fte.status;
    report.value.evidence.push_back("nilpotent part length " + std::to_string(nil) + " of " +
                                    std::to_string(module.length()));
    report.nilpotent = nil == module.length();

    const bool primary = is_maximal_primary(ring.lift(q), caps);
    if (primary && closure.fte.certified()) {
      if (report.value.value != closure.fte.value)
        throw Error(ErrorCode::InvariantViolation,
                    "HSL_R(H^0(R/q)) = " + std::to_string(report.value.value) + " but Fte(q) = " +
                        std::to_string(closure.fte.value) + " for q = " + q.to_string());
      report.value.evidence.push_back("equals Fte(q)");
    }
  } catch (const Error& err) {
    if (!is_cap_error(err)) throw;
    return truncated_report(0, err.what());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Top local cohomology

void require_system_of_parameters(const PresentedRing& ring, const std::vector<Polynomial>& x, const Caps& caps) {
  const int d = ring.dimension(caps);
  if (static_cast<int>(x.size()) != d)
    throw Error(ErrorCode::NotSystemOfParameters,
                "sequence has " + std::to_string(x.size()) + " elements but dim R = " + std::to_string(d));
  if (!is_maximal_primary(ring.lift(Ideal(ring.ambient(), x)), caps))
    throw Error(ErrorCode::NotSystemOfParameters, "(x) + a is not m-primary");
}

namespace {

Polynomial product(const RingPtr& ring, const std::vector<Polynomial>& x) {
  Polynomial u = Polynomial::constant(ring, 1);
  for (const auto& f : x) u = u * f;
  return u;
}

Ideal power_ideal(const PresentedRing& ring, const std::vector<Polynomial>& x, std::uint64_t k) {
  std::vector<Polynomial> gens;
  for (const auto& f : x) gens.push_back(f.pow(k));
  return ring.lift(Ideal(ring.ambient(), std::move(gens)));
}

// {a : a^(p^e) in LC(p^e t)}, as the union over s of
// {a : a^(p^e) u^s in (x^(p^e t + s)) + a}.
std::pair<Ideal, CertifiedValue> limit_preimage(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                                std::uint64_t t, unsigned e, const Caps& caps) {
  const auto q = checked_prime_power(ring.characteristic(), e);
  const auto u = product(ring.ambient(), x);
  CertifiedValue cert;
  std::optional<Ideal> current;
  unsigned repeats = 0;
  for (unsigned s = 0; s <= caps.max_s; ++s) {
    // (x^t) + a and every earlier member of the chain lie in the next one
    const Ideal known = current ? *current : power_ideal(ring, x, t);
    auto next = frobenius_preimage_linear(power_ideal(ring, x, q * t + s), e, u.pow(s), known, caps);
    if (current) {
      if (!next.contains(*current, caps)) throw Error(ErrorCode::InvariantViolation, "limit closure chain is not ascending");
      repeats = next.equals(*current, caps) ? repeats + 1 : 0;
    }
    current = next;
    if (repeats >= caps.window) {
      cert.value = s - caps.window;
      cert.status = Status::CertifiedWindow;
      cert.evidence.push_back("stationary for s = " + std::to_string(s - caps.window) + ".." + std::to_string(s));
      return {*current, cert};
    }
  }
  cert.value = caps.max_s;
  cert.status = Status::Truncated;
  cert.cap = "max_s";
  return {*current, cert};
}

}  // namespace

std::pair<Ideal, CertifiedValue> limit_closure(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                               std::uint64_t t, const Caps& caps) {
  if (t == 0) throw Error(ErrorCode::InvalidArgument, "stage must be positive");
  require_system_of_parameters(ring, x, caps);
  return limit_preimage(ring, x, t, 0, caps);
}

HSLReport hsl_top(const PresentedRing& ring, const std::vector<Polynomial>& x, const Caps& caps,
                  const std::vector<std::uint64_t>& stages) {
  require_system_of_parameters(ring, x, caps);
  HSLReport report;
  report.degree = static_cast<int>(x.size());
  report.value.value = 0;
  report.value.status = Status::CertifiedWindow;
  report.nilpotent = true;
  bool first = true;
  try {
    for (auto t : stages) {
      std::vector<Ideal> chain;
      Status status = Status::CertifiedWindow;
      unsigned repeats = 0;
      bool stationary = false;
      for (unsigned e = 0; e <= caps.max_e && !stationary; ++e) {
        auto [k, cert] = limit_preimage(ring, x, t, e, caps);
        status = weakest(status, cert.status);
        if (cert.status == Status::Truncated) return truncated_report(report.degree, cert.cap);
        if (!chain.empty()) {
          if (!k.contains(chain.back(), caps)) throw Error(ErrorCode::InvariantViolation, "kernel chain is not ascending");
          repeats = k.equals(chain.back(), caps) ? repeats + 1 : 0;
        }
        chain.push_back(k);
        if (repeats >= caps.window) stationary = true;
      }
      if (!stationary) return truncated_report(report.degree, "max_e");
      std::size_t hsl = chain.size() - 1 - caps.window;
      while (hsl > 0 && chain[hsl - 1].equals(chain.back(), caps)) --hsl;

      const auto& base = chain.front();
      const auto base_len = length_artinian(base, caps);
      std::vector<std::size_t> kernels;
      for (const auto& k : chain) kernels.push_back(base_len - length_artinian(k, caps));
      const bool nilpotent = chain.back().is_unit(caps);
      report.value.evidence.push_back("stage " + std::to_string(t) + ": HSL " + std::to_string(hsl) +
                                      ", image length " + std::to_string(base_len));
      report.value.status = weakest(report.value.status, status);
      report.nilpotent = report.nilpotent && nilpotent;
      if (first || static_cast<std::int64_t>(hsl) > report.value.value) {
        report.value.value = static_cast<std::int64_t>(hsl);
        report.kernel_chain = kernels;
        report.length = base_len;
      }
      first = false;
    }
  } catch (const Error& err) {
    if (!is_cap_error(err)) throw;
    return truncated_report(report.degree, err.what());
  }
  return report;
}

// ---------------------------------------------------------------------------
// Koszul cohomology

namespace {

void require_index(const std::vector<Polynomial>& x, int i) {
  if (i < 0 || i > static_cast<int>(x.size()))
    throw Error(ErrorCode::InvalidArgument, "cohomological index out of range");
}

CohomologyModule koszul_module(const KoszulComplex& complex, int i, const Caps& caps) {
  CohomologyModule mod;
  mod.index = i;
  mod.stage = complex.stage();
  const std::int64_t lo = complex.min_degree(i);
  const std::int64_t hi = caps.degree_cap;
  mod.top_degree = lo - 1;
  for (std::int64_t n = lo; n <= hi; ++n) {
    const auto& reps = complex.cohomology(i, n);
    for (const auto& r : reps) mod.basis.push_back(complex.cochain(i, n, r));
    if (!reps.empty()) mod.top_degree = n;
  }
  // Support certificate: the band of degrees just below the cap is zero.
  constexpr std::int64_t kBand = 2;
  if (mod.top_degree > hi - kBand)
    throw Error(ErrorCode::UnboundedSupport, "H^" + std::to_string(i) + " at stage " + std::to_string(complex.stage()) +
                                                 " is nonzero in degree " + std::to_string(mod.top_degree) +
                                                 ", too close to the degree cap " + std::to_string(hi));
  return mod;
}

}  // namespace

CohomologyModule koszul_cohomology(const PresentedRing& ring, const std::vector<Polynomial>& x, std::uint64_t t, int i,
                                   const Caps& caps) {
  require_index(x, i);
  KoszulTower tower(ring, x, caps);
  return koszul_module(tower.at(t), i, caps);
}

namespace {

struct Snapshot {
  CohomologyModule module;
  CertifiedValue cert;
};

Snapshot snapshot(const KoszulTower& tower, int i, const Caps& caps) {
  const unsigned T = caps.max_stage;
  if (T < 2) throw Error(ErrorCode::InvalidArgument, "max_stage must be at least 2");
  std::vector<CohomologyModule> stages;
  for (unsigned t = 1; t <= T; ++t) stages.push_back(koszul_module(tower.at(t), i, caps));

  // rank of the tower map stage t -> t + 1
  auto image = [&](unsigned t) {
    const auto& from = stages[t - 1];
    const auto& to = tower.at(t + 1);
    std::vector<Cochain> out;
    std::map<std::int64_t, EchelonBasis> spans;
    for (const auto& z : from.basis) {
      auto img = tower.at(t).tower(z, t + 1);
      auto it = spans.find(z.degree);
      if (it == spans.end()) {
        EchelonBasis span(tower.pieces().ring().ambient()->field(), to.dim(i, z.degree));
        auto d = to.differential(i - 1, z.degree);
        for (std::size_t c = 0; c < d.cols(); ++c) span.insert(d.column(c));
        it = spans.emplace(z.degree, std::move(span)).first;
      }
      auto r = it->second.reduce(to.coordinates(img));
      if (is_zero(r)) continue;
      it->second.insert(r);
      out.push_back(to.cochain(i, z.degree, r));
    }
    return out;
  };

  Snapshot snap;
  std::vector<std::size_t> ranks;
  std::vector<Cochain> last;
  for (unsigned t = 1; t < T; ++t) {
    last = image(t);
    ranks.push_back(last.size());
  }
  std::string trail = "tower ranks";
  for (auto r : ranks) trail += " " + std::to_string(r);
  snap.cert.evidence.push_back(trail);
  bool stable = ranks.size() >= caps.window;
  for (std::size_t k = ranks.size() - std::min<std::size_t>(ranks.size(), caps.window); stable && k < ranks.size(); ++k)
    stable = ranks[k] == ranks.back();
  snap.module.index = i;
  snap.module.stage = T;
  snap.module.basis = std::move(last);
  snap.module.top_degree = stages.back().top_degree;
  snap.cert.value = static_cast<std::int64_t>(snap.module.length());
  if (stable) {
    snap.cert.status = Status::CertifiedWindow;
  } else {
    snap.cert.status = Status::Truncated;
    snap.cert.cap = "max_stage";
  }
  return snap;
}

}  // namespace

std::pair<CohomologyModule, CertifiedValue> stable_cohomology(const PresentedRing& ring, const std::vector<Polynomial>& x,
                                                              int i, const Caps& caps) {
  require_system_of_parameters(ring, x, caps);
  if (i < 0 || i >= static_cast<int>(x.size()))
    throw Error(ErrorCode::InvalidArgument, "stable_cohomology needs 0 <= i < d");
  KoszulTower tower(ring, x, caps);
  auto snap = snapshot(tower, i, caps);
  return {std::move(snap.module), std::move(snap.cert)};
}

// ---------------------------------------------------------------------------
// HSL of H^i

namespace {

HSLReport hsl_h0_natural(const PresentedRing& ring, const Caps& caps) {
  HSLReport report;
  report.degree = 0;
  auto module = h0_module(ring, Ideal::zero(ring.ambient()), caps);
  report.length = module.length();
  report.kernel_chain.push_back(0);
  for (unsigned e = 1;; ++e) {
    if (e > caps.max_e + 1) return truncated_report(0, "max_e");
    std::vector<Polynomial> images;
    for (const auto& b : module.basis) images.push_back(b.parts[0].frobenius_power(e));
    auto k = kernel_dimension(images, ring.relations(), ring.ambient(), caps);
    if (k == report.kernel_chain.back()) break;
    report.kernel_chain.push_back(k);
  }
  // ker F^e = ker F^(e+1) forces the chain to be constant from e on.
  report.value.value = static_cast<std::int64_t>(report.kernel_chain.size() - 1);
  report.value.status = Status::Certified;
  report.value.evidence.push_back("kernel chain stops growing at e = " + std::to_string(report.value.value));
  report.nilpotent = report.kernel_chain.back() == module.length();
  return report;
}

// dim ker F^e on the snapshot; a class is zero when it vanishes in the limit.
std::size_t snapshot_kernel(const KoszulTower& tower, const CohomologyModule& snap, unsigned e) {
  const auto& here = tower.at(snap.stage);
  std::map<std::int64_t, std::vector<Cochain>> by_degree;
  for (const auto& b : snap.basis) {
    auto img = here.frobenius(b, e);
    by_degree[img.degree].push_back(std::move(img));
  }
  std::size_t kernel = 0;
  for (auto& [deg, imgs] : by_degree) {
    const auto stage = imgs.front().stage;
    const auto& src = tower.at(stage);
    const auto& dst = tower.at(2 * stage);
    EchelonBasis span(tower.pieces().ring().ambient()->field(), dst.dim(snap.index, deg));
    auto d = dst.differential(snap.index - 1, deg);
    for (std::size_t c = 0; c < d.cols(); ++c) span.insert(d.column(c));
    for (const auto& img : imgs)
      if (!span.insert(dst.coordinates(src.tower(img, 2 * stage)))) ++kernel;
  }
  return kernel;
}

// Length of the longest R-regular prefix of x, checked up to `limit`
// elements: x_j is a nonzerodivisor mod (x_1..x_{j-1}) when the colon is
// no larger.
std::size_t regular_prefix(const PresentedRing& ring, const std::vector<Polynomial>& x, std::size_t limit,
                           const Caps& caps) {
  std::vector<Polynomial> gens = ring.relations().generators();
  std::size_t k = 0;
  for (; k < std::min(limit, x.size()); ++k) {
    Ideal base(ring.ambient(), gens);
    if (!colon_ideal(base, x[k], caps).equals(base, caps)) break;
    gens.push_back(x[k]);
  }
  return k;
}

}  // namespace

HSLReport hsl_local_cohomology(const PresentedRing& ring, const std::vector<Polynomial>& x, int i, const Caps& caps) {
  require_system_of_parameters(ring, x, caps);
  if (i < 0 || i >= static_cast<int>(x.size()))
    throw Error(ErrorCode::InvalidArgument, "hsl_local_cohomology needs 0 <= i < d (use hsl_top for i = d)");
  try {
    if (i == 0) return hsl_h0_natural(ring, caps);
    const auto depth = regular_prefix(ring, x, static_cast<std::size_t>(i) + 1, caps);
    if (depth > static_cast<std::size_t>(i)) {
      HSLReport report;
      report.degree = i;
      report.value.value = 0;
      report.value.status = Status::Certified;
      report.value.evidence.push_back("x_1..x_" + std::to_string(depth) + " is a regular sequence, so H^" +
                                      std::to_string(i) + " = 0");
      report.kernel_chain.push_back(0);
      report.nilpotent = true;
      return report;
    }
    KoszulTower tower(ring, x, caps);
    auto snap = snapshot(tower, i, caps);
    if (snap.cert.status == Status::Truncated) return truncated_report(i, snap.cert.cap);
    HSLReport report;
    report.degree = i;
    report.length = snap.module.length();
    report.value.evidence = snap.cert.evidence;
    report.value.status = Status::Uncertified;
    report.value.evidence.push_back("snapshot is window-certified only");
    auto k0 = snapshot_kernel(tower, snap.module, 0);
    if (k0 != 0) report.value.evidence.push_back("snapshot has " + std::to_string(k0) + " classes vanishing at stage 2T");
    report.kernel_chain.push_back(k0);
    for (unsigned e = 1;; ++e) {
      if (e > caps.max_e + 1) return truncated_report(i, "max_e");
      auto k = snapshot_kernel(tower, snap.module, e);
      if (k == report.kernel_chain.back()) break;
      report.kernel_chain.push_back(k);
    }
    report.value.value = static_cast<std::int64_t>(report.kernel_chain.size() - 1);
    report.nilpotent = report.kernel_chain.back() == report.length;
    return report;
  } catch (const Error& err) {
    if (!is_cap_error(err) && err.code() != ErrorCode::NotGraded) throw;
    return truncated_report(i, err.what());
  }
}

RingHSL hsl_ring(const PresentedRing& ring, const std::vector<Polynomial>& x, const Caps& caps) {
  require_system_of_parameters(ring, x, caps);
  const int d = static_cast<int>(x.size());
  RingHSL out;
  for (int i = 0; i < d; ++i) out.degrees.push_back(hsl_local_cohomology(ring, x, i, caps));
  out.degrees.push_back(hsl_top(ring, x, caps));

  out.hsl.value = 0;
  out.bound.value = 0;
  std::int64_t binom = 1;  // C(d, k)
  for (int k = 0; k <= d; ++k) {
    const auto& v = out.degrees[k].value;
    out.hsl.status = weakest(out.hsl.status, v.status);
    out.bound.status = weakest(out.bound.status, v.status);
    if (v.status == Status::Truncated) {
      out.hsl.cap = out.bound.cap = "H^" + std::to_string(k) + ": " + v.cap;
    } else {
      out.hsl.value = std::max(out.hsl.value, v.value);
      out.bound.value += binom * v.value;
    }
    out.bound.evidence.push_back("C(" + std::to_string(d) + "," + std::to_string(k) + ") * HSL(H^" +
                                 std::to_string(k) + ") = " + std::to_string(binom) + " * " +
                                 (v.status == Status::Truncated ? std::string("?") : std::to_string(v.value)));
    binom = binom * (d - k) / (k + 1);
  }
  if (out.hsl.status == Status::Truncated) out.hsl.value = out.bound.value = -1;
  return out;
}

}  // namespace frobtest
