#include "frobtest/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <bit>
#include <mutex>
#include <sstream>
#include <unordered_set>

#include "frobtest/error.hpp"

namespace frobtest {

namespace {

std::uint32_t support_mask(const Monomial& m) {
  std::uint32_t mask = 0;
  for (std::size_t i = 0; i < m.nvars(); ++i)
    if (m[i] != 0) mask |= 1u << i;
  return mask;
}

struct Divisor {
  Monomial lm;
  std::uint32_t mask;
  std::uint32_t inv_lc;
  const Polynomial* poly;
};

Divisor make_divisor(const Polynomial& g) {
  const auto& F = g.ring()->field();
  return {g.leading_monomial(), support_mask(g.leading_monomial()), F.inv(g.leading_coefficient()), &g};
}

const Divisor* find_divisor(const std::vector<Divisor>& divs, const Monomial& m, std::uint32_t mask) {
  for (const auto& d : divs) {
    if ((d.mask & ~mask) != 0) continue;
    if (d.lm.divides(m)) return &d;
  }
  return nullptr;
}

class StepCounter {
 public:
  explicit StepCounter(std::uint64_t budget) : budget_(budget) {}
  void tick() {
    if (++steps_ > budget_)
      throw Error(ErrorCode::CapExceeded, "gb_steps budget of " + std::to_string(budget_) + " exhausted");
  }
  std::uint64_t used() const { return steps_; }

 private:
  std::uint64_t budget_;
  std::uint64_t steps_ = 0;
};

// Full reduction of f by the divisors. The working polynomial is kept in
// ascending order so its leading term is at the back.
// Past this many pending terms a sorted vector costs more to merge into than
// an ordered map costs to update.
constexpr std::size_t kMergeLimit = 256;

// Continues a reduction with the pending terms (ascending) kept in a map.
Polynomial reduce_keyed(std::vector<Term> work, std::vector<Term> rem, const std::vector<Divisor>& divs,
                        StepCounter& steps) {
  const auto& ring = divs.front().poly->ring();
  const auto& F = ring->field();
  const auto& ord = ring->order();
  auto greater = [&](const Monomial& a, const Monomial& b) { return ord.compare(a, b) > 0; };
  std::map<Monomial, std::uint32_t, decltype(greater)> pending(greater);
  for (auto it = work.rbegin(); it != work.rend(); ++it) pending.emplace_hint(pending.end(), it->mono, it->coeff);
  while (!pending.empty()) {
    auto top = pending.begin();
    Term t{top->first, top->second};
    pending.erase(top);
    const Divisor* d = find_divisor(divs, t.mono, support_mask(t.mono));
    if (!d) {
      rem.push_back(t);
      continue;
    }
    steps.tick();
    auto c = F.neg(F.mul(t.coeff, d->inv_lc));
    Monomial shift = t.mono / d->lm;
    const auto& gt = d->poly->terms();
    for (std::size_t j = 1; j < gt.size(); ++j) {
      auto v = F.mul(c, gt[j].coeff);
      auto [it, fresh] = pending.try_emplace(gt[j].mono * shift, v);
      if (fresh) continue;
      it->second = F.add(it->second, v);
      if (it->second == 0) pending.erase(it);
    }
  }
  return Polynomial::from_canonical(ring, std::move(rem));
}

Polynomial reduce_full(const Polynomial& f, const std::vector<Divisor>& divs, StepCounter& steps) {
  const auto& ring = f.ring();
  if (f.is_zero() || divs.empty()) return f;
  const auto& F = ring->field();
  const auto& ord = ring->order();
  std::vector<Term> work(f.terms().rbegin(), f.terms().rend());
  std::vector<Term> rem;
  std::vector<Term> merged;
  while (!work.empty()) {
    Term t = work.back();
    const Divisor* d = find_divisor(divs, t.mono, support_mask(t.mono));
    work.pop_back();
    if (!d) {
      rem.push_back(t);
      continue;
    }
    steps.tick();
    auto c = F.neg(F.mul(t.coeff, d->inv_lc));
    Monomial shift = t.mono / d->lm;
    const auto& gt = d->poly->terms();
    // work (ascending) merged with c*shift*tail(g) (taken in ascending order)
    merged.clear();
    merged.reserve(work.size() + gt.size());
    std::size_t i = 0;
    std::size_t j = gt.size();
    while (i < work.size() && j > 1) {
      Monomial m = gt[j - 1].mono * shift;
      int cmp = ord.compare(work[i].mono, m);
      if (cmp < 0) {
        merged.push_back(work[i++]);
      } else if (cmp > 0) {
        merged.push_back({m, F.mul(c, gt[j - 1].coeff)});
        --j;
      } else {
        auto s = F.add(work[i].coeff, F.mul(c, gt[j - 1].coeff));
        if (s != 0) merged.push_back({m, s});
        ++i;
        --j;
      }
    }
    for (; i < work.size(); ++i) merged.push_back(work[i]);
    for (; j > 1; --j) merged.push_back({gt[j - 1].mono * shift, F.mul(c, gt[j - 1].coeff)});
    work.swap(merged);
    if (work.size() > kMergeLimit) return reduce_keyed(std::move(work), std::move(rem), divs, steps);
  }
  return Polynomial::from_canonical(ring, std::move(rem));
}

Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  auto a = f.mul_term(l / f.leading_monomial(), f.ring()->field().inv(f.leading_coefficient()));
  auto b = g.mul_term(l / g.leading_monomial(), g.ring()->field().inv(g.leading_coefficient()));
  return a - b;
}

std::string ring_key(const PolyRing& r) {
  std::ostringstream os;
  os << r.characteristic() << '|' << to_string(r.order().kind()) << '|' << r.order().block() << '|';
  for (auto v : r.order().priority()) os << v << ',';
  os << '|';
  for (const auto& n : r.names()) os << n << ',';
  return os.str();
}

std::string ideal_key(const Ideal& I) {
  std::string key = ring_key(*I.ring());
  for (const auto& g : I.generators()) {
    key += g.to_string();
    key += ';';
  }
  return key;
}

// A memoised basis remembers what it cost, so a later request under tighter
// caps fails exactly as a fresh computation would.
struct CachedBasis {
  GroebnerBasis gb;
  std::uint32_t degree;
  std::uint64_t steps;
  bool fits(const Caps& caps) const { return degree <= caps.gb_degree && steps <= caps.gb_steps; }
};

struct GlobalCache {
  std::mutex mutex;
  std::map<std::string, CachedBasis> table;
};

GlobalCache& global_cache() {
  static GlobalCache cache;
  return cache;
}

struct Pair {
  std::size_t i, j;
  Monomial lcm;
};

class Buchberger {
 public:
  Buchberger(const RingPtr& ring, const Caps& caps) : ring_(ring), caps_(caps), steps_(caps.gb_steps) {}

  std::uint32_t max_degree() const { return max_degree_; }
  std::uint64_t steps_used() const { return steps_.used(); }

  GroebnerBasis run(const std::vector<Polynomial>& input) {
    for (const auto& f : input) max_degree_ = std::max(max_degree_, f.degree());
    for (const auto& f : input) {
      if (f.degree() > caps_.gb_degree)
        throw Error(ErrorCode::CapExceeded, "gb_degree cap " + std::to_string(caps_.gb_degree) +
                                                " exceeded by an input of degree " +
                                                std::to_string(f.degree()));
      if (f.is_constant()) return unit();
    }
    for (const auto& f : input) {
      auto h = reduce_full(f, divisors_, steps_);
      if (h.is_zero()) continue;
      if (h.is_constant()) return unit();
      add(h.monic());
    }
    while (!pairs_.empty()) {
      std::size_t best = 0;
      for (std::size_t k = 1; k < pairs_.size(); ++k) {
        int c = ring_->order().compare(pairs_[k].lcm, pairs_[best].lcm);
        if (c < 0 || (c == 0 && std::make_pair(pairs_[k].j, pairs_[k].i) <
                                    std::make_pair(pairs_[best].j, pairs_[best].i)))
          best = k;
      }
      Pair pr = pairs_[best];
      pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
      max_degree_ = std::max(max_degree_, pr.lcm.degree());
      if (pr.lcm.degree() > caps_.gb_degree)
        throw Error(ErrorCode::CapExceeded,
                    "gb_degree cap " + std::to_string(caps_.gb_degree) + " exceeded");
      auto h = reduce_full(s_polynomial(store_[pr.i], store_[pr.j]), divisors_, steps_);
      if (h.is_zero()) continue;
      if (h.is_constant()) return unit();
      add(h.monic());
    }
    return finish();
  }

 private:
  GroebnerBasis unit() const { return GroebnerBasis(ring_, {Polynomial::constant(ring_, 1)}); }

  void rebuild_divisors() {
    divisors_.clear();
    for (std::size_t k = 0; k < store_.size(); ++k)
      if (active_[k]) divisors_.push_back(make_divisor(store_[k]));
  }

  // Gebauer-Moeller update with the new element h.
  void add(Polynomial h_poly) {
    store_.push_back(std::move(h_poly));
    active_.push_back(true);
    const std::size_t h = store_.size() - 1;
    const Monomial& lh = store_[h].leading_monomial();

    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < h; ++g)
      if (active_[g]) candidates.push_back({g, h, store_[g].leading_monomial().lcm(lh)});

    std::vector<Pair> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const auto& c = candidates[k];
      bool coprime = store_[c.i].leading_monomial().coprime(lh);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t m = k + 1; m < candidates.size() && !dominated; ++m)
          if (candidates[m].lcm.divides(c.lcm)) dominated = true;
        for (std::size_t m = 0; m < kept.size() && !dominated; ++m)
          if (kept[m].lcm.divides(c.lcm)) dominated = true;
      }
      if (coprime || !dominated) kept.push_back(c);
    }
    std::vector<Pair> fresh;
    for (const auto& c : kept)
      if (!store_[c.i].leading_monomial().coprime(lh)) fresh.push_back(c);

    std::vector<Pair> next;
    for (const auto& pr : pairs_) {
      bool drop = lh.divides(pr.lcm) &&
                  !(store_[pr.i].leading_monomial().lcm(lh) == pr.lcm) &&
                  !(lh.lcm(store_[pr.j].leading_monomial()) == pr.lcm);
      if (!drop) next.push_back(pr);
    }
    for (auto& pr : fresh) next.push_back(std::move(pr));
    pairs_ = std::move(next);

    for (std::size_t g = 0; g < h; ++g)
      if (active_[g] && lh.divides(store_[g].leading_monomial())) active_[g] = false;
    rebuild_divisors();
  }

  GroebnerBasis finish() {
    for (std::size_t k = 0; k < store_.size(); ++k) {
      if (!active_[k]) continue;
      for (std::size_t m = 0; m < store_.size(); ++m)
        if (m != k && active_[m] && store_[m].leading_monomial().divides(store_[k].leading_monomial()) &&
            !(m > k && store_[m].leading_monomial() == store_[k].leading_monomial()))
          active_[k] = false;
    }
    rebuild_divisors();
    std::vector<Polynomial> out;
    for (std::size_t k = 0; k < store_.size(); ++k) {
      if (!active_[k]) continue;
      const auto& g = store_[k];
      Polynomial lead = Polynomial::from_canonical(ring_, {g.terms().front()});
      Polynomial tail = g - lead;
      out.push_back(lead + reduce_full(tail, divisors_, steps_));
    }
    return GroebnerBasis(ring_, std::move(out));
  }

  RingPtr ring_;
  const Caps& caps_;
  StepCounter steps_;
  std::uint32_t max_degree_ = 0;
  std::deque<Polynomial> store_;
  std::vector<bool> active_;
  std::vector<Divisor> divisors_;
  std::vector<Pair> pairs_;
};

Ideal from_gb(const GroebnerBasis& gb) { return Ideal(gb.ring(), gb.elements()); }

// Ring with one extra variable appended and placed in an elimination block.
RingPtr elimination_ring_one(const RingPtr& ring) {
  auto names = ring->names();
  names.push_back("_t");
  std::vector<int> prio;
  prio.push_back(static_cast<int>(ring->nvars()));
  for (auto v : ring->order().priority()) prio.push_back(v);
  return std::make_shared<const PolyRing>(ring->characteristic(), std::move(names),
                                          MonomialOrder(ring->order().kind(), std::move(prio), 1));
}

std::vector<int> identity_map(std::size_t n) {
  std::vector<int> m(n);
  for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<int>(i);
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------

struct GroebnerBasis::Impl {
  std::vector<Polynomial> elements;
  std::vector<Divisor> divisors;
};

GroebnerBasis::GroebnerBasis(RingPtr ring, std::vector<Polynomial> elements) : ring_(std::move(ring)) {
  auto impl = std::make_shared<Impl>();
  impl->elements = std::move(elements);
  std::sort(impl->elements.begin(), impl->elements.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring_->order().compare(a.leading_monomial(), b.leading_monomial()) < 0;
  });
  for (const auto& g : impl->elements) impl->divisors.push_back(make_divisor(g));
  impl_ = std::move(impl);
}

const std::vector<Polynomial>& GroebnerBasis::elements() const { return impl_->elements; }

bool GroebnerBasis::is_unit() const {
  const auto& el = elements();
  return el.size() == 1 && el[0].is_constant() && !el[0].is_zero();
}

Polynomial GroebnerBasis::reduce(const Polynomial& f, const Caps& caps) const {
  if (f.ring() && !f.ring()->same_as(*ring_))
    throw Error(ErrorCode::DimensionMismatch, "polynomial and ideal live in different rings");
  if (is_unit()) return Polynomial(ring_);
  StepCounter steps(caps.gb_steps);
  return reduce_full(f, impl_->divisors, steps);
}

bool GroebnerBasis::contains(const Polynomial& f, const Caps& caps) const {
  return reduce(f, caps).is_zero();
}

bool GroebnerBasis::in_initial_ideal(const Monomial& m) const {
  auto mask = support_mask(m);
  return find_divisor(impl_->divisors, m, mask) != nullptr;
}

std::vector<Monomial> GroebnerBasis::leading_monomials() const {
  std::vector<Monomial> out;
  for (const auto& g : elements()) out.push_back(g.leading_monomial());
  return out;
}

struct Ideal::Cache {
  std::mutex mutex;
  std::optional<CachedBasis> entry;
};

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    if (g.is_zero()) continue;
    if (!g.ring()->same_as(*ring_))
      throw Error(ErrorCode::DimensionMismatch, "generator from a different ring");
    gens_.push_back(std::move(g));
  }
  const auto& ord = ring_->order();
  std::sort(gens_.begin(), gens_.end(), [&](const Polynomial& a, const Polynomial& b) {
    int c = ord.compare(a.leading_monomial(), b.leading_monomial());
    if (c != 0) return c < 0;
    if (a.size() != b.size()) return a.size() < b.size();
    return a.canonical_less(b);
  });
  gens_.erase(std::unique(gens_.begin(), gens_.end()), gens_.end());
}

Ideal Ideal::unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }

Ideal Ideal::maximal(const RingPtr& ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->nvars(); ++i) gens.push_back(Polynomial::variable(ring, i));
  return Ideal(ring, std::move(gens));
}

GroebnerBasis Ideal::groebner(const Caps& caps) const {
  if (!cache_) throw Error(ErrorCode::InvalidArgument, "default-constructed ideal");
  std::lock_guard<std::mutex> lock(cache_->mutex);
  if (!cache_->entry) {
    auto key = ideal_key(*this);
    auto& global = global_cache();
    {
      std::lock_guard<std::mutex> g(global.mutex);
      auto it = global.table.find(key);
      if (it != global.table.end()) cache_->entry = it->second;
    }
    if (!cache_->entry) {
      Buchberger run(ring_, caps);
      auto gb = run.run(gens_);
      CachedBasis entry{std::move(gb), run.max_degree(), run.steps_used()};
      std::lock_guard<std::mutex> g(global.mutex);
      global.table.emplace(key, entry);
      cache_->entry = std::move(entry);
    }
  }
  // Under tighter caps, recompute so the cap error matches a cold run.
  if (!cache_->entry->fits(caps)) return Buchberger(ring_, caps).run(gens_);
  return cache_->entry->gb;
}

Ideal Ideal::operator+(const Ideal& o) const {
  auto gens = gens_;
  gens.insert(gens.end(), o.gens_.begin(), o.gens_.end());
  return Ideal(ring_, std::move(gens));
}

Ideal Ideal::with(const Polynomial& f) const {
  auto gens = gens_;
  gens.push_back(f);
  return Ideal(ring_, std::move(gens));
}

bool Ideal::contains(const Polynomial& f, const Caps& caps) const {
  return groebner(caps).contains(f, caps);
}

bool Ideal::contains(const Ideal& o, const Caps& caps) const {
  auto gb = groebner(caps);
  return std::all_of(o.gens_.begin(), o.gens_.end(),
                     [&](const Polynomial& g) { return gb.contains(g, caps); });
}

bool Ideal::equals(const Ideal& o, const Caps& caps) const {
  return groebner(caps) == o.groebner(caps);
}

bool Ideal::is_homogeneous() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Polynomial& g) { return g.is_homogeneous(); });
}

Ideal Ideal::reduced(const Caps& caps) const { return from_gb(groebner(caps)); }

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

// ---------------------------------------------------------------------------

GroebnerBasis groebner_basis(const Ideal& ideal, const Caps& caps) { return ideal.groebner(caps); }

bool buchberger_certificate(const GroebnerBasis& gb, const Caps& caps) {
  const auto& el = gb.elements();
  for (std::size_t i = 0; i < el.size(); ++i)
    for (std::size_t j = i + 1; j < el.size(); ++j)
      if (!gb.reduce(s_polynomial(el[i], el[j]), caps).is_zero()) return false;
  return true;
}

Polynomial normal_form(const Polynomial& f, const Ideal& ideal, const Caps& caps) {
  return ideal.groebner(caps).reduce(f, caps);
}

Polynomial map_variables(const Polynomial& f, const RingPtr& target, const std::vector<int>& index_map) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < t.mono.nvars(); ++i) {
      if (t.mono[i] == 0) continue;
      if (index_map[i] < 0)
        throw Error(ErrorCode::InvalidArgument, "variable has no image in the target ring");
      m.set(static_cast<std::size_t>(index_map[i]), m[static_cast<std::size_t>(index_map[i])] + t.mono[i]);
    }
    terms.push_back({m, t.coeff});
  }
  return Polynomial(target, std::move(terms));
}

Ideal intersect(const Ideal& a, const Ideal& b, const Caps& caps) {
  const auto& ring = a.ring();
  auto big = elimination_ring_one(ring);
  auto up = identity_map(ring->nvars());
  auto t = Polynomial::variable(big, ring->nvars());
  auto one_minus_t = Polynomial::constant(big, 1) - t;
  std::vector<Polynomial> gens;
  for (const auto& g : a.generators()) gens.push_back(t * map_variables(g, big, up));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * map_variables(g, big, up));
  auto gb = Ideal(big, std::move(gens)).groebner(caps);
  std::vector<int> down = identity_map(ring->nvars() + 1);
  down.back() = -1;
  std::vector<Polynomial> out;
  for (const auto& g : gb.elements()) {
    bool free_of_t = std::all_of(g.terms().begin(), g.terms().end(),
                                 [&](const Term& term) { return term.mono[ring->nvars()] == 0; });
    if (free_of_t) out.push_back(map_variables(g, ring, down));
  }
  return Ideal(ring, std::move(out));
}

Ideal colon_ideal_elimination(const Ideal& ideal, const Polynomial& f, const Caps& caps) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "colon by the zero polynomial");
  if (f.is_constant()) return ideal;
  auto both = intersect(ideal, Ideal(ideal.ring(), {f}), caps);
  std::vector<Polynomial> gens;
  for (const auto& g : both.generators()) gens.push_back(g.exact_div(f));
  return Ideal(ideal.ring(), std::move(gens));
}

bool is_maximal_primary(const Ideal& ideal, const Caps& caps) {
  auto gb = ideal.groebner(caps);
  if (gb.is_unit() || dimension(ideal, caps) != 0) return false;
  // The nilpotency index is at most the length, which is at most the product
  // of the pure-power leading exponents; squaring that many bits suffices.
  const auto& ring = ideal.ring();
  unsigned bits = 0;
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    std::uint32_t a = 0;
    for (const auto& m : gb.leading_monomials())
      if (m.degree() == m[i] && (a == 0 || m[i] < a)) a = m[i];
    bits += std::bit_width(a);
  }
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    auto r = gb.reduce(Polynomial::variable(ring, i), caps);
    for (unsigned k = 0; k < bits && !r.is_zero(); ++k) r = gb.reduce(r * r, caps);
    if (!r.is_zero()) return false;
  }
  return true;
}

Ideal colon_ideal_linear(const Ideal& ideal, const Polynomial& f, const Caps& caps) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "colon by the zero polynomial");
  auto gb = ideal.groebner(caps);
  if (gb.is_unit()) return Ideal::unit(ideal.ring());
  auto basis = standard_monomials(gb, caps);
  std::vector<Polynomial> images;
  images.reserve(basis.size());
  for (const auto& b : basis) images.push_back(gb.reduce(f.mul_term(b, 1), caps));
  std::vector<Polynomial> gens = gb.elements();
  for (const auto& rel : linear_relations(images, ideal.ring(), caps)) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < rel.size(); ++k)
      if (rel[k] != 0) terms.push_back({basis[k], rel[k]});
    gens.push_back(Polynomial(ideal.ring(), std::move(terms)));
  }
  return Ideal(ideal.ring(), std::move(gens));
}

Ideal colon_ideal(const Ideal& ideal, const Polynomial& f, const Caps& caps) {
  if (f.is_zero()) throw Error(ErrorCode::InvalidArgument, "colon by the zero polynomial");
  if (dimension(ideal, caps) == 0) return colon_ideal_linear(ideal, f, caps);
  return colon_ideal_elimination(ideal, f, caps);
}

Ideal colon_ideal(const Ideal& ideal, const Ideal& by, const Caps& caps) {
  if (by.generators().empty()) throw Error(ErrorCode::InvalidArgument, "colon by the zero ideal");
  std::optional<Ideal> acc;
  for (const auto& g : by.generators()) {
    auto c = colon_ideal(ideal, g, caps);
    acc = acc ? intersect(*acc, c, caps) : c;
  }
  return acc->reduced(caps);
}

std::pair<Ideal, int> saturate(const Ideal& ideal, const Ideal& by, const Caps& caps) {
  if (by.generators().empty()) throw Error(ErrorCode::InvalidArgument, "saturation by the zero ideal");
  Ideal current = ideal.reduced(caps);
  for (int steps = 1; steps <= 256; ++steps) {
    Ideal next = colon_ideal(current, by, caps);
    if (next.equals(current, caps)) return {current, steps};
    current = next;
  }
  throw Error(ErrorCode::CapExceeded, "saturation did not stabilise within 256 colon steps");
}

int dimension(const Ideal& ideal, const Caps& caps) {
  auto gb = ideal.groebner(caps);
  if (gb.is_unit()) return -1;
  std::vector<std::uint32_t> masks;
  for (const auto& m : gb.leading_monomials()) masks.push_back(support_mask(m));
  const std::size_t n = ideal.ring()->nvars();
  int best = 0;
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    int size = __builtin_popcount(subset);
    if (size <= best) continue;
    bool independent = std::none_of(masks.begin(), masks.end(),
                                    [&](std::uint32_t m) { return (m & ~subset) == 0; });
    if (independent) best = size;
  }
  return best;
}

std::vector<Monomial> standard_monomials(const GroebnerBasis& gb, const Caps& caps) {
  if (gb.is_unit()) return {};
  const auto& ring = gb.ring();
  std::vector<Monomial> out;
  std::unordered_set<Monomial, MonomialHash> seen;
  std::vector<Monomial> frontier{ring->one()};
  seen.insert(ring->one());
  while (!frontier.empty()) {
    Monomial m = frontier.back();
    frontier.pop_back();
    out.push_back(m);
    if (out.size() > caps.max_basis)
      throw Error(ErrorCode::CapExceeded, "standard monomial enumeration exceeded max_basis");
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      Monomial next = m * ring->var(i);
      if (seen.count(next) || gb.in_initial_ideal(next)) continue;
      seen.insert(next);
      frontier.push_back(next);
    }
  }
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return ring->order().compare(a, b) < 0;
  });
  return out;
}

std::vector<Monomial> standard_monomials_of_degree(const GroebnerBasis& gb, std::uint32_t degree) {
  const auto& ring = gb.ring();
  std::vector<Monomial> out;
  if (gb.is_unit()) return out;
  const std::size_t n = ring->nvars();
  Monomial m(n);
  // Enumerate compositions of `degree` into n parts.
  auto rec = [&](auto&& self, std::size_t var, std::uint32_t left) -> void {
    if (var + 1 == n) {
      m.set(var, left);
      if (!gb.in_initial_ideal(m)) out.push_back(m);
      m.set(var, 0);
      return;
    }
    for (std::uint32_t e = 0; e <= left; ++e) {
      m.set(var, e);
      self(self, var + 1, left - e);
    }
    m.set(var, 0);
  };
  if (n == 0) {
    if (degree == 0) out.push_back(m);
    return out;
  }
  rec(rec, 0, degree);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
    return ring->order().compare(a, b) < 0;
  });
  return out;
}

std::uint64_t length_artinian(const Ideal& ideal, const Caps& caps) {
  int d = dimension(ideal, caps);
  if (d < 0) return 0;
  if (d > 0)
    throw Error(ErrorCode::NotArtinian, "quotient has dimension " + std::to_string(d));
  return standard_monomials(ideal.groebner(caps), caps).size();
}

std::vector<FpVector> linear_relations(const std::vector<Polynomial>& polys, const RingPtr& ring,
                                       const Caps& caps) {
  // Sparse elimination: each input is reduced against monic pivots keyed by
  // leading monomial, tracking its combination of the inputs. An input that
  // reduces to zero yields one relation; these form a basis of the kernel.
  const auto& F = ring->field();
  const std::size_t n = polys.size();
  struct Pivot {
    Polynomial row;
    FpVector combo;
  };
  std::unordered_map<Monomial, Pivot, MonomialHash> pivots;
  std::uint64_t stored = 0;
  std::vector<FpVector> out;
  for (std::size_t k = 0; k < n; ++k) {
    Polynomial f = polys[k];
    FpVector combo(n, 0);
    combo[k] = 1;
    while (!f.is_zero()) {
      auto it = pivots.find(f.leading_monomial());
      if (it == pivots.end()) break;
      const auto c = f.leading_coefficient();
      f = f - it->second.row.scaled(c);
      const auto& pc = it->second.combo;
      for (std::size_t j = 0; j <= k; ++j)
        if (pc[j]) combo[j] = F.sub(combo[j], F.mul(c, pc[j]));
    }
    if (f.is_zero()) {
      out.push_back(std::move(combo));
      continue;
    }
    stored += f.size() + n;
    if (stored > caps.max_matrix)
      throw Error(ErrorCode::CapExceeded, "max_matrix: elimination of " + std::to_string(n) + " polynomials stores " +
                                              std::to_string(stored) + " entries");
    const auto inv = F.inv(f.leading_coefficient());
    for (auto& v : combo) v = F.mul(v, inv);
    auto lead = f.leading_monomial();
    pivots.emplace(lead, Pivot{f.scaled(inv), std::move(combo)});
  }
  return out;
}

void clear_groebner_cache() {
  auto& g = global_cache();
  std::lock_guard<std::mutex> lock(g.mutex);
  g.table.clear();
}

}  // namespace frobtest
