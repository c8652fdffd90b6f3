#include <gtest/gtest.h>

#include <random>

#include "frobtest/error.hpp"
#include "frobtest/frobenius.hpp"
#include "test_util.hpp"

using namespace frobtest;
using frobtest::testing::I;
using frobtest::testing::P;

namespace {

PresentedRing fermat2() {
  auto r = make_ring(2, {"x", "y", "z"});
  return PresentedRing(r, I(r, "x^3+y^3+z^3"), "fermat2");
}

PresentedRing polynomial_ring(std::uint32_t p, std::vector<std::string> names) {
  auto r = make_ring(p, std::move(names));
  return PresentedRing(r, Ideal::zero(r), "poly");
}

Ideal random_monomial_ideal(const RingPtr& r, std::mt19937_64& rng, int gens, int max_exp) {
  std::vector<Polynomial> g;
  for (int k = 0; k < gens; ++k) g.push_back(frobtest::testing::random_monomial_poly(r, rng, max_exp));
  return Ideal(r, std::move(g));
}

}  // namespace

TEST(FrobeniusPower, Examples) {
  auto r2 = make_ring(2, {"x", "y"});
  EXPECT_TRUE(frobenius_power(I(r2, "x, y"), 1).equals(I(r2, "x^2, y^2")));
  auto r3 = make_ring(3, {"x", "y"});
  EXPECT_TRUE(frobenius_power(I(r3, "x+y, y^3"), 1).equals(I(r3, "x^3+y^3, y^9")));
  auto J = I(r3, "x^2+y, x*y");
  EXPECT_TRUE(frobenius_power(J, 0).equals(J));
}

TEST(FrobeniusPower, CompositionAndGeneratorIndependence) {
  std::mt19937_64 rng(1);
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Polynomial> g{frobtest::testing::random_poly(r, rng, 3, 2),
                                frobtest::testing::random_poly(r, rng, 2, 2)};
      Ideal J(r, g);
      for (unsigned e = 0; e <= 2; ++e)
        for (unsigned f = 0; e + f <= 3 && (p == 2 || e + f <= 2); ++f)
          EXPECT_TRUE(frobenius_power(frobenius_power(J, e), f).equals(frobenius_power(J, e + f)));
      // a different generating set of the same ideal has the same Frobenius power
      Ideal other(r, {g[0] + g[1], g[1]});
      EXPECT_TRUE(frobenius_power(other, 1).equals(frobenius_power(J, 1)));
    }
  }
}

TEST(FrobeniusRoot, Examples) {
  auto r2 = make_ring(2, {"x", "y"});
  EXPECT_TRUE(frobenius_root(I(r2, "x^2*y^3"), 1).equals(I(r2, "x*y")));
  // brute force over principal monomial ideals (m): m^2 | x^2 y^3 has the
  // unique maximal solution m = xy
  std::vector<Monomial> sols;
  for (std::uint32_t a = 0; a <= 3; ++a)
    for (std::uint32_t b = 0; b <= 3; ++b)
      if (Monomial{a, b}.pow(2).divides(Monomial{2, 3})) sols.push_back(Monomial{a, b});
  for (const auto& m : sols) EXPECT_TRUE(m.divides(Monomial{1, 1}));
  EXPECT_FALSE((Monomial{1, 2}.pow(2).divides(Monomial{2, 3})));

  auto r3 = make_ring(3, {"x", "y"});
  EXPECT_TRUE(frobenius_root(I(r3, "x^3"), 1).equals(I(r3, "x")));
  EXPECT_TRUE(frobenius_root(I(r3, "x^2"), 1).is_unit());
  for (std::uint32_t a = 1; a <= 3; ++a)  // no proper (x^a) has x^2 in its [3]-power
    EXPECT_FALSE((Monomial{a, 0}.pow(3).divides(Monomial{2, 0})));
}

TEST(FrobeniusRoot, AdjunctionOnRandomIdeals) {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 40; ++trial) {
      auto K = random_monomial_ideal(r, rng, 2, 5);
      Ideal J = trial % 2 ? random_monomial_ideal(r, rng, 2, 2)
                          : Ideal(r, {frobtest::testing::random_poly(r, rng, 2, 2),
                                      frobtest::testing::random_monomial_poly(r, rng, 2)});
      auto root = frobenius_root(K, 1);
      EXPECT_EQ(frobenius_power(J, 1).contains(K), J.contains(root))
          << "K=" << K.to_string() << " J=" << J.to_string();
      EXPECT_TRUE(frobenius_power(root, 1).contains(K));
    }
  }
}

TEST(FrobeniusRoot, InvertsFrobeniusPower) {
  std::mt19937_64 rng(23);
  for (std::uint32_t p : {2u, 3u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (int trial = 0; trial < 15; ++trial) {
      Ideal J(r, {frobtest::testing::random_poly(r, rng, 3, 2), frobtest::testing::random_poly(r, rng, 2, 3)});
      for (unsigned e = 1; e <= 2; ++e)
        EXPECT_TRUE(frobenius_root(frobenius_power(J, e), e).equals(J)) << J.to_string();
    }
  }
}

TEST(FrobeniusPreimage, LinearAndEliminationRoutesAgree) {
  std::mt19937_64 rng(31);
  auto r = make_ring(2, {"x", "y", "z"});
  for (int trial = 0; trial < 12; ++trial) {
    Ideal K(r, {P(r, "x^4"), P(r, "y^4"), P(r, "z^5"), frobtest::testing::random_poly(r, rng, 3, 3)});
    unsigned e = 1 + trial % 2;
    auto lin = frobenius_preimage_linear(K, e);
    auto eli = frobenius_preimage_elimination(K, e);
    EXPECT_TRUE(lin.equals(eli)) << K.to_string();
  }
}

TEST(FrobeniusPreimage, KnownSubidealGivesTheSameAnswer) {
  std::mt19937_64 rng(37);
  auto r = make_ring(3, {"x", "y", "z"});
  for (int trial = 0; trial < 10; ++trial) {
    auto f = frobtest::testing::random_poly(r, rng, 3, 2);
    Ideal J(r, {P(r, "x^2"), P(r, "y^2"), P(r, "z^3"), f});
    unsigned e = 1 + trial % 2;
    auto K = frobenius_power(J, e) + I(r, "x^2*y + z^3");
    auto plain = frobenius_preimage_linear(K, e);
    // J^[p^e] lies in K, so J lies in the preimage
    auto hinted = frobenius_preimage_linear(K, e, J);
    EXPECT_TRUE(plain.equals(hinted)) << K.to_string();
    EXPECT_TRUE(hinted.equals(frobenius_preimage_elimination(K, e))) << K.to_string();
  }
  EXPECT_THROW(frobenius_preimage_linear(I(r, "x^9, y^9, z^9"), 1, I(r, "x, y, z")), Error);
}

TEST(FrobeniusPreimage, IsNotTheRoot) {
  // {f : f^2 in (x^2 y^3)} = (x y^2), while the root is (x y).
  auto r = make_ring(2, {"x", "y"});
  EXPECT_TRUE(frobenius_preimage(I(r, "x^2*y^3"), 1).equals(I(r, "x*y^2")));
}

TEST(FrobeniusClosure, FermatCubic) {
  auto R = fermat2();
  const auto& r = R.ambient();
  auto res = frobenius_closure(I(r, "x, y"), R);
  EXPECT_EQ(res.fte.value, 1);
  EXPECT_EQ(res.fte.status, Status::Certified);
  EXPECT_TRUE(res.closure.contains(I(r, "x, y, z^2")));
  EXPECT_FALSE(res.closure.contains(P(r, "z")));
  // independent normal-form checks
  EXPECT_FALSE(R.lift(I(r, "x, y")).contains(P(r, "z^2")));
  EXPECT_TRUE(R.lift(I(r, "x^2, y^2")).contains(P(r, "z^4")));
  ASSERT_EQ(res.witnesses.size(), 1u);
  EXPECT_EQ(res.witnesses[0].generator, P(r, "z^2"));
  EXPECT_EQ(res.witnesses[0].exponent, 1u);
  // chain stationary from e = 1
  ASSERT_GE(res.chain.size(), 3u);
  EXPECT_TRUE(res.chain[1].equals(res.chain[2]));
}

TEST(FrobeniusClosure, PolynomialRingIdealsAreClosed) {
  auto R = polynomial_ring(2, {"x", "y"});
  const auto& r = R.ambient();
  auto J = I(r, "x^2, y");
  auto res = frobenius_closure(J, R);
  EXPECT_TRUE(res.closure.equals(J));
  EXPECT_EQ(res.fte.value, 0);
  EXPECT_TRUE(res.fte.certified());
  for (const auto& link : res.chain) EXPECT_TRUE(link.equals(J));
}

TEST(FrobeniusClosure, UnitIdeal) {
  auto R = fermat2();
  auto res = frobenius_closure(Ideal::unit(R.ambient()), R);
  EXPECT_TRUE(res.closure.is_unit());
  EXPECT_EQ(res.fte.value, 0);
  EXPECT_TRUE(res.fte.certified());
}

TEST(FrobeniusTestExponent, Examples) {
  auto R = fermat2();
  const auto& r = R.ambient();
  EXPECT_EQ(frobenius_test_exponent(I(r, "x, y"), R).value, 1);
  EXPECT_EQ(frobenius_test_exponent(I(r, "x, y, z"), R).value, 0);
  auto res = frobenius_closure(I(r, "x, y, z"), R);
  EXPECT_TRUE(res.chain[0].equals(res.chain[1]));
}

TEST(FrobeniusClosure, TruncatesWhenMaxEIsTooSmall) {
  auto R = fermat2();
  Caps caps;
  caps.max_e = 1;
  auto fte = frobenius_test_exponent(I(R.ambient(), "x, y"), R, caps);
  EXPECT_EQ(fte.status, Status::Truncated);
  EXPECT_EQ(fte.cap, "max_e");
}

TEST(FrobeniusClosure, ExtensiveIdempotentAndMinimal) {
  std::mt19937_64 rng(41);
  std::vector<PresentedRing> rings{fermat2()};
  {
    auto r = make_ring(2, {"x", "y"});
    rings.emplace_back(r, I(r, "x^2, x*y"), "nonreduced");
  }
  {
    auto r = make_ring(3, {"x", "y", "z"});
    rings.emplace_back(r, I(r, "x^2*y - z^3"), "cusp");
  }
  for (const auto& R : rings) {
    const auto& r = R.ambient();
    int certified = 0;
    Caps caps;
    caps.gb_degree = 256;
    for (int trial = 0; trial < 5; ++trial) {
      Ideal J(r, {frobtest::testing::random_poly(r, rng, 2, 2), frobtest::testing::random_poly(r, rng, 2, 2),
                  Polynomial::variable(r, 0, 3), Polynomial::variable(r, 1, 3)});
      auto res = frobenius_closure(J, R, caps);
      if (!res.fte.certified()) continue;
      ++certified;
      EXPECT_TRUE(res.closure.contains(R.lift(J)));
      auto again = frobenius_closure(res.closure, R, caps);
      EXPECT_TRUE(again.closure.equals(res.closure));
      EXPECT_EQ(again.fte.value, 0);
      auto fte = static_cast<unsigned>(res.fte.value);
      if (fte > 0) {
        auto target = R.lift(frobenius_power(J, fte - 1));
        EXPECT_FALSE(target.contains(frobenius_power(res.closure, fte - 1)));
      }
      for (const auto& w : res.witnesses) {
        EXPECT_FALSE(R.lift(J).contains(w.generator));
        EXPECT_TRUE(R.lift(frobenius_power(J, w.exponent)).contains(w.generator.frobenius_power(w.exponent)));
      }
    }
    EXPECT_GE(certified, 3) << R.label();
  }
}

TEST(FrobeniusClosure, BruteForceMonomialMembership) {
  std::vector<PresentedRing> rings{fermat2()};
  {
    auto r = make_ring(2, {"x", "y"});
    rings.emplace_back(r, I(r, "x^2, x*y"), "nonreduced");
  }
  {
    auto r = make_ring(2, {"x", "y", "z"});
    rings.emplace_back(r, I(r, "x*y*z + x^3 + y^3"), "nodal");
  }
  for (const auto& R : rings) {
    const auto& r = R.ambient();
    std::vector<Ideal> ideals{Ideal(r, {Polynomial::variable(r, 0)}),
                              Ideal(r, {Polynomial::variable(r, 0), Polynomial::variable(r, 1, 2)})};
    for (const auto& J : ideals) {
      auto res = frobenius_closure(J, R);
      ASSERT_TRUE(res.fte.certified());
      for (std::uint32_t d = 0; d <= 4; ++d) {
        for (const auto& m : frobtest::testing::monomials_of_degree(r->nvars(), d)) {
          auto x = Polynomial::monomial(r, m);
          bool brute = false;
          for (unsigned e = 0; e <= 3 && !brute; ++e)
            brute = R.lift(frobenius_power(J, e)).contains(x.frobenius_power(e));
          EXPECT_EQ(brute, res.closure.contains(x)) << R.label() << " " << J.to_string() << " " << x;
        }
      }
    }
  }
}

TEST(FrobeniusPreimage, ZeroDimensionalButNotPrimaryUsesElimination) {
  auto r = make_ring(2, {"x", "y"});
  auto K = frobenius_power(I(r, "x, y^2 + y"), 1);
  EXPECT_THROW(frobenius_preimage_linear(K, 1), Error);
  auto pre = frobenius_preimage(K, 1);
  // a regular ring: the preimage of I^[p] is I
  EXPECT_TRUE(pre.equals(I(r, "x, y^2 + y")));
  PresentedRing R(r, Ideal::zero(r));
  auto fte = frobenius_test_exponent(I(r, "x, y^2 + y"), R);
  EXPECT_EQ(fte.value, 0);
  EXPECT_TRUE(fte.certified());
}
