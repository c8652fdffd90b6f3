#include <gtest/gtest.h>

#include <random>

#include "frobtest/error.hpp"
#include "frobtest/parse.hpp"
#include "test_util.hpp"

using namespace frobtest;
using frobtest::testing::P;

TEST(PrimeField, RejectsCompositeAndLarge) {
  EXPECT_THROW(PrimeField(4), Error);
  EXPECT_THROW(PrimeField(1), Error);
  EXPECT_THROW(PrimeField(2147483659u), Error);
  EXPECT_NO_THROW(PrimeField(2147483647u));
}

TEST(PrimeField, InverseRoundTrip) {
  PrimeField F(101);
  for (std::uint32_t a = 1; a < 101; ++a) EXPECT_EQ(F.mul(a, F.inv(a)), 1u);
}

TEST(Parse, FermatIsThreeTerms) {
  auto r = make_ring(2, {"x", "y", "z"});
  auto f = P(r, "x^3+y^3+z^3");
  EXPECT_EQ(f.size(), 3u);
  EXPECT_TRUE(f.is_canonical());
}

TEST(Parse, CoefficientsReduceModP) {
  auto r3 = make_ring(3, {"x", "y"});
  EXPECT_TRUE(P(r3, "2*x + x").is_zero());
  auto r5 = make_ring(5, {"x", "y"});
  EXPECT_TRUE(P(r5, "x*y - y*x + 5").is_zero());
}

TEST(Parse, Errors) {
  auto r = make_ring(2, {"x", "y"});
  try {
    P(r, "x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    P(r, "x + w");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownVariable);
  }
  EXPECT_THROW(P(r, "(x + y"), ParseError);
  EXPECT_THROW(P(r, ""), ParseError);
}

TEST(Parse, ListSplitsAtTopLevel) {
  auto r = make_ring(3, {"x", "y"});
  auto gens = parse_polynomial_list("x*(x+y), y^2 ,1", r);
  ASSERT_EQ(gens.size(), 3u);
  EXPECT_EQ(gens[0], P(r, "x^2+x*y"));
  EXPECT_TRUE(parse_polynomial_list("", r).empty());
  EXPECT_THROW(parse_polynomial_list("x,,y", r), ParseError);
  for (const char* unbalanced : {"x, (", "(", "x + (", "x)", "x), (y"})
    EXPECT_THROW(parse_polynomial_list(unbalanced, r), ParseError) << unbalanced;
}

TEST(MonomialOrder, Examples) {
  auto ord = MonomialOrder::standard(OrderKind::Grevlex, 2);
  Monomial x2{2, 0}, xy{1, 1}, y3{0, 3};
  EXPECT_GT(ord.compare(x2, xy), 0);
  EXPECT_EQ(ord.compare(xy, xy), 0);
  EXPECT_GT(ord.compare(y3, x2), 0);
  EXPECT_THROW(ord.compare(Monomial{1, 0}, Monomial{1, 0, 0}), Error);
}

TEST(MonomialOrder, GrevlexAndLexDifferInThreeVariables) {
  // x*z vs y^2: grevlex looks at the last variable first.
  Monomial xz{1, 0, 1}, y2{0, 2, 0};
  EXPECT_LT(MonomialOrder::standard(OrderKind::Grevlex, 3).compare(xz, y2), 0);
  EXPECT_GT(MonomialOrder::standard(OrderKind::GradedLex, 3).compare(xz, y2), 0);
  EXPECT_GT(MonomialOrder::standard(OrderKind::Lex, 3).compare(xz, y2), 0);
}

TEST(MonomialOrder, AxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (auto kind : {OrderKind::Grevlex, OrderKind::Lex, OrderKind::GradedLex}) {
    std::vector<int> prio{2, 0, 3, 1};
    MonomialOrder ord(kind, prio);
    auto rnd = [&] {
      Monomial m(4);
      for (int i = 0; i < 4; ++i) m.set(i, static_cast<std::uint32_t>(rng() % 4));
      return m;
    };
    for (int trial = 0; trial < 2000; ++trial) {
      auto a = rnd(), b = rnd(), c = rnd();
      int ab = ord.compare(a, b);
      EXPECT_EQ(ab, -ord.compare(b, a));
      EXPECT_EQ(ab == 0, a == b);
      if (ab < 0) {
        EXPECT_LT(ord.compare(a * c, b * c), 0);
        if (ord.compare(b, c) < 0) EXPECT_LT(ord.compare(a, c), 0);
      }
      EXPECT_GE(ord.compare(a, Monomial(4)), 0);
    }
  }
}

TEST(Monomial, OverflowIsReported) {
  Monomial m{1u << 31, 0};
  EXPECT_THROW(m * m, Error);
  EXPECT_THROW(m.pow(4), Error);
}

TEST(Polynomial, FrobeniusPowerExamples) {
  auto r2 = make_ring(2, {"x", "y"});
  EXPECT_EQ(P(r2, "x+y").frobenius_power(1), P(r2, "x^2+y^2"));
  auto r3 = make_ring(3, {"x", "y"});
  EXPECT_EQ(P(r3, "x+y").frobenius_power(1), P(r3, "x^3+y^3"));
  EXPECT_TRUE(Polynomial(r3).frobenius_power(2).is_zero());
  EXPECT_EQ(P(r3, "x+2*y").frobenius_power(0), P(r3, "x+2*y"));
  Polynomial big = Polynomial::variable(r2, 0, 1u << 30);
  EXPECT_THROW(big.frobenius_power(3), Error);
}

TEST(Polynomial, FrobeniusPowerMatchesRepeatedProduct) {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    auto r = make_ring(p, {"x", "y", "z"});
    for (unsigned e = 0; e <= 3; ++e) {
      auto q = checked_prime_power(p, e);
      if (q > 27) continue;
      for (int trial = 0; trial < 10; ++trial) {
        auto f = frobtest::testing::random_poly(r, rng, 4, 3);
        Polynomial prod = Polynomial::constant(r, 1);
        for (std::uint64_t k = 0; k < q; ++k) prod = prod * f;
        EXPECT_EQ(f.frobenius_power(e), prod) << "p=" << p << " e=" << e << " f=" << f.to_string();
      }
    }
  }
}

TEST(Polynomial, CanonicalFormIndependentOfAssociation) {
  std::mt19937_64 rng(3);
  auto r = make_ring(5, {"a", "b", "c"});
  for (int trial = 0; trial < 200; ++trial) {
    auto f = frobtest::testing::random_poly(r, rng, 4, 3);
    auto g = frobtest::testing::random_poly(r, rng, 4, 3);
    auto h = frobtest::testing::random_poly(r, rng, 4, 3);
    EXPECT_EQ((f + g) * h, h * g + f * h);
    EXPECT_EQ((f * g) * h, f * (g * h));
    EXPECT_TRUE(((f - g) + (g - f)).is_zero());
    EXPECT_TRUE((f * g * h).is_canonical());
  }
}

TEST(Polynomial, PrintParseRoundTrip) {
  std::mt19937_64 rng(5);
  for (auto kind : {OrderKind::Grevlex, OrderKind::Lex}) {
    auto r = make_ring(7, {"x", "y", "z1"}, kind);
    for (int trial = 0; trial < 300; ++trial) {
      auto f = frobtest::testing::random_poly(r, rng, 5, 4);
      auto once = parse_polynomial(f.to_string(), r);
      EXPECT_EQ(once, f);
      EXPECT_EQ(parse_polynomial(once.to_string(), r), once);
    }
  }
}

TEST(Polynomial, ExactDivision) {
  auto r = make_ring(3, {"x", "y"});
  auto f = P(r, "x^2 + 2*x*y + y^2");
  EXPECT_EQ(f.exact_div(P(r, "x+y")), P(r, "x+y"));
  EXPECT_THROW(P(r, "x^2+y").exact_div(P(r, "x")), Error);
}
