#include <gtest/gtest.h>

#include <random>

#include "dsbranch/rational.hpp"
#include "test_support.hpp"

using namespace dsbranch;
using dsbranch::testing::W;

TEST(Rational, ParsesIntegersAndFractions) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-7/2"), Rational(-7, 2));
  EXPECT_EQ(parse_rational("+6/4"), Rational(3, 2));
  EXPECT_EQ(format_rational(parse_rational("6/4")), "3/2");
}

TEST(Rational, RejectsDecimalsAndJunk) {
  for (const char* bad : {"1.5", "", " 1", "1/", "/2", "1/0", "a", "1e3", "--1"}) {
    EXPECT_THROW(parse_rational(bad), Error) << bad;
  }
}

TEST(Rational, CanonicalStringsRoundTrip) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-100000, 100000), den(1, 999);
  for (int i = 0; i < 500; ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    auto s = format_rational(q);
    EXPECT_EQ(format_rational(parse_rational(s)), s);
  }
}

TEST(Rational, FloorCeil) {
  EXPECT_EQ(floor_of(Rational(-7, 2)), Rational(-4));
  EXPECT_EQ(ceil_of(Rational(-7, 2)), Rational(-3));
  EXPECT_EQ(floor_of(Rational(4)), Rational(4));
}

TEST(Weight, ArithmeticAndOrdering) {
  Weight a = W({1, 2}), b = W({3, -1});
  EXPECT_EQ(a + b, W({4, 1}));
  EXPECT_EQ(a - b, W({-2, 3}));
  EXPECT_EQ(2 * a, W({2, 4}));
  EXPECT_TRUE(a < b);
  EXPECT_THROW(a + W({1}), Error);
  EXPECT_EQ(parse_weight_csv("1/2,-3"), Weight({Rational(1, 2), Rational(-3)}));
  EXPECT_EQ(parse_weight_csv("1/2,-3").to_csv(), "1/2,-3");
}

TEST(Linalg, LdlDetectsDefiniteness) {
  EXPECT_TRUE(ldl_positive_definite({{Rational(2), Rational(1)}, {Rational(1), Rational(2)}}));
  EXPECT_FALSE(ldl_positive_definite({{Rational(0)}}));
  EXPECT_FALSE(ldl_positive_definite({{Rational(1), Rational(2)}, {Rational(2), Rational(1)}}));
  auto f = *ldl_positive_definite({{Rational(4), Rational(2)}, {Rational(2), Rational(3)}});
  EXPECT_EQ(f.diag[0], 4);
  EXPECT_EQ(f.lower[1][0], Rational(1, 2));
  EXPECT_EQ(f.diag[1], 2);
}

TEST(Linalg, DeterminantAndRank) {
  Matrix m{{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  EXPECT_EQ(determinant(m), -1);
  EXPECT_EQ(matrix_rank({{Rational(1), Rational(2)}, {Rational(2), Rational(4)}}), 1u);
}
