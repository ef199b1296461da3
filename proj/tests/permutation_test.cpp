#include <gtest/gtest.h>

#include <random>

#include "support.hpp"

using namespace pbt;
using pbt::fixtures::cyc;

TEST(Permutation, ComposeAppliesLeftFactorFirst) {
  EXPECT_EQ(compose(cyc("(1,2,3)", 3), cyc("(1,2)", 3)), cyc("(2,3)", 3));
  Permutation p = cyc("(1,4,2)(3,5)", 6);
  EXPECT_EQ(compose(Permutation::identity(6), p), p);
  EXPECT_TRUE(compose(p, inverse(p)).is_identity());
}

TEST(Permutation, ComposeRejectsDegreeMismatch) {
  EXPECT_THROW(compose(cyc("(1,2)", 3), cyc("(1,2)", 4)), std::invalid_argument);
}

TEST(Permutation, Inverse) {
  EXPECT_TRUE(inverse(Permutation::identity(4)).is_identity());
  EXPECT_EQ(inverse(cyc("(1,2)", 3)), cyc("(1,2)", 3));
  EXPECT_EQ(inverse(cyc("(1,2,3)", 3)), cyc("(1,3,2)", 3));
}

TEST(Permutation, ParseCycleNotation) {
  Permutation p = cyc("(1,2,3)(4,5)", 6);
  std::vector<Point> expected{1, 2, 0, 4, 3, 5};
  EXPECT_TRUE(std::ranges::equal(p.images(), expected));
  EXPECT_TRUE(cyc("()", 5).is_identity());
  EXPECT_TRUE(cyc("", 5).is_identity());
  EXPECT_EQ(cyc("(1 2 3) (4 5)", 6), p);
  EXPECT_EQ(cyc(" ( 1 , 2 , 3 )(4,5) ", 6), p);
}

TEST(Permutation, ParseErrors) {
  EXPECT_THROW(cyc("(1,2)(2,3)", 4), ParseError);
  EXPECT_THROW(cyc("(1,5)", 4), ParseError);
  EXPECT_THROW(cyc("(0,1)", 4), ParseError);
  EXPECT_THROW(cyc("(1,2", 4), ParseError);
  EXPECT_THROW(cyc("1,2)", 4), ParseError);
  EXPECT_THROW(cyc("(1,,2)", 4), ParseError);
  EXPECT_THROW(cyc("(1,x)", 4), ParseError);
  try {
    cyc("(1,2)(2,3)", 4);
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 6u);
  }
}

TEST(Permutation, FormatIsCanonical) {
  EXPECT_EQ(format_cycles(cyc("(5,4)(3,1,2)", 6)), "(1,2,3)(4,5)");
  EXPECT_EQ(format_cycles(Permutation::identity(3)), "()");
}

TEST(Permutation, RandomRoundTripAndLaws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + rng() % 12;
    Permutation p = fixtures::random_permutation(n, rng);
    Permutation q = fixtures::random_permutation(n, rng);
    Permutation r = fixtures::random_permutation(n, rng);
    EXPECT_EQ(parse_cycles(format_cycles(p), n), p);
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * Permutation::identity(n), p);
    EXPECT_EQ(Permutation::identity(n) * p, p);
    EXPECT_EQ(inverse(inverse(p)), p);
    for (Point x = 0; x < n; ++x) EXPECT_EQ((p * q)[x], q[p[x]]);
  }
}

TEST(Permutation, ConstructorRejectsNonBijection) {
  EXPECT_THROW(Permutation(std::vector<Point>{0, 0, 1}), std::invalid_argument);
  EXPECT_THROW(Permutation(std::vector<Point>{0, 3}), std::invalid_argument);
}
