#include <random>

#include <gtest/gtest.h>

#include "crawford/rational.hpp"
#include "test_util.hpp"

using namespace crawford;

TEST(GaussianRational, ParsesGrammarExamples) {
  EXPECT_EQ(GaussianRational::parse("2"), GaussianRational(2));
  EXPECT_EQ(GaussianRational::parse("-4i"), GaussianRational(0, -4));
  EXPECT_EQ(GaussianRational::parse("3+i"), GaussianRational(3, 1));
  EXPECT_EQ(GaussianRational::parse("1/2-2/3i"), GaussianRational(Rational(1, 2), Rational(-2, 3)));
  EXPECT_EQ(GaussianRational::parse("-3-i"), GaussianRational(-3, -1));
  EXPECT_EQ(GaussianRational::parse("i"), GaussianRational(0, 1));
  EXPECT_EQ(GaussianRational::parse("-i"), GaussianRational(0, -1));
  EXPECT_EQ(GaussianRational::parse("0"), GaussianRational());
  EXPECT_EQ(GaussianRational::parse(" 3 + 1/2 i "), GaussianRational(3, Rational(1, 2)));
  EXPECT_EQ(GaussianRational::parse("2i+5"), GaussianRational(5, 2));
  EXPECT_EQ(GaussianRational::parse("1.25"), GaussianRational(Rational(5, 4)));
  EXPECT_EQ(GaussianRational::parse("4/6"), GaussianRational(Rational(2, 3)));
}

TEST(GaussianRational, RejectsMalformedInput) {
  for (const char* bad : {"", "1/0", "abc", "2+3", "1i2", "ii", "+", "1//2", "3+4i+i", "1/2/3", "1e5", "."}) {
    EXPECT_THROW(GaussianRational::parse(bad), ParseError) << bad;
  }
}


TEST(GaussianRational, FormatParseRoundTrip) {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    const auto x = fixtures::random_gaussian_rational(rng, 50, 12);
    const auto y = GaussianRational::parse(x.str());
    EXPECT_EQ(x, y) << x.str();
    EXPECT_GT(boost::multiprecision::denominator(y.re), 0);
    EXPECT_EQ(boost::multiprecision::gcd(boost::multiprecision::numerator(y.re),
                                         boost::multiprecision::denominator(y.re)),
              1);
  }
}

TEST(GaussianRational, Arithmetic) {
  const GaussianRational a(3, 1), b(3, -1);
  EXPECT_EQ(a * b, GaussianRational(10));
  EXPECT_EQ(a / a, GaussianRational(1));
  EXPECT_EQ((a + b).im, 0);
  EXPECT_EQ(a.norm_squared(), 10);
  EXPECT_THROW(a / GaussianRational(), InvalidArgument);
}

TEST(ToDouble, HandlesHugeNumeratorsAndDenominators) {
  Integer big = 1;
  for (int k = 0; k < 400; ++k) big *= 10;
  EXPECT_NEAR(to_double(Rational(big + 1, big / 10)), 10.0, 1e-14);
  EXPECT_NEAR(to_double(Rational(1, 3)), 1.0 / 3.0, 1e-17);
  EXPECT_EQ(to_double(Rational(-7, 2)), -3.5);
  EXPECT_EQ(to_double(Rational(0)), 0.0);
}
