#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pkc/ext_real.hpp"

namespace pkc {
namespace {

TEST(ExtReal, ZeroIsCanonical) {
  ExtReal z;
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.to_decimal(), "0");
  EXPECT_EQ(ExtReal::from_double(0.0), z);
  EXPECT_EQ(ExtReal::from_double(3.0) * z, z);
}

TEST(ExtReal, MantissaStaysInUnitOctave) {
  for (double v : {1.0, 1.5, 3.0, 0.375, 1e-300, 1e300}) {
    ExtReal x = ExtReal::from_double(v);
    EXPECT_GE(x.mantissa(), 1.0);
    EXPECT_LT(x.mantissa(), 2.0);
    EXPECT_DOUBLE_EQ(x.to_double(), v);
  }
}

TEST(ExtReal, ArithmeticMatchesDoubles) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(0.0, 1e6);
  for (int i = 0; i < 1000; ++i) {
    double a = dist(rng), b = dist(rng);
    ExtReal x = ExtReal::from_double(a), y = ExtReal::from_double(b);
    EXPECT_NEAR((x + y).to_double(), a + b, 1e-9 * (a + b));
    EXPECT_NEAR((x * y).to_double(), a * b, 1e-9 * a * b);
    EXPECT_NEAR((x / y).to_double(), a / b, 1e-9 * a / b);
    EXPECT_EQ(x < y, a < b);
  }
}

TEST(ExtReal, ExponentsFarBeyondDouble) {
  ExtReal big = ExtReal::pow2(10000);
  ExtReal tiny = ExtReal::pow2(-10000);
  EXPECT_EQ(big * tiny, ExtReal::from_double(1.0));
  EXPECT_TRUE(std::isinf(big.to_double()));
  EXPECT_EQ(tiny.to_double(), 0.0);
  EXPECT_EQ(ExtReal::pow2(1030).to_decimal(), "1.15E+310");
  EXPECT_EQ((big + big).exp2(), 10001);
}

TEST(ExtReal, DecimalFormatting) {
  EXPECT_EQ(ExtReal::from_double(64).to_decimal(), "6.40E+01");
  EXPECT_EQ(ExtReal::from_double(10.0 / 0.6).to_decimal(), "1.67E+01");
  EXPECT_EQ(ExtReal::from_double(0.5).to_decimal(), "5.00E-01");
  EXPECT_EQ(ExtReal::from_double(9.996).to_decimal(), "1.00E+01");
  EXPECT_EQ(ExtReal::from_double(24).to_decimal(5), "2.4000E+01");
}

TEST(ExtReal, DecimalParsing) {
  EXPECT_EQ(ExtReal::from_decimal("24"), ExtReal::from_double(24));
  EXPECT_EQ(ExtReal::from_decimal("0.5"), ExtReal::from_double(0.5));
  EXPECT_TRUE(ExtReal::from_decimal("0").is_zero());
  ExtReal huge = ExtReal::from_decimal("5.62E+310");
  EXPECT_EQ(huge.to_decimal(), "5.62E+310");
  EXPECT_THROW(ExtReal::from_decimal(""), std::invalid_argument);
  EXPECT_THROW(ExtReal::from_decimal("12x"), std::invalid_argument);
  EXPECT_THROW(ExtReal::from_decimal("-3"), std::invalid_argument);
}

TEST(ExtReal, DivisionByZero) {
  EXPECT_TRUE((ExtReal{} / ExtReal{}).is_zero());
  EXPECT_THROW(ExtReal::from_double(1) / ExtReal{}, std::domain_error);
}

TEST(ExtReal, Scaling) {
  EXPECT_EQ(ExtReal::from_double(3).scaled(0.5), ExtReal::from_double(1.5));
  EXPECT_TRUE(ExtReal::from_double(3).scaled(0.0).is_zero());
  EXPECT_THROW(ExtReal::from_double(3).scaled(-1.0), std::domain_error);
}

TEST(ExtReal, RelativeDifference) {
  EXPECT_EQ(ExtReal::relative_difference(ExtReal{}, ExtReal{}), 0.0);
  EXPECT_DOUBLE_EQ(ExtReal::relative_difference(ExtReal::from_double(3), ExtReal::from_double(4)), 0.25);
  EXPECT_DOUBLE_EQ(ExtReal::relative_difference(ExtReal::from_double(4), ExtReal::from_double(3)), 0.25);
}

TEST(ExtReal, Log2) {
  EXPECT_EQ(ExtReal::pow2(5000).log2(), 5000.0L);
  EXPECT_TRUE(std::isinf(ExtReal{}.log2()));
}

}  // namespace
}  // namespace pkc
